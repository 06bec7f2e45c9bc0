/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cashsched {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { binary, continuous };
enum class RowSense { le, ge, eq };
enum class ObjSense { minimize, maximize };

struct Variable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lower = 0.0;
  double upper = kInf;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  RowSense sense = RowSense::le;
  double rhs = 0.0;
};

struct Objective {
  std::string label;
  ObjSense sense = ObjSense::minimize;
  std::vector<Term> terms;
  double constant = 0.0;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver-agnostic linear model: typed variables, sparse rows and one or
/// more linear objectives. Variable names are unique.
class MilpModel {
 public:
  int add_variable(std::string name, VarKind kind, double lower = 0.0, double upper = kInf);
  int add_binary(std::string name) { return add_variable(std::move(name), VarKind::binary, 0.0, 1.0); }
  int add_continuous(std::string name, double lower = 0.0, double upper = kInf)
  {
    return add_variable(std::move(name), VarKind::continuous, lower, upper);
  }
  void add_constraint(std::string name, std::vector<Term> terms, RowSense sense, double rhs);
  int add_objective(std::string label, ObjSense sense, std::vector<Term> terms, double constant = 0.0);

  const std::vector<Variable>& variables() const { return vars_; }
  std::vector<Variable>& variables() { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<Objective>& objectives() const { return objectives_; }
  std::vector<Objective>& objectives() { return objectives_; }

  std::optional<int> find(const std::string& name) const;
  std::optional<int> find_objective(const std::string& label) const;
  int binary_count() const;

  /// Objective expression value at an assignment.
  double evaluate(const Objective& obj, const std::vector<double>& x) const;

  /// Throws ModelError when a term references an undeclared variable or a
  /// coefficient, bound or rhs is not finite.
  void check() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<Objective> objectives_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace cashsched
