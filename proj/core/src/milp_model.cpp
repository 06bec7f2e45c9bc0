/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/milp_model.hpp"

#include <cmath>

namespace cashsched {

int MilpModel::add_variable(std::string name, VarKind kind, double lower, double upper)
{
  const int idx = static_cast<int>(vars_.size());
  if (!index_.emplace(name, idx).second) { throw ModelError("duplicate variable name " + name); }
  vars_.push_back({std::move(name), kind, lower, upper});
  return idx;
}

void MilpModel::add_constraint(std::string name, std::vector<Term> terms, RowSense sense, double rhs)
{
  rows_.push_back({std::move(name), std::move(terms), sense, rhs});
}

int MilpModel::add_objective(std::string label, ObjSense sense, std::vector<Term> terms, double constant)
{
  objectives_.push_back({std::move(label), sense, std::move(terms), constant});
  return static_cast<int>(objectives_.size()) - 1;
}

std::optional<int> MilpModel::find(const std::string& name) const
{
  auto it = index_.find(name);
  if (it == index_.end()) { return std::nullopt; }
  return it->second;
}

std::optional<int> MilpModel::find_objective(const std::string& label) const
{
  for (std::size_t i = 0; i < objectives_.size(); ++i) {
    if (objectives_[i].label == label) { return static_cast<int>(i); }
  }
  return std::nullopt;
}

int MilpModel::binary_count() const
{
  int n = 0;
  for (const auto& v : vars_) {
    n += v.kind == VarKind::binary ? 1 : 0;
  }
  return n;
}

double MilpModel::evaluate(const Objective& obj, const std::vector<double>& x) const
{
  double v = obj.constant;
  for (const auto& t : obj.terms) {
    v += t.coef * x[t.var];
  }
  return v;
}

void MilpModel::check() const
{
  const int n = static_cast<int>(vars_.size());
  auto check_terms = [&](const std::vector<Term>& terms, const std::string& where) {
    for (const auto& t : terms) {
      if (t.var < 0 || t.var >= n) { throw ModelError(where + ": reference to undeclared variable"); }
      if (!std::isfinite(t.coef)) { throw ModelError(where + ": non-finite coefficient"); }
    }
  };
  for (const auto& v : vars_) {
    if (!std::isfinite(v.lower) || std::isnan(v.upper) || v.upper < v.lower) {
      throw ModelError("variable " + v.name + ": invalid bounds");
    }
  }
  for (const auto& r : rows_) {
    check_terms(r.terms, "constraint " + r.name);
    if (!std::isfinite(r.rhs)) { throw ModelError("constraint " + r.name + ": non-finite rhs"); }
  }
  for (const auto& o : objectives_) {
    check_terms(o.terms, "objective " + o.label);
  }
}

}  // namespace cashsched
