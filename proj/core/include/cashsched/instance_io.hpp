/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cashsched/financing.hpp"
#include "cashsched/project.hpp"

namespace cashsched {

inline constexpr int kSchemaVersion = 1;

/// Syntax or structure error in a text document. line and column are
/// 1-based and 0 when the error has no single text position; path is a
/// JSON pointer to the offending element when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0, std::string path = {})
      : std::runtime_error(what), line_(line), column_(column), path_(std::move(path))
  {
  }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  int line_;
  int column_;
  std::string path_;
};

struct InstanceDocument {
  Project project;
  /// Free-form provenance notes keyed by field path.
  std::map<std::string, std::string> notes;
  /// validate_project diagnostics of the parsed project.
  std::vector<Diagnostic> diagnostics;
};

/// Strict parse of the native instance schema. Unknown fields are rejected.
/// Numbers that may be fuzzy accept a plain number (crisp), [lo, mid, hi]
/// (triangular) or {"lower": [...], "upper": [...]}.
InstanceDocument parse_instance(std::string_view text);

/// Canonical native form: crisp values as numbers, triangular values as
/// arrays, interval-valued ones as objects. Ends with a newline.
std::string write_instance(const Project& p, const std::map<std::string, std::string>& notes = {});

/// Schedules are written with 1-based modes and activity ids.
Schedule parse_schedule(std::string_view text, const Project& p);
std::string write_schedule(const Schedule& s, const Project& p);

FinancingDecisions parse_decisions(std::string_view text);
std::string write_decisions(const FinancingDecisions& d);

/// Ledger inputs given directly: finance block, per-period resource cost
/// and dues, and the decisions to replay.
struct LedgerReplay {
  FinanceParams finance;
  std::vector<double> tbu;
  std::vector<double> due;
  FinancingDecisions decisions;
};
LedgerReplay parse_replay(std::string_view text);

/// Reads a whole file; throws std::runtime_error naming the path.
std::string read_file(const std::string& path);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace cashsched
