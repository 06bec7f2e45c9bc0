/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cashsched/pipeline.hpp"

namespace cashsched::cli {

enum Exit : int {
  kOk = 0,
  kInfeasible = 1,
  kNoIncumbent = 2,
  kIoError = 3,
  kBadArguments = 4,
  kInternal = 5,
};

/// Carries an exit code out of a command.
class CommandError : public std::runtime_error {
 public:
  CommandError(Exit code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Exit code() const { return code_; }

 private:
  Exit code_;
};

struct SolveArgs {
  std::string instance;
  std::optional<double> alpha;
  std::string method = "th";
  double gamma = 0.4;
  std::vector<double> theta;
  std::vector<double> weights;
  std::string backend = "embedded";
  std::string form;
  long max_nodes = SolveLimits{}.max_nodes;
  double time_limit = SolveLimits{}.max_seconds;
  double gap = SolveLimits{}.gap;
  std::string out;
  std::string summary;
  std::string ledger;
  std::string gantt;
  std::string schedule_out;
  std::string decisions_out;
};

struct EvaluateArgs {
  std::string instance;
  std::string schedule;
  std::string decisions;
  std::string replay;
  std::optional<double> alpha;
  std::string ledger;
  std::string summary;
};

struct SweepArgs {
  SolveArgs solve;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::string mode;
  std::string schedule;
  std::string decisions;
  std::string out;
};

struct ConvertArgs {
  std::string psplib;
  std::string mmlib;
  std::uint64_t seed = 1;
  std::string finance_cfg;
  std::string out;
};

struct ExportArgs {
  std::string instance;
  std::optional<double> alpha;
  std::string objective = "Z1";
  std::string form = "full";
  std::string out;
};

struct ReportArgs {
  std::string instance;
  std::string schedule;
  std::string decisions;
  std::optional<double> alpha;
  std::string gantt;
  std::string ledger;
};

int cmd_solve(const SolveArgs& a, std::ostream& out);
int cmd_evaluate(const EvaluateArgs& a, std::ostream& out);
int cmd_sweep(const SweepArgs& a, std::ostream& out);
int cmd_convert(const ConvertArgs& a, std::ostream& out);
int cmd_export(const ExportArgs& a, std::ostream& out);
int cmd_report(const ReportArgs& a, std::ostream& out);

/// Worker count from CASHSCHED_THREADS, else the hardware concurrency.
unsigned thread_limit();

}  // namespace cashsched::cli
