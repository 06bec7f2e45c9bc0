/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cashsched/instance_io.hpp"

namespace cashsched {

/// PSPLIB multi-mode files require the full header and the project
/// information block; MMLIB files may omit the horizon, the project
/// information block and the doubly constrained resource line.
enum class BenchmarkDialect { psplib_mm, mmlib };

const char* to_string(BenchmarkDialect d);

struct BenchmarkMode {
  int duration = 0;
  std::vector<int> renewable;
  std::vector<int> nonrenewable;
};

struct BenchmarkJob {
  int number = 0;
  std::vector<int> successors;
  std::vector<BenchmarkMode> modes;
};

struct BenchmarkInstance {
  BenchmarkDialect dialect = BenchmarkDialect::psplib_mm;
  /// Header values as declared.
  int declared_jobs = 0;
  int declared_renewable = 0;
  int declared_nonrenewable = 0;
  int declared_doubly = 0;
  int horizon = 0;
  std::vector<int> renewable_capacity;
  std::vector<int> nonrenewable_capacity;
  /// Jobs in file order, numbered 1..n.
  std::vector<BenchmarkJob> jobs;

  int mode_count() const;
  int arc_count() const;
};

/// Counts as declared by the header next to the counts found in the
/// section bodies. parse_psplib_mm only returns when each pair agrees.
struct HeaderEcho {
  int declared_jobs = 0;
  int precedence_jobs = 0;
  int request_jobs = 0;
  int declared_renewable = 0;
  int request_renewable = 0;
  int declared_nonrenewable = 0;
  int request_nonrenewable = 0;
  int precedence_modes = 0;
  int request_modes = 0;
  int arcs = 0;
};

/// Throws ParseError whose path() names the offending section.
BenchmarkInstance parse_psplib_mm(std::string_view text, BenchmarkDialect dialect = BenchmarkDialect::psplib_mm);

/// Re-derives the echo from a parsed instance.
HeaderEcho header_echo(const BenchmarkInstance& b);

struct FinanceConfig {
  /// payment = (1 + markup) * crisp mode cost
  double markup = 0.2;
  /// Fuzzy spreads as fractions of the crisp value; lower <= upper.
  double duration_spread_lower = 0.0;
  double duration_spread_upper = 0.0;
  double resource_spread_lower = 0.0;
  double resource_spread_upper = 0.0;
  /// Unit prices are drawn as integers from these ranges.
  int renewable_price_min = 5;
  int renewable_price_max = 20;
  int nonrenewable_price_min = 2;
  int nonrenewable_price_max = 10;
  int period_length = 30;
  /// Finance caps as fractions of the total cheapest-mode cost.
  double capital_fraction = 0.3;
  double long_loan_fraction = 0.3;
  double short_loan_fraction = 0.1;
  double min_cash = 0.0;
  /// Multiplies the cost of running every renewable at capacity.
  double daily_cap_factor = 1.0;
  double r_excess = 0.0125;
  double r_delay = 0.1;
  double r_long = 0.06;
  double r_short = 0.075;
  int compounding_days = 30;
};

/// Strict JSON form of FinanceConfig; absent fields keep their defaults.
FinanceConfig parse_finance_config(std::string_view text);

/// Deterministic in (b, seed, cfg). Jobs 1 and n become the dummy source
/// and sink; activity ids are the job numbers.
InstanceDocument synthesize_finance(const BenchmarkInstance& b, std::uint64_t seed, const FinanceConfig& cfg = {});

}  // namespace cashsched
