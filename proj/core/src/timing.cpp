/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/timing.hpp"

#include <algorithm>
#include <cmath>

namespace cashsched {

namespace {

constexpr double kSnap = 1e-9;

double snap(double x)
{
  const double r = std::round(x);
  return std::abs(x - r) < kSnap ? r : x;
}

ModeTiming crisp_mode_timing(const Mode& mode, const ResourcePricing& pricing)
{
  ModeTiming mt;
  const double d = snap(mode.duration.modal());
  const int days = ceil_days(d);
  mt.lag = {d, d};
  mt.lag_days = days;
  mt.completion_min = {days, days};
  mt.completion_max = {days, days};
  mt.min_completion = days;
  mt.max_completion = days;
  mt.window = {days, days};
  for (int c = 0; c < 2; ++c) {
    double cost = 0.0;
    for (std::size_t k = 0; k < mode.renewable.size(); ++k) {
      mt.renewable[c].push_back(mode.renewable[k].modal());
      cost += pricing.renewable[k] * mode.renewable[k].modal();
    }
    for (std::size_t l = 0; l < mode.nonrenewable.size(); ++l) {
      mt.nonrenewable[c].push_back(mode.nonrenewable[l].modal());
      cost += pricing.nonrenewable[l] * mode.nonrenewable[l].modal();
    }
    mt.daily_cost[c] = cost;
  }
  return mt;
}

ModeTiming fuzzy_mode_timing(const Mode& mode, const ResourcePricing& pricing, double alpha)
{
  ModeTiming mt;
  const Triangle* copies[2] = {&mode.duration.lower(), &mode.duration.upper()};
  std::array<int, 2> ev_window{};
  for (int c = 0; c < 2; ++c) {
    const Triangle& t = *copies[c];
    mt.lag[c] = snap(mix_coeff(t, alpha, MixClass::geq_full));
    mt.completion_min[c] = round_half_up(mix_coeff(t, alpha, MixClass::geq_half));
    mt.completion_max[c] = round_half_up(mix_coeff(t, alpha, MixClass::leq_half));
    ev_window[c] = round_half_up(expected_value(t));
  }
  mt.lag_days = ceil_days(std::max(mt.lag[0], mt.lag[1]));
  mt.min_completion = std::max(mt.completion_min[0], mt.completion_min[1]);
  mt.max_completion = std::min(mt.completion_max[0], mt.completion_max[1]);
  mt.window[kChainL] = std::max(ev_window[0], ev_window[1]);
  mt.window[kChainU] = std::min(ev_window[0], ev_window[1]);

  auto coeffs = [&](const NivtfNumber& v) {
    const double a = mix_coeff(v.lower(), alpha, MixClass::leq_full);
    const double b = mix_coeff(v.upper(), alpha, MixClass::leq_full);
    return std::pair{std::max(a, b), std::min(a, b)};
  };
  double cost_l = 0.0, cost_u = 0.0;
  for (std::size_t k = 0; k < mode.renewable.size(); ++k) {
    auto [hi, lo] = coeffs(mode.renewable[k]);
    mt.renewable[kChainL].push_back(hi);
    mt.renewable[kChainU].push_back(lo);
    cost_l += pricing.renewable[k] * hi;
    cost_u += pricing.renewable[k] * lo;
  }
  for (std::size_t l = 0; l < mode.nonrenewable.size(); ++l) {
    auto [hi, lo] = coeffs(mode.nonrenewable[l]);
    mt.nonrenewable[kChainL].push_back(hi);
    mt.nonrenewable[kChainU].push_back(lo);
    cost_l += pricing.nonrenewable[l] * hi;
    cost_u += pricing.nonrenewable[l] * lo;
  }
  mt.daily_cost = {cost_l, cost_u};
  return mt;
}

int span_of(const ModeTiming& mt)
{
  return std::max({mt.lag_days, mt.max_completion, mt.window[kChainL] - 1, 0});
}

}  // namespace

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5 + kSnap)); }

int ceil_days(double x) { return static_cast<int>(std::ceil(x - kSnap)); }

TimingTable make_timing(const Project& p, double alpha, int grid_days)
{
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  TimingTable tt;
  tt.alpha = alpha;
  tt.crisp = false;
  tt.grid_days = grid_days > 0 ? grid_days : p.horizon;
  tt.modes.resize(p.activities.size());
  for (std::size_t i = 0; i < p.activities.size(); ++i) {
    for (const auto& mode : p.activities[i].modes) {
      tt.modes[i].push_back(fuzzy_mode_timing(mode, p.pricing, alpha));
    }
  }
  return tt;
}

TimingTable make_crisp_timing(const Project& p, int grid_days)
{
  if (!p.is_crisp()) { throw ProjectError("crisp model requested for an instance with fuzzy parameters"); }
  TimingTable tt;
  tt.alpha = 0.0;
  tt.crisp = true;
  tt.grid_days = grid_days > 0 ? grid_days : p.horizon;
  tt.modes.resize(p.activities.size());
  for (std::size_t i = 0; i < p.activities.size(); ++i) {
    for (const auto& mode : p.activities[i].modes) {
      tt.modes[i].push_back(crisp_mode_timing(mode, p.pricing));
    }
  }
  return tt;
}

int horizon_bound(const Project& p, double alpha)
{
  const TimingTable tt = make_timing(p, alpha);
  int total = 0;
  for (const auto& modes : tt.modes) {
    int span = 0;
    for (const auto& mt : modes) {
      span = std::max(span, span_of(mt));
    }
    total += span;
  }
  return total;
}

}  // namespace cashsched
