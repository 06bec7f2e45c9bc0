/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/toy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cashsched {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  // Spreads in half-day steps; the upper triangle is never tighter.
  NivtfNumber around(double mid, bool fuzzy)
  {
    if (!fuzzy) return NivtfNumber::crisp(mid);
    const double inner = 0.5 * integer(0, 1);
    const double outer = inner + 0.5 * integer(0, 1);
    const double a = std::min(inner, mid);
    const double b = std::min(outer, mid);
    return NivtfNumber::make({mid - a, mid, mid + a}, {mid - b, mid, mid + b});
  }

 private:
  std::mt19937_64 rng_;
};

Activity dummy(std::string id, std::vector<std::string> preds)
{
  Activity a;
  a.id = id;
  a.name = id;
  a.is_dummy = true;
  a.predecessors = std::move(preds);
  a.modes.push_back(Mode{NivtfNumber::crisp(0.0), 0.0, {NivtfNumber::crisp(0.0)}, {NivtfNumber::crisp(0.0)}});
  return a;
}

}  // namespace

Project random_toy(std::uint64_t seed, const ToyOptions& opt)
{
  Draw draw(seed);
  Project p;
  p.name = "toy-" + std::to_string(seed);
  const int n = draw.integer(opt.min_activities, opt.max_activities);
  p.horizon = draw.integer(opt.min_horizon, opt.max_horizon);
  std::vector<int> bounds;
  for (int y = 1; y <= opt.periods; ++y) {
    bounds.push_back(y == opt.periods ? p.horizon : p.horizon * y / opt.periods);
  }
  p.periods = PeriodGrid(bounds);
  p.pricing.renewable = {static_cast<double>(draw.integer(10, 30))};
  p.pricing.nonrenewable = {static_cast<double>(draw.integer(5, 15))};

  p.activities.push_back(dummy("S", {}));
  std::vector<bool> has_successor(n, false);
  double peak = 0.0;
  double total_cost = 0.0;
  for (int i = 0; i < n; ++i) {
    Activity a;
    a.id = "A" + std::to_string(i + 1);
    a.name = a.id;
    for (int j = 0; j < i; ++j) {
      if (draw.coin(0.4)) {
        a.predecessors.push_back("A" + std::to_string(j + 1));
        has_successor[j] = true;
      }
    }
    if (a.predecessors.empty()) a.predecessors.push_back("S");
    const int modes = draw.integer(1, opt.max_modes);
    const int base = draw.integer(1, 2);
    for (int m = 0; m < modes; ++m) {
      // later modes are slower and lighter
      const int d = std::min(3, base + m);
      const int r = std::max(1, draw.integer(2, 4) - m);
      const int w = std::max(1, draw.integer(1, 3) - m);
      const double cost = d * (r * p.pricing.renewable[0] + w * p.pricing.nonrenewable[0]);
      const double markup = 0.2 + 0.1 * draw.integer(0, 4);
      Mode mode{draw.around(d, opt.fuzzy), std::round((1.0 + markup) * cost),
                {draw.around(r, opt.fuzzy)}, {draw.around(w, opt.fuzzy)}};
      const double daily = (r + 1.0) * p.pricing.renewable[0] + (w + 1.0) * p.pricing.nonrenewable[0];
      peak = std::max(peak, daily);
      total_cost = std::max(total_cost, cost);
      a.modes.push_back(std::move(mode));
    }
    p.activities.push_back(std::move(a));
  }
  std::vector<std::string> ends;
  for (int i = 0; i < n; ++i) {
    if (!has_successor[i]) ends.push_back("A" + std::to_string(i + 1));
  }
  p.activities.push_back(dummy("E", ends));

  // A cap between one and two peak activities makes parallel work optional.
  p.pricing.daily_cap = std::round(peak * (1.0 + 0.25 * draw.integer(0, 4)));
  FinanceParams& f = p.finance;
  f.initial_capital = std::round(total_cost * n * 0.1 * draw.integer(3, 8));
  f.max_long_loan = std::round(total_cost * 0.5 * draw.integer(0, 2));
  f.max_short_loan = std::round(total_cost * 0.5 * draw.integer(0, 2));
  f.min_cash = 0.0;
  f.r_excess = 0.0005 * draw.integer(0, 4);
  f.r_delay = 0.0005 * draw.integer(1, 6);
  f.r_long = 0.0005 * draw.integer(0, 4);
  f.r_short = 0.0005 * draw.integer(0, 4);
  return p;
}

}  // namespace cashsched
