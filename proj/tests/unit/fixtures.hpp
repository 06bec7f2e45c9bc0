/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

#include "cashsched/project.hpp"

namespace fixtures {

using namespace cashsched;

inline Mode mode(NivtfNumber duration, double payment = 0.0, double renew = 0.0, double nonrenew = 0.0)
{
  return Mode{duration, payment, {NivtfNumber::crisp(renew)}, {NivtfNumber::crisp(nonrenew)}};
}

inline Mode crisp_mode(double duration, double payment = 0.0, double renew = 0.0, double nonrenew = 0.0)
{
  return mode(NivtfNumber::crisp(duration), payment, renew, nonrenew);
}

inline Activity dummy(const std::string& id, std::vector<std::string> preds)
{
  Activity a;
  a.id = id;
  a.name = id;
  a.is_dummy = true;
  a.predecessors = std::move(preds);
  a.modes.push_back(crisp_mode(0));
  return a;
}

inline Activity activity(const std::string& id, std::vector<std::string> preds, std::vector<Mode> modes)
{
  Activity a;
  a.id = id;
  a.name = id;
  a.predecessors = std::move(preds);
  a.modes = std::move(modes);
  return a;
}

/// S -> A1 -> ... -> An -> E with one renewable and one non-renewable
/// resource, generous finance and no interest.
inline Project chain(const std::vector<std::vector<Mode>>& modes, int horizon, std::vector<int> periods)
{
  Project p;
  p.name = "chain";
  p.horizon = horizon;
  p.periods = PeriodGrid(std::move(periods));
  p.pricing.renewable = {10.0};
  p.pricing.nonrenewable = {5.0};
  p.pricing.daily_cap = 1e6;
  p.finance.initial_capital = 1e5;
  p.finance.max_long_loan = 0.0;
  p.finance.max_short_loan = 0.0;
  p.activities.push_back(dummy("S", {}));
  std::string prev = "S";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string id = "A" + std::to_string(i + 1);
    p.activities.push_back(activity(id, {prev}, modes[i]));
    prev = id;
  }
  p.activities.push_back(dummy("E", {prev}));
  return p;
}

}  // namespace fixtures
