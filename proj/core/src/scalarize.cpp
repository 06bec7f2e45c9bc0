/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cashsched {

double bound_tolerance(double value) { return 1e-9 * std::max(1.0, std::abs(value)); }

bool degenerate_range(double pis, double nis) { return std::abs(pis - nis) <= 1e-7 * std::max(1.0, std::abs(pis)); }

double membership(double value, double pis, double nis, ObjSense sense)
{
  if (degenerate_range(pis, nis)) return 1.0;
  const double mu = sense == ObjSense::maximize ? (value - nis) / (pis - nis) : (nis - value) / (nis - pis);
  return std::clamp(mu, 0.0, 1.0);
}

namespace {

bool better(ObjSense sense, double a, double b) { return sense == ObjSense::maximize ? a > b : a < b; }

}  // namespace

PayoffTable compute_payoff_table(const std::vector<Objective>& objectives, const PayoffSolver& solve)
{
  const int k = static_cast<int>(objectives.size());
  PayoffTable table;
  table.entries.resize(k);
  table.values.assign(k, std::vector<double>(k, 0.0));
  for (int j = 0; j < k; ++j) {
    table.entries[j].label = objectives[j].label;
    table.entries[j].sense = objectives[j].sense;
    table.entries[j].pis = solve(j, {})[j];
  }
  for (int j = 0; j < k; ++j) {
    table.values[j][j] = table.entries[j].pis;
    for (int i = 0; i < k; ++i) {
      if (i == j) continue;
      table.values[i][j] = solve(i, {ObjectiveBound{j, table.entries[j].pis}})[i];
    }
  }
  for (int i = 0; i < k; ++i) {
    auto& e = table.entries[i];
    e.nis = e.pis;
    for (int j = 0; j < k; ++j) {
      if (j != i && better(e.sense, e.nis, table.values[i][j])) e.nis = table.values[i][j];
    }
    if (degenerate_range(e.pis, e.nis)) e.nis = e.pis;
  }
  return table;
}

PayoffTable compute_payoff_table(const MilpModel& base, const SolveLimits& lim)
{
  auto solve = [&](int objective, const std::vector<ObjectiveBound>& bounds) {
    const MilpModel m = apply_objective(base, ScalarObjective::single(objective, bounds));
    const MilpSolution sol = solve_milp(m, lim, 0);
    const std::string& label = base.objectives()[objective].label;
    if (sol.status == SolveStatus::infeasible) throw PayoffError("model is infeasible while optimizing " + label);
    if (sol.status == SolveStatus::unbounded) throw PayoffError("objective " + label + " is unbounded");
    if (!sol.has_incumbent()) {
      throw PayoffError(std::string("no solution while optimizing ") + label + ": " + to_string(sol.status));
    }
    std::vector<double> out;
    for (const auto& o : base.objectives()) out.push_back(base.evaluate(o, sol.values));
    return out;
  };
  return compute_payoff_table(base.objectives(), solve);
}

ThConfig default_th_config(int terms, double gamma)
{
  ThConfig cfg;
  cfg.gamma = gamma;
  cfg.theta.assign(terms, 1.0 / terms);
  return cfg;
}

void validate_weights(const std::vector<double>& w, std::size_t terms)
{
  if (w.size() != terms) {
    throw std::invalid_argument("expected " + std::to_string(terms) + " weights, got " + std::to_string(w.size()));
  }
  for (double v : w) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("weights must lie in [0, 1]");
  }
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1, got " + std::to_string(sum));
}

void validate_th_config(const ThConfig& cfg, std::size_t terms)
{
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  validate_weights(cfg.theta, terms);
}

ScalarObjective ScalarObjective::single(int index, std::vector<ObjectiveBound> bounds)
{
  ScalarObjective o;
  o.kind = Kind::single;
  o.index = index;
  o.bounds = std::move(bounds);
  return o;
}

ScalarObjective ScalarObjective::torabi_hassini(PayoffTable payoffs, ThConfig cfg)
{
  ScalarObjective o;
  o.kind = Kind::th;
  o.payoffs = std::move(payoffs);
  o.th = std::move(cfg);
  return o;
}

ScalarObjective ScalarObjective::weighted_sum(PayoffTable payoffs, std::vector<double> weights)
{
  ScalarObjective o;
  o.kind = Kind::weighted;
  o.payoffs = std::move(payoffs);
  o.weights = std::move(weights);
  return o;
}

namespace {

void check_payoffs(const MilpModel& base, const PayoffTable& payoffs)
{
  if (payoffs.size() != base.objectives().size()) {
    throw std::invalid_argument("payoff table has " + std::to_string(payoffs.size()) + " entries for " +
                                std::to_string(base.objectives().size()) + " objectives");
  }
}

std::vector<int> add_memberships(MilpModel& m, const PayoffTable& payoffs)
{
  const auto objectives = m.objectives();
  std::vector<int> mu;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    const auto& e = payoffs.entries[i];
    const std::string name = "MU_" + std::to_string(i + 1);
    const double sign = e.sense == ObjSense::maximize ? 1.0 : -1.0;
    const Objective& z = objectives[i];
    if (degenerate_range(e.pis, e.nis)) {
      // Membership 1 only where the objective attains its ideal value.
      mu.push_back(m.add_continuous(name, 1.0, 1.0));
      std::vector<Term> row;
      for (const auto& t : z.terms) row.push_back({t.var, -sign * t.coef});
      const double slack = 1e-7 * std::max(1.0, std::abs(e.pis));
      m.add_constraint("cmu_" + std::to_string(i + 1), std::move(row), RowSense::le, sign * (z.constant - e.pis) + slack);
      continue;
    }
    const int v = m.add_continuous(name, 0.0, 1.0);
    mu.push_back(v);
    // MU*(range) - sign*Z <= -sign*NIS, divided through by the range.
    const double range = std::abs(e.pis - e.nis);
    std::vector<Term> row{{v, 1.0}};
    for (const auto& t : z.terms) row.push_back({t.var, -sign * t.coef / range});
    const double rhs = sign * (z.constant - e.nis) / range;
    m.add_constraint("cmu_" + std::to_string(i + 1), std::move(row), RowSense::le, rhs);
  }
  return mu;
}

void put_first(MilpModel& m, Objective obj)
{
  auto& objs = m.objectives();
  objs.insert(objs.begin(), std::move(obj));
}

}  // namespace

MilpModel build_th_model(const MilpModel& base, const PayoffTable& payoffs, const ThConfig& cfg)
{
  check_payoffs(base, payoffs);
  validate_th_config(cfg, payoffs.size());
  MilpModel m = base;
  const std::vector<int> mu = add_memberships(m, payoffs);
  const int lambda = m.add_continuous("LAMBDA0", 0.0, 1.0);
  Objective obj{"TH", ObjSense::maximize, {}, 0.0};
  if (cfg.gamma != 0.0) obj.terms.push_back({lambda, cfg.gamma});
  for (std::size_t i = 0; i < mu.size(); ++i) {
    m.add_constraint("clambda_" + std::to_string(i + 1), {{lambda, 1.0}, {mu[i], -1.0}}, RowSense::le, 0.0);
    const double w = (1.0 - cfg.gamma) * cfg.theta[i];
    if (w != 0.0) obj.terms.push_back({mu[i], w});
  }
  put_first(m, std::move(obj));
  return m;
}

MilpModel build_weighted_sum(const MilpModel& base, const PayoffTable& payoffs, const std::vector<double>& weights)
{
  check_payoffs(base, payoffs);
  validate_weights(weights, payoffs.size());
  MilpModel m = base;
  const std::vector<int> mu = add_memberships(m, payoffs);
  Objective obj{"WS", ObjSense::maximize, {}, 0.0};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (weights[i] != 0.0) obj.terms.push_back({mu[i], weights[i]});
  }
  put_first(m, std::move(obj));
  return m;
}

MilpModel apply_objective(const MilpModel& base, const ScalarObjective& obj)
{
  MilpModel m;
  switch (obj.kind) {
    case ScalarObjective::Kind::single: {
      if (obj.index < 0 || obj.index >= static_cast<int>(base.objectives().size())) {
        throw std::invalid_argument("objective index out of range");
      }
      m = base;
      put_first(m, base.objectives()[obj.index]);
      break;
    }
    case ScalarObjective::Kind::th: m = build_th_model(base, obj.payoffs, obj.th); break;
    case ScalarObjective::Kind::weighted: m = build_weighted_sum(base, obj.payoffs, obj.weights); break;
  }
  for (const auto& b : obj.bounds) {
    const Objective& z = base.objectives().at(b.objective);
    const bool max = z.sense == ObjSense::maximize;
    const double limit = max ? b.value - bound_tolerance(b.value) : b.value + bound_tolerance(b.value);
    m.add_constraint("cbound_" + z.label, z.terms, max ? RowSense::ge : RowSense::le, limit - z.constant);
  }
  return m;
}

int base_objective_offset(const ScalarObjective&) { return 1; }

double scalar_value(const ScalarObjective& obj, const std::vector<double>& v)
{
  if (obj.kind == ScalarObjective::Kind::single) return v.at(obj.index);
  std::vector<double> mu;
  for (std::size_t i = 0; i < obj.payoffs.size(); ++i) {
    const auto& e = obj.payoffs.entries[i];
    mu.push_back(membership(v.at(i), e.pis, e.nis, e.sense));
  }
  double out = 0.0;
  if (obj.kind == ScalarObjective::Kind::weighted) {
    for (std::size_t i = 0; i < mu.size(); ++i) out += obj.weights[i] * mu[i];
    return out;
  }
  out = obj.th.gamma * *std::min_element(mu.begin(), mu.end());
  for (std::size_t i = 0; i < mu.size(); ++i) out += (1.0 - obj.th.gamma) * obj.th.theta[i] * mu[i];
  return out;
}

}  // namespace cashsched
