/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <cmath>

namespace cashsched {

const char* to_string(Method m)
{
  switch (m) {
    case Method::th: return "th";
    case Method::weighted: return "weighted";
    case Method::single_makespan: return "single-makespan";
    case Method::single_profit: return "single-profit";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view s)
{
  for (Method m : {Method::th, Method::weighted, Method::single_makespan, Method::single_profit}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

bool crisp_run(const Project& p, const RunOptions& opt)
{
  return !opt.alpha && p.is_crisp();
}

std::size_t objective_count(const Project& p, const RunOptions& opt)
{
  return crisp_run(p, opt) ? 2 : 3;
}

void check_run_options(const Project& p, const RunOptions& opt)
{
  if (opt.alpha && !(*opt.alpha >= 0.0 && *opt.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  check_limits(opt.limits);
  const std::size_t k = objective_count(p, opt);
  if (opt.method == Method::th) {
    ThConfig cfg = opt.theta.empty() ? default_th_config(static_cast<int>(k), opt.gamma) : ThConfig{opt.gamma, opt.theta};
    validate_th_config(cfg, k);
  } else if (!opt.theta.empty()) {
    throw std::invalid_argument("theta weights apply to the th method only");
  }
  if (opt.method == Method::weighted) {
    if (!opt.weights.empty()) validate_weights(opt.weights, k);
  } else if (!opt.weights.empty()) {
    throw std::invalid_argument("weights apply to the weighted method only");
  }
}

TimingTable run_timing(const Project& p, const RunOptions& opt)
{
  if (crisp_run(p, opt)) return make_crisp_timing(p);
  return make_timing(p, opt.alpha.value_or(kDefaultAlpha));
}

BaseModel build_base(const Project& p, const RunOptions& opt)
{
  BaseModel b;
  b.timing = run_timing(p, opt);
  BuildOptions bo;
  bo.form = opt.form;
  b.model = build_model(p, b.timing, bo);
  return b;
}

namespace {

double elapsed(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ScalarObjective make_scalar_objective(const MilpModel& base, const RunOptions& opt)
{
  const int k = static_cast<int>(base.objectives().size());
  switch (opt.method) {
    case Method::single_makespan: return ScalarObjective::single(0);
    case Method::single_profit: return ScalarObjective::single(1);
    case Method::th: {
      PayoffTable pt = compute_payoff_table(base, opt.limits);
      ThConfig cfg = opt.theta.empty() ? default_th_config(k, opt.gamma) : ThConfig{opt.gamma, opt.theta};
      return ScalarObjective::torabi_hassini(std::move(pt), std::move(cfg));
    }
    case Method::weighted: {
      PayoffTable pt = compute_payoff_table(base, opt.limits);
      std::vector<double> w = opt.weights;
      if (w.empty()) w.assign(k, 1.0 / static_cast<double>(k));
      return ScalarObjective::weighted_sum(std::move(pt), std::move(w));
    }
  }
  throw std::logic_error("unknown method");
}

RunResult run_solve(const Project& p, const RunOptions& opt)
{
  check_run_options(p, opt);
  const auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  r.crisp = crisp_run(p, opt);
  r.alpha = r.crisp ? 0.0 : opt.alpha.value_or(kDefaultAlpha);
  BaseModel base = build_base(p, opt);
  r.timing = base.timing;
  const std::size_t k = base.model.objectives().size();
  for (const auto& o : base.model.objectives()) {
    r.labels.push_back(o.label);
    r.senses.push_back(o.sense);
  }

  ScalarObjective obj;
  try {
    obj = make_scalar_objective(base.model, opt);
  } catch (const PayoffError& e) {
    r.status = SolveStatus::infeasible;
    r.message = std::string("payoff table: ") + e.what();
    r.seconds = elapsed(t0);
    return r;
  }
  if (obj.kind != ScalarObjective::Kind::single) r.payoffs = obj.payoffs;

  const MilpModel model = apply_objective(base.model, obj);
  const MilpSolution sol = solve_milp(model, opt.limits, 0);
  r.status = sol.status;
  r.scalar = sol.objective;
  r.bound = sol.bound;
  r.gap = sol.gap;
  r.nodes = sol.nodes;
  if (!sol.has_incumbent()) {
    r.message = std::string("solver status ") + to_string(sol.status);
    r.seconds = elapsed(t0);
    return r;
  }
  const int offset = base_objective_offset(obj);
  for (std::size_t i = 0; i < k; ++i) {
    r.objective_values.push_back(model.evaluate(model.objectives()[offset + i], sol.values));
  }
  if (r.payoffs) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& e = r.payoffs->entries[i];
      r.memberships.push_back(membership(r.objective_values[i], e.pis, e.nis, e.sense));
    }
    if (opt.method == Method::th) {
      if (auto v = model.find("LAMBDA0")) {
        // Snap solver noise at the [0, 1] bounds.
        double l = std::clamp(sol.values[*v], 0.0, 1.0);
        if (l < tol::feasibility) l = 0.0;
        if (l > 1.0 - tol::feasibility) l = 1.0;
        r.lambda0 = l;
      }
    }
  }
  r.schedule = extract_schedule(model, sol.values, p, r.timing);
  r.decisions = decisions_from(model, sol.values, p.periods.count());
  r.ledger = evaluate_ledger(r.schedule, r.decisions, p, r.timing, kChainL);
  r.seconds = elapsed(t0);
  return r;
}

EvaluateResult evaluate_schedule(const Project& p, const TimingTable& tt, const Schedule& s,
                                 const std::optional<FinancingDecisions>& decisions)
{
  EvaluateResult out;
  if (decisions) {
    out.decisions = *decisions;
    out.ledger = evaluate_ledger(s, *decisions, p, tt, kChainL);
    return out;
  }
  FinancingResult f = optimize_financing(s, p, tt, kChainL);
  out.decisions = std::move(f.decisions);
  out.ledger = std::move(f.ledger);
  out.optimized = true;
  return out;
}

}  // namespace cashsched
