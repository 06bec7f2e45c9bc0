/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "cashsched/simplex.hpp"

namespace cashsched {

namespace {

class Walker {
 public:
  Walker(const Project& p, const TimingTable& tt, const std::function<void(const Schedule&)>& visit,
         const OracleOptions& opt)
      : p_(p), tt_(tt), g_(build_graph(p)), visit_(visit), opt_(opt)
  {
    G_ = tt.grid_days;
    s_.items.assign(p.activities.size(), ScheduledActivity{});
    load_.assign(G_ + 1, 0.0);
    cap_ = p.pricing.daily_cap + 1e-9 * std::max(1.0, p.pricing.daily_cap);
  }

  long run()
  {
    if (!p_.activities.empty()) place(0);
    return leaves_;
  }

 private:
  int earliest(int i) const
  {
    int es = 1;
    for (int j : g_.predecessors[i]) {
      const auto& a = s_.items[j];
      es = std::max(es, a.start + tt_.at(j, a.mode).lag_days);
    }
    return es;
  }

  bool fits(const ModeTiming& mt, int t) const
  {
    if (t + mt.min_completion > G_ || t + mt.window[kChainL] - 1 > G_) return false;
    const double c = mt.daily_cost[kChainL];
    for (int d = t; d < t + mt.window[kChainL]; ++d) {
      if (load_[d] + c > cap_) return false;
    }
    return true;
  }

  void place(std::size_t k)
  {
    if (k == g_.topological_order.size()) {
      if (++leaves_ > opt_.max_leaves) {
        throw OracleRefusal("schedule space exceeds " + std::to_string(opt_.max_leaves) + " leaves");
      }
      visit_(s_);
      return;
    }
    const int i = g_.topological_order[k];
    const bool dummy = p_.activities[i].is_dummy;
    const int es = earliest(i);
    const int M = static_cast<int>(p_.activities[i].modes.size());
    for (int m = 0; m < M; ++m) {
      const ModeTiming& mt = tt_.at(i, m);
      if (!mt.schedulable()) continue;
      const int last = dummy ? es : G_;
      for (int t = es; t <= last; ++t) {
        if (!fits(mt, t)) continue;
        const double c = mt.daily_cost[kChainL];
        for (int d = t; d < t + mt.window[kChainL]; ++d) load_[d] += c;
        int seen_period = -1;
        for (int off = mt.min_completion; off <= mt.max_completion && t + off <= G_; ++off) {
          const auto y = p_.periods.period_of(t + off);
          if (!y || *y == seen_period) continue;
          seen_period = *y;
          s_.items[i] = ScheduledActivity{m, t, t + off};
          place(k + 1);
        }
        for (int d = t; d < t + mt.window[kChainL]; ++d) load_[d] -= c;
      }
    }
  }

  const Project& p_;
  const TimingTable& tt_;
  ProjectGraph g_;
  const std::function<void(const Schedule&)>& visit_;
  OracleOptions opt_;
  int G_ = 0;
  Schedule s_;
  std::vector<double> load_;
  double cap_ = 0.0;
  long leaves_ = 0;
};

// Financing LP with a fixed Z1 variable; rhs and Z1 bounds vary by candidate.
struct CandidateLp {
  MilpModel model;
  int z1 = -1;
  std::vector<int> due_rows;
  std::vector<std::vector<int>> cost_rows;  // [chain][period]
};

CandidateLp candidate_lp(const Project& p, const TimingTable& tt)
{
  const int Y = p.periods.count();
  FinancingInputs zero;
  zero.due.assign(Y, 0.0);
  zero.tbu.assign(tt.chains(), std::vector<double>(Y, 0.0));
  CandidateLp c;
  c.model = build_financing_lp(p.finance, zero);
  c.z1 = c.model.add_continuous("Z1", 0.0, 0.0);
  auto objs = c.model.objectives();
  c.model.objectives().clear();
  c.model.add_objective("Z1", ObjSense::minimize, {{c.z1, 1.0}});
  for (auto& o : objs) c.model.objectives().push_back(o);
  const auto& rows = c.model.constraints();
  auto row_of = [&](const std::string& name) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].name == name) return static_cast<int>(r);
    }
    throw std::logic_error("financing LP lacks row " + name);
  };
  for (int y = 1; y <= Y; ++y) c.due_rows.push_back(row_of("dues_" + std::to_string(y)));
  c.cost_rows.resize(tt.chains());
  for (int ch = 0; ch < tt.chains(); ++ch) {
    const std::string tag = tt.chains() == 1 ? "" : (ch == kChainL ? "_L" : "_U");
    for (int y = 1; y <= Y; ++y) {
      c.cost_rows[ch].push_back(row_of("cash" + tag + "_" + std::to_string(y)));
    }
  }
  return c;
}

}  // namespace

long for_each_schedule(const Project& p, const TimingTable& tt, const std::function<void(const Schedule&)>& visit,
                       const OracleOptions& opt)
{
  return Walker(p, tt, visit, opt).run();
}

ScheduleSpace ScheduleSpace::enumerate(const Project& p, const TimingTable& tt, const OracleOptions& opt)
{
  const ProjectGraph g = build_graph(p);
  using Key = std::tuple<int, std::vector<double>, std::vector<std::vector<double>>>;
  std::map<Key, std::size_t> index;
  ScheduleSpace space;
  space.leaves = for_each_schedule(
      p, tt,
      [&](const Schedule& s) {
        Candidate c;
        c.makespan = s.items[g.sink].completion;
        c.inputs = financing_inputs(s, p, tt);
        Key key{c.makespan, c.inputs.due, c.inputs.tbu};
        if (index.count(key)) return;
        index.emplace(std::move(key), space.candidates.size());
        c.schedule = s;
        space.candidates.push_back(std::move(c));
      },
      opt);
  return space;
}

std::vector<Objective> oracle_objectives(const TimingTable& tt)
{
  std::vector<Objective> out{{"Z1", ObjSense::minimize, {}, 0.0}};
  if (tt.chains() == 1) {
    out.push_back({"Z2", ObjSense::maximize, {}, 0.0});
  } else {
    out.push_back({"Z2L", ObjSense::maximize, {}, 0.0});
    out.push_back({"Z2U", ObjSense::maximize, {}, 0.0});
  }
  return out;
}

OracleResult optimize_over(const ScheduleSpace& space, const Project& p, const TimingTable& tt,
                           const ScalarObjective& obj)
{
  const CandidateLp base = candidate_lp(p, tt);
  const MilpModel model = apply_objective(base.model, obj);
  const DenseLp lp(model, 0);
  const int offset = base_objective_offset(obj);
  const int nobj = static_cast<int>(base.model.objectives().size());
  std::vector<double> lower = lp.lower(), upper = lp.upper(), rhs = lp.rhs();
  const std::vector<double> rhs0 = lp.rhs();
  const int Y = p.periods.count();

  OracleResult out;
  out.leaves = space.leaves;
  out.candidates = static_cast<long>(space.candidates.size());
  bool found = false;
  double best = 0.0;
  const double sign = lp.maximize() ? 1.0 : -1.0;
  for (const auto& c : space.candidates) {
    lower[base.z1] = upper[base.z1] = c.makespan;
    rhs = rhs0;
    for (int y = 0; y < Y; ++y) {
      rhs[base.due_rows[y]] += c.inputs.due[y];
      for (int ch = 0; ch < tt.chains(); ++ch) rhs[base.cost_rows[ch][y]] -= c.inputs.tbu[ch][y];
    }
    const LpSolution sol = lp.solve(lower, upper, rhs);
    if (sol.status == LpStatus::infeasible) continue;
    if (sol.status != LpStatus::optimal) {
      throw std::runtime_error(std::string("candidate LP failed: ") + to_string(sol.status) + " residual " + std::to_string(sol.max_residual * 1e9) + "e-9" + " iters " + std::to_string(sol.iterations));
    }
    const double v = sign * sol.objective;
    if (found && v <= best + tol::objective * std::max(1.0, std::abs(best)) * 1e-3) continue;
    found = true;
    best = v;
    out.objective = sol.objective;
    out.schedule = c.schedule;
    out.decisions = decisions_from(model, sol.values, Y);
    out.objective_values.clear();
    for (int k = 0; k < nobj; ++k) out.objective_values.push_back(model.evaluate(model.objectives()[offset + k], sol.values));
  }
  out.status = found ? SolveStatus::optimal : SolveStatus::infeasible;
  return out;
}

PayoffTable oracle_payoff_table(const ScheduleSpace& space, const Project& p, const TimingTable& tt)
{
  auto solve = [&](int objective, const std::vector<ObjectiveBound>& bounds) {
    const OracleResult r = optimize_over(space, p, tt, ScalarObjective::single(objective, bounds));
    if (r.status != SolveStatus::optimal) throw PayoffError("no feasible schedule for the payoff table");
    return r.objective_values;
  };
  return compute_payoff_table(oracle_objectives(tt), solve);
}

OracleResult enumerate_exhaustive(const Project& p, const TimingTable& tt, const ScalarObjective& obj,
                                  const OracleOptions& opt)
{
  return optimize_over(ScheduleSpace::enumerate(p, tt, opt), p, tt, obj);
}

}  // namespace cashsched
