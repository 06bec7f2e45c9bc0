/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace cashsched {

void check_limits(const SolveLimits& lim)
{
  if (lim.max_nodes <= 0) throw std::invalid_argument("max_nodes must be positive");
  if (!(lim.max_seconds > 0.0)) throw std::invalid_argument("max_seconds must be positive");
  if (!(lim.gap > 0.0)) throw std::invalid_argument("gap must be positive");
}

const char* to_string(SolveStatus s)
{
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_limit: return "feasible_limit";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::limit_no_incumbent: return "limit_no_incumbent";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

struct Fixing {
  int var;
  double value;
};

struct Node {
  long id;
  double bound;  // maximization form
  std::vector<Fixing> fixings;
};

struct Worse {
  bool operator()(const Node& a, const Node& b) const
  {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

double relative_gap(double bound, double incumbent)
{
  return std::max(0.0, bound - incumbent) / std::max(1.0, std::abs(incumbent));
}

}  // namespace

MilpSolution solve_milp(const MilpModel& m, const SolveLimits& lim, int objective)
{
  check_limits(lim);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const DenseLp lp(m, objective);
  const double sign = lp.maximize() ? 1.0 : -1.0;
  const int n = lp.cols();
  std::vector<int> binaries;
  for (int j = 0; j < n; ++j) {
    if (m.variables()[j].kind == VarKind::binary) binaries.push_back(j);
  }

  MilpSolution out;
  bool have_incumbent = false;
  double incumbent = -kInf;  // maximization form
  std::vector<double> lower(n), upper(n);

  std::priority_queue<Node, std::vector<Node>, Worse> open;
  long next_id = 0;
  open.push(Node{next_id++, kInf, {}});
  bool stopped = false;

  while (!open.empty()) {
    if (out.nodes >= lim.max_nodes || elapsed() > lim.max_seconds) {
      stopped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    const double prune_at = incumbent + tol::objective * std::max(1.0, std::abs(incumbent));
    if (have_incumbent && node.bound <= prune_at) continue;

    std::copy(lp.lower().begin(), lp.lower().end(), lower.begin());
    std::copy(lp.upper().begin(), lp.upper().end(), upper.begin());
    for (const auto& f : node.fixings) lower[f.var] = upper[f.var] = f.value;
    ++out.nodes;
    LpSolution rel = lp.solve(lower, upper);
    if (rel.status == LpStatus::infeasible) continue;
    if (rel.status == LpStatus::unbounded) {
      out.status = SolveStatus::unbounded;
      out.seconds = elapsed();
      return out;
    }
    if (rel.status == LpStatus::numerical_failure) {
      out.status = SolveStatus::numerical_failure;
      out.seconds = elapsed();
      return out;
    }
    const double value = sign * rel.objective;
    if (value > node.bound + tol::objective * std::max(1.0, std::abs(node.bound))) {
      throw BoundViolation("relaxation of node " + std::to_string(node.id) + " exceeds its parent bound");
    }
    if (have_incumbent && value <= prune_at) continue;

    int branch = -1;
    double best_frac = tol::integrality;
    for (int j : binaries) {
      const double v = rel.values[j];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      for (int j : binaries) rel.values[j] = std::round(rel.values[j]);
      const double exact = sign * m.evaluate(m.objectives()[objective], rel.values);
      if (!have_incumbent || exact > incumbent) {
        have_incumbent = true;
        incumbent = exact;
        out.values = std::move(rel.values);
      }
      continue;
    }
    for (double v : {0.0, 1.0}) {
      Node child{next_id++, value, node.fixings};
      child.fixings.push_back({branch, v});
      open.push(std::move(child));
    }
    if (have_incumbent && relative_gap(open.top().bound, incumbent) <= lim.gap) {
      stopped = true;
      break;
    }
  }

  out.seconds = elapsed();
  if (!have_incumbent) {
    out.status = stopped ? SolveStatus::limit_no_incumbent : SolveStatus::infeasible;
    return out;
  }
  out.objective = sign * incumbent;
  const double settled = incumbent + tol::objective * std::max(1.0, std::abs(incumbent));
  if (stopped && !open.empty() && open.top().bound > settled) {
    const double best_open = open.top().bound;
    out.status = SolveStatus::feasible_limit;
    out.bound = sign * best_open;
    out.gap = relative_gap(best_open, incumbent);
  } else {
    out.status = SolveStatus::optimal;
    out.bound = out.objective;
    out.gap = 0.0;
  }
  return out;
}

}  // namespace cashsched

namespace cashsched {

namespace {

// Parses "<prefix>_a_b_c" into its integer fields.
bool parse_indices(const std::string& name, const std::string& prefix, std::vector<int>& out)
{
  if (name.compare(0, prefix.size() + 1, prefix + "_") != 0) return false;
  out.clear();
  std::size_t pos = prefix.size() + 1;
  while (pos <= name.size()) {
    std::size_t end = name.find('_', pos);
    if (end == std::string::npos) end = name.size();
    if (end == pos) return false;
    int v = 0;
    for (std::size_t k = pos; k < end; ++k) {
      if (name[k] < '0' || name[k] > '9') return false;
      v = v * 10 + (name[k] - '0');
    }
    out.push_back(v);
    pos = end + 1;
  }
  return true;
}

}  // namespace

Schedule extract_schedule(const MilpModel& m, const std::vector<double>& values, const Project& p,
                          const TimingTable& tt)
{
  const int n = static_cast<int>(p.activities.size());
  if (values.size() != m.variables().size()) throw DecodeError("assignment size does not match the model");
  Schedule s;
  s.items.assign(n, ScheduledActivity{-1, 0, 0});
  std::vector<int> completions(n, 0);
  std::vector<int> comp_count(n, 0);
  std::vector<int> idx;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Variable& v = m.variables()[j];
    if (v.kind != VarKind::binary) continue;
    const double x = values[j];
    if (std::abs(x - std::round(x)) > tol::integrality) {
      throw DecodeError(v.name + " is fractional (" + std::to_string(x) + ")");
    }
    if (x < 0.5) continue;
    if (parse_indices(v.name, "X", idx) && idx.size() == 3) {
      const int i = idx[0] - 1;
      if (i < 0 || i >= n) throw DecodeError(v.name + " names an unknown activity");
      if (s.items[i].mode >= 0) {
        throw DecodeError("activity " + p.activities[i].id + " has more than one start (" + v.name + ")");
      }
      s.items[i].mode = idx[1] - 1;
      s.items[i].start = idx[2];
    } else if (parse_indices(v.name, "XP", idx) && idx.size() == 3) {
      const int i = idx[0] - 1;
      if (i < 0 || i >= n) throw DecodeError(v.name + " names an unknown activity");
      completions[i] = idx[2];
      ++comp_count[i];
    }
  }
  for (int i = 0; i < n; ++i) {
    auto& a = s.items[i];
    if (a.mode < 0) throw DecodeError("activity " + p.activities[i].id + " has no start");
    if (comp_count[i] > 1) throw DecodeError("activity " + p.activities[i].id + " has more than one completion");
    if (comp_count[i] == 1) {
      a.completion = completions[i];
    } else {
      const auto& mt = tt.at(i, a.mode);
      if (mt.min_completion != mt.max_completion) {
        throw DecodeError("activity " + p.activities[i].id + " has no completion indicator");
      }
      a.completion = a.start + mt.min_completion;
    }
  }
  return s;
}

}  // namespace cashsched
