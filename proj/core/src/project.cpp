/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/project.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace cashsched {

PeriodGrid PeriodGrid::uniform(int horizon, int length)
{
  std::vector<int> b;
  if (length <= 0) { return PeriodGrid{}; }
  for (int day = length; day < horizon; day += length) {
    b.push_back(day);
  }
  if (horizon > 0) { b.push_back(horizon); }
  return PeriodGrid(std::move(b));
}

std::optional<int> PeriodGrid::period_of(int day) const
{
  if (day < 1 || boundaries_.empty() || day > boundaries_.back()) { return std::nullopt; }
  auto it = std::lower_bound(boundaries_.begin(), boundaries_.end(), day);
  return static_cast<int>(it - boundaries_.begin());
}

std::optional<int> Project::index_of(const std::string& id) const
{
  for (std::size_t i = 0; i < activities.size(); ++i) {
    if (activities[i].id == id) { return static_cast<int>(i); }
  }
  return std::nullopt;
}

bool Project::is_crisp() const
{
  for (const auto& a : activities) {
    for (const auto& m : a.modes) {
      if (!m.duration.is_crisp()) { return false; }
      for (const auto& r : m.renewable) {
        if (!r.is_crisp()) { return false; }
      }
      for (const auto& w : m.nonrenewable) {
        if (!w.is_crisp()) { return false; }
      }
    }
  }
  return true;
}

namespace {

bool is_zero(const NivtfNumber& v) { return v.is_crisp() && v.modal() == 0.0; }

// Kahn's algorithm; returns the order, shorter than n when a cycle exists.
std::vector<int> kahn(const std::vector<std::vector<int>>& preds,
                      const std::vector<std::vector<int>>& succs)
{
  const int n = static_cast<int>(preds.size());
  std::vector<int> indeg(n);
  for (int i = 0; i < n; ++i) {
    indeg[i] = static_cast<int>(preds[i].size());
  }
  // min-heap keeps the order deterministic and close to the input order
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) { ready.push(i); }
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int j : succs[i]) {
      if (--indeg[j] == 0) { ready.push(j); }
    }
  }
  return order;
}

}  // namespace

std::vector<Diagnostic> validate_project(const Project& p)
{
  std::vector<Diagnostic> out;
  auto add = [&](std::string entity, std::string rule, std::string msg) {
    out.push_back({std::move(entity), std::move(rule), std::move(msg)});
  };

  const int K = p.renewable_count();
  const int L = p.nonrenewable_count();

  if (p.activities.empty()) { add("project", "activities", "project has no activities"); }

  std::unordered_map<std::string, int> ids;
  for (std::size_t i = 0; i < p.activities.size(); ++i) {
    const auto& a = p.activities[i];
    if (a.id.empty()) { add("activity #" + std::to_string(i + 1), "identifier", "empty activity id"); }
    if (!ids.emplace(a.id, static_cast<int>(i)).second) {
      add("activity " + a.id, "identifier", "duplicate activity id");
    }
  }

  for (const auto& a : p.activities) {
    const std::string ent = "activity " + a.id;
    if (a.modes.empty()) { add(ent, "modes", "activity has no modes"); }
    for (std::size_t m = 0; m < a.modes.size(); ++m) {
      const auto& mode = a.modes[m];
      const std::string ment = ent + " mode " + std::to_string(m + 1);
      if (mode.duration.modal() < 0.0 || mode.duration.upper().lo < 0.0) {
        add(ment, "non-negative duration", "duration must be non-negative");
      }
      if (!(mode.payment >= 0.0) || !std::isfinite(mode.payment)) {
        add(ment, "non-negative payment", "payment must be a finite non-negative amount");
      }
      if (static_cast<int>(mode.renewable.size()) != K) {
        add(ment, "resource arity", "renewable usage count does not match resource pricing");
      }
      if (static_cast<int>(mode.nonrenewable.size()) != L) {
        add(ment, "resource arity", "non-renewable usage count does not match resource pricing");
      }
      for (const auto& r : mode.renewable) {
        if (r.upper().lo < 0.0) { add(ment, "non-negative usage", "renewable usage must be non-negative"); }
      }
      for (const auto& w : mode.nonrenewable) {
        if (w.upper().lo < 0.0) { add(ment, "non-negative usage", "non-renewable usage must be non-negative"); }
      }
    }
    if (a.is_dummy) {
      bool ok = a.modes.size() == 1;
      if (ok) {
        const auto& mode = a.modes.front();
        ok = is_zero(mode.duration) && mode.payment == 0.0;
        for (const auto& r : mode.renewable) ok = ok && is_zero(r);
        for (const auto& w : mode.nonrenewable) ok = ok && is_zero(w);
      }
      if (!ok) {
        add(ent, "dummy", "dummy activity needs exactly one mode with zero duration, payment and usage");
      }
    }
    for (const auto& pred : a.predecessors) {
      if (!ids.count(pred)) { add(ent, "predecessor reference", "unknown predecessor '" + pred + "'"); }
      if (pred == a.id) { add(ent, "cycle", "activity precedes itself"); }
    }
  }

  // Graph shape: acyclic with one source and one sink.
  const int n = static_cast<int>(p.activities.size());
  if (n > 0) {
    std::vector<std::vector<int>> preds(n), succs(n);
    for (int j = 0; j < n; ++j) {
      for (const auto& pred : p.activities[j].predecessors) {
        auto it = ids.find(pred);
        if (it == ids.end() || it->second == j) { continue; }
        preds[j].push_back(it->second);
        succs[it->second].push_back(j);
      }
    }
    if (static_cast<int>(kahn(preds, succs).size()) < n) {
      add("project", "cycle", "precedence graph contains a cycle");
    }
    int sources = 0, sinks = 0;
    for (int i = 0; i < n; ++i) {
      sources += preds[i].empty() ? 1 : 0;
      sinks += succs[i].empty() ? 1 : 0;
    }
    if (sources != 1) {
      add("project", "unique source", "expected exactly one source activity, found " + std::to_string(sources));
    }
    if (sinks != 1) {
      add("project", "unique sink", "expected exactly one sink activity, found " + std::to_string(sinks));
    }
  }

  // Period grid.
  const auto& b = p.periods.boundaries();
  if (p.horizon < 1) { add("project", "horizon", "horizon must be at least one day"); }
  if (b.empty()) {
    add("periods", "period coverage", "period grid is empty");
  } else {
    bool increasing = b.front() >= 1;
    for (std::size_t y = 1; y < b.size(); ++y) {
      increasing = increasing && b[y] > b[y - 1];
    }
    if (!increasing) { add("periods", "period order", "period boundaries must be positive and strictly increasing"); }
    if (b.back() != p.horizon) {
      add("periods", "period coverage",
          "last period boundary " + std::to_string(b.back()) + " differs from horizon " + std::to_string(p.horizon));
    }
  }

  // Pricing and finance.
  for (double c : p.pricing.renewable) {
    if (!(c >= 0.0)) { add("pricing", "non-negative price", "renewable price must be non-negative"); }
  }
  for (double c : p.pricing.nonrenewable) {
    if (!(c >= 0.0)) { add("pricing", "non-negative price", "non-renewable price must be non-negative"); }
  }
  if (!(p.pricing.daily_cap >= 0.0)) { add("pricing", "non-negative cap", "daily cost cap must be non-negative"); }

  const auto& f = p.finance;
  if (!(f.max_long_loan >= 0.0) || !(f.max_short_loan >= 0.0)) {
    add("finance", "non-negative cap", "loan caps must be non-negative");
  }
  if (!(f.r_excess >= 0.0) || !(f.r_delay >= 0.0) || !(f.r_long >= 0.0) || !(f.r_short >= 0.0)) {
    add("finance", "non-negative rate", "interest rates must be non-negative");
  }
  if (f.compounding_days < 1) { add("finance", "compounding days", "compounding_days must be at least 1"); }
  if (!std::isfinite(f.initial_capital) || !std::isfinite(f.min_cash)) {
    add("finance", "finite amounts", "initial capital and minimum cash must be finite");
  }
  return out;
}

ProjectGraph build_graph(const Project& p)
{
  const int n = static_cast<int>(p.activities.size());
  ProjectGraph g;
  g.predecessors.resize(n);
  g.successors.resize(n);
  for (int j = 0; j < n; ++j) {
    for (const auto& pred : p.activities[j].predecessors) {
      auto i = p.index_of(pred);
      if (!i) { throw ProjectError("activity " + p.activities[j].id + ": unknown predecessor '" + pred + "'"); }
      g.predecessors[j].push_back(*i);
      g.successors[*i].push_back(j);
    }
  }
  g.topological_order = kahn(g.predecessors, g.successors);
  if (static_cast<int>(g.topological_order.size()) < n) {
    throw ProjectError("precedence graph contains a cycle");
  }
  for (int i = 0; i < n; ++i) {
    if (g.predecessors[i].empty() && g.source < 0) { g.source = i; }
    if (g.successors[i].empty()) { g.sink = i; }
  }
  return g;
}

}  // namespace cashsched
