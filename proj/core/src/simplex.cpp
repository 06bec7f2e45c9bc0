/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace cashsched {

const char* to_string(LpStatus s)
{
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

constexpr int kDegenerateRunBeforeBland = 50;
constexpr int kRefactorEvery = 100;
constexpr double kHarrisSlack = 1e-9;

enum class RunResult { optimal, unbounded, iteration_limit, singular };

// Bounded-variable tableau. Every column j has bounds [0, cap[j]]; nonbasic
// columns sit at 0 or at cap (at_upper). beta holds basic values.
class Tableau {
 public:
  Tableau(int rows, int cols) : m(rows), w(cols), t(static_cast<std::size_t>(rows) * cols, 0.0),
                                beta(rows, 0.0), cap(cols, kInf), basis(rows, -1),
                                at_upper(cols, 0), is_basic(cols, 0), d(cols, 0.0), excluded(cols, 0) {}

  double& at(int i, int j) { return t[static_cast<std::size_t>(i) * w + j]; }
  double at(int i, int j) const { return t[static_cast<std::size_t>(i) * w + j]; }

  // Recomputes the tableau and basic values from the original columns to
  // shed accumulated rounding. False when the basis is singular.
  bool reinvert(bool full = true)
  {
    const int cols = full ? w + 1 : 1;
    const int rhs_col = cols - 1;
    std::vector<double> bm(static_cast<std::size_t>(m) * m);
    std::vector<double> r(static_cast<std::size_t>(m) * cols);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) bm[static_cast<std::size_t>(i) * m + k] = orig[static_cast<std::size_t>(i) * w + basis[k]];
      double rhs = b[i];
      for (int j = 0; j < w; ++j) {
        const double a = orig[static_cast<std::size_t>(i) * w + j];
        if (full) r[static_cast<std::size_t>(i) * cols + j] = a;
        if (a != 0.0 && !is_basic[j] && at_upper[j]) rhs -= a * cap[j];
      }
      r[static_cast<std::size_t>(i) * cols + rhs_col] = rhs;
    }
    // Gauss-Jordan with partial pivoting; column k of B maps to basis row k.
    for (int k = 0; k < m; ++k) {
      int piv = k;
      for (int i = k + 1; i < m; ++i) {
        if (std::abs(bm[static_cast<std::size_t>(i) * m + k]) > std::abs(bm[static_cast<std::size_t>(piv) * m + k])) piv = i;
      }
      const double pv = bm[static_cast<std::size_t>(piv) * m + k];
      if (std::abs(pv) < 1e-12) return false;
      if (piv != k) {
        std::swap_ranges(bm.begin() + static_cast<std::ptrdiff_t>(piv) * m, bm.begin() + static_cast<std::ptrdiff_t>(piv + 1) * m,
                         bm.begin() + static_cast<std::ptrdiff_t>(k) * m);
        std::swap_ranges(r.begin() + static_cast<std::ptrdiff_t>(piv) * cols, r.begin() + static_cast<std::ptrdiff_t>(piv + 1) * cols,
                         r.begin() + static_cast<std::ptrdiff_t>(k) * cols);
      }
      double* bk = &bm[static_cast<std::size_t>(k) * m];
      double* rk = &r[static_cast<std::size_t>(k) * cols];
      const double inv = 1.0 / pv;
      for (int c = 0; c < m; ++c) bk[c] *= inv;
      for (int c = 0; c < cols; ++c) rk[c] *= inv;
      for (int i = 0; i < m; ++i) {
        if (i == k) continue;
        double* bi = &bm[static_cast<std::size_t>(i) * m];
        const double f = bi[k];
        if (f == 0.0) continue;
        for (int c = k; c < m; ++c) bi[c] -= f * bk[c];
        double* ri = &r[static_cast<std::size_t>(i) * cols];
        for (int c = 0; c < cols; ++c) {
          if (rk[c] != 0.0) ri[c] -= f * rk[c];
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      const double* ri = &r[static_cast<std::size_t>(i) * cols];
      beta[i] = ri[rhs_col];
      if (!full) continue;
      std::copy(ri, ri + w, t.begin() + static_cast<std::ptrdiff_t>(i) * w);
      for (int k = 0; k < m; ++k) at(i, basis[k]) = i == k ? 1.0 : 0.0;
    }
    if (full && cost) price(*cost);
    return true;
  }

  // Reduced costs for maximizing `c` with the current basis.
  void price(const std::vector<double>& c)
  {
    for (int j = 0; j < w; ++j) d[j] = c[j];
    for (int i = 0; i < m; ++i) {
      const double cb = c[basis[i]];
      if (cb == 0.0) continue;
      const double* row = &t[static_cast<std::size_t>(i) * w];
      for (int j = 0; j < w; ++j) d[j] -= cb * row[j];
    }
    for (int i = 0; i < m; ++i) d[basis[i]] = 0.0;
  }

  RunResult run(int max_iter, int& iterations)
  {
    int degenerate_run = 0;
    int since_refactor = 0;
    std::vector<int> nz;
    nz.reserve(w);
    for (; iterations < max_iter; ++iterations) {
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < w; ++j) {
        if (is_basic[j] || excluded[j] || cap[j] <= 0.0) continue;
        const double dj = d[j];
        const bool eligible = at_upper[j] ? dj < -tol::reduced_cost : dj > tol::reduced_cost;
        if (!eligible) continue;
        if (bland) {
          q = j;
          break;
        }
        if (std::abs(dj) > best) {
          best = std::abs(dj);
          q = j;
        }
      }
      if (q < 0) return RunResult::optimal;
      if (since_refactor >= kRefactorEvery) {
        if (!reinvert()) return RunResult::singular;
        since_refactor = 0;
        continue;
      }

      const double dir = at_upper[q] ? -1.0 : 1.0;
      // Harris two-pass ratio test: bound the step with a feasibility
      // allowance, then take the largest pivot among rows within it.
      double relaxed = kInf;
      for (int i = 0; i < m; ++i) {
        const double a = at(i, q);
        if (std::abs(a) <= tol::pivot) continue;
        const double rate = -dir * a;
        const int b = basis[i];
        if (rate < 0.0) {
          relaxed = std::min(relaxed, (std::max(beta[i], 0.0) + kHarrisSlack) / -rate);
        } else if (cap[b] < kInf) {
          relaxed = std::min(relaxed, (std::max(cap[b] - beta[i], 0.0) + kHarrisSlack) / rate);
        }
      }
      double theta = kInf;
      int r = -1;
      double r_piv = 0.0;
      bool r_to_upper = false;
      if (relaxed < kInf) {
        for (int i = 0; i < m; ++i) {
          const double a = at(i, q);
          if (std::abs(a) <= tol::pivot) continue;
          const double rate = -dir * a;
          const int b = basis[i];
          double limit;
          bool to_upper;
          if (rate < 0.0) {
            limit = std::max(beta[i], 0.0) / -rate;
            to_upper = false;
          } else {
            if (cap[b] == kInf) continue;
            limit = std::max(cap[b] - beta[i], 0.0) / rate;
            to_upper = true;
          }
          if (limit > relaxed) continue;
          bool take = r < 0;
          if (!take) {
            take = bland ? b < basis[r] : std::abs(a) > std::abs(r_piv);
          }
          if (take) {
            theta = limit;
            r = i;
            r_piv = a;
            r_to_upper = to_upper;
          }
        }
      }
      // bound flip when the entering column reaches its cap first
      if (cap[q] < kInf && cap[q] <= theta) {
        r = -1;
        theta = cap[q];
      }
      if (theta == kInf) return RunResult::unbounded;
      degenerate_run = theta < 1e-12 ? degenerate_run + 1 : 0;

      // basic values move with the entering variable
      if (theta > 0.0) {
        for (int i = 0; i < m; ++i) {
          const double a = at(i, q);
          if (a != 0.0) beta[i] -= dir * a * theta;
        }
      }
      if (r < 0) {
        // bound flip, no basis change
        at_upper[q] = at_upper[q] ? 0 : 1;
        continue;
      }

      ++since_refactor;
      const double entering_value = at_upper[q] ? cap[q] - theta : theta;
      const int leaving = basis[r];
      is_basic[leaving] = 0;
      at_upper[leaving] = r_to_upper ? 1 : 0;
      basis[r] = q;
      is_basic[q] = 1;
      at_upper[q] = 0;
      beta[r] = entering_value;

      double* prow = &t[static_cast<std::size_t>(r) * w];
      const double inv = 1.0 / prow[q];
      nz.clear();
      for (int j = 0; j < w; ++j) {
        if (prow[j] != 0.0) {
          prow[j] *= inv;
          nz.push_back(j);
        }
      }
      prow[q] = 1.0;
      for (int i = 0; i < m; ++i) {
        if (i == r) continue;
        double* row = &t[static_cast<std::size_t>(i) * w];
        const double f = row[q];
        if (f == 0.0) continue;
        for (int j : nz) row[j] -= f * prow[j];
        row[q] = 0.0;
      }
      const double fd = d[q];
      if (fd != 0.0) {
        for (int j : nz) d[j] -= fd * prow[j];
        d[q] = 0.0;
      }
    }
    return RunResult::iteration_limit;
  }

  int m;
  int w;
  std::vector<double> t;
  std::vector<double> beta;
  std::vector<double> cap;
  std::vector<int> basis;
  std::vector<char> at_upper;
  std::vector<char> is_basic;
  std::vector<double> d;
  std::vector<char> excluded;
  // Original augmented columns and right-hand side, for reinversion.
  std::vector<double> orig;
  std::vector<double> b;
  const std::vector<double>* cost = nullptr;
};

}  // namespace

DenseLp::DenseLp(const MilpModel& model, int objective)
{
  model.check();
  m_ = static_cast<int>(model.constraints().size());
  n_ = static_cast<int>(model.variables().size());
  a_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
  sense_.resize(m_);
  rhs_.resize(m_);
  row_scale_.assign(m_, 1.0);
  for (int i = 0; i < m_; ++i) {
    const auto& row = model.constraints()[i];
    for (const auto& term : row.terms) {
      a_[static_cast<std::size_t>(i) * n_ + term.var] += term.coef;
    }
    sense_[i] = row.sense;
    rhs_[i] = row.rhs;
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s = std::max(s, std::abs(a_[static_cast<std::size_t>(i) * n_ + j]));
    row_scale_[i] = std::max(1.0, s);
  }
  cost_.assign(n_, 0.0);
  if (objective >= 0 && objective < static_cast<int>(model.objectives().size())) {
    const auto& obj = model.objectives()[objective];
    maximize_ = obj.sense == ObjSense::maximize;
    const double sign = maximize_ ? 1.0 : -1.0;
    for (const auto& term : obj.terms) cost_[term.var] += sign * term.coef;
    constant_ = obj.constant;
  }
  lower_.resize(n_);
  upper_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    const auto& v = model.variables()[j];
    lower_[j] = v.lower;
    upper_[j] = v.kind == VarKind::binary ? std::min(v.upper, 1.0) : v.upper;
    if (v.kind == VarKind::binary) lower_[j] = std::max(v.lower, 0.0);
  }
}

LpSolution DenseLp::solve(std::span<const double> lower, std::span<const double> upper) const
{
  return solve(lower, upper, rhs_);
}

LpSolution DenseLp::solve(std::span<const double> lower, std::span<const double> upper,
                          std::span<const double> rhs) const
{
  LpSolution sol;
  for (int j = 0; j < n_; ++j) {
    if (upper[j] < lower[j] - tol::feasibility) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
  }

  // Row i: sum_j a_ij (lower_j + y_j) + slack = rhs_i, slack sign by sense.
  std::vector<double> r(m_);
  std::vector<int> slack_col(m_, -1);
  int slacks = 0;
  for (int i = 0; i < m_; ++i) {
    double s = rhs[i];
    const double* row = &a_[static_cast<std::size_t>(i) * n_];
    for (int j = 0; j < n_; ++j) {
      if (row[j] != 0.0) s -= row[j] * lower[j];
    }
    r[i] = s;
    if (sense_[i] != RowSense::eq) slack_col[i] = n_ + slacks++;
  }
  std::vector<char> negate(m_, 0), needs_art(m_, 0);
  int arts = 0;
  for (int i = 0; i < m_; ++i) {
    if (sense_[i] == RowSense::le && r[i] >= 0.0) continue;
    if (sense_[i] == RowSense::ge && r[i] <= 0.0) {
      negate[i] = 1;
      continue;
    }
    negate[i] = r[i] < 0.0 ? 1 : 0;
    needs_art[i] = 1;
    ++arts;
  }

  const int w = n_ + slacks + arts;
  Tableau tab(m_, w);
  for (int j = 0; j < n_; ++j) tab.cap[j] = std::max(0.0, upper[j] - lower[j]);
  int art = n_ + slacks;
  std::vector<double> phase1(w, 0.0);
  for (int i = 0; i < m_; ++i) {
    const double sign = negate[i] ? -1.0 : 1.0;
    const double* row = &a_[static_cast<std::size_t>(i) * n_];
    for (int j = 0; j < n_; ++j) {
      if (row[j] != 0.0) tab.at(i, j) = sign * row[j];
    }
    if (slack_col[i] >= 0) {
      tab.at(i, slack_col[i]) = sign * (sense_[i] == RowSense::le ? 1.0 : -1.0);
    }
    tab.beta[i] = sign * r[i];
    if (needs_art[i]) {
      tab.at(i, art) = 1.0;
      tab.basis[i] = art;
      phase1[art] = -1.0;
      ++art;
    } else {
      tab.basis[i] = slack_col[i];
    }
    tab.is_basic[tab.basis[i]] = 1;
  }

  tab.orig = tab.t;
  tab.b = tab.beta;
  const int max_iter = 50 * (m_ + w) + 1000;
  if (arts > 0) {
    tab.cost = &phase1;
    tab.price(phase1);
    auto res = tab.run(max_iter, sol.iterations);
    if (res != RunResult::optimal) {
      sol.status = LpStatus::numerical_failure;
      return sol;
    }
    if (!tab.reinvert(false)) {
      sol.status = LpStatus::numerical_failure;
      return sol;
    }
    for (int i = 0; i < m_; ++i) {
      if (tab.basis[i] < n_ + slacks) continue;
      const double scale = std::max({1.0, std::abs(r[i]), row_scale_[i]});
      if (tab.beta[i] > tol::feasibility * scale) {
        sol.status = LpStatus::infeasible;
        return sol;
      }
    }
    for (int j = n_ + slacks; j < w; ++j) {
      tab.cap[j] = 0.0;
      tab.excluded[j] = 1;
    }
  }

  std::vector<double> c(w, 0.0);
  for (int j = 0; j < n_; ++j) c[j] = cost_[j];
  tab.cost = &c;
  tab.price(c);
  auto res = tab.run(max_iter, sol.iterations);
  if (res == RunResult::unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }
  if (res != RunResult::optimal) {
    sol.status = LpStatus::numerical_failure;
    return sol;
  }

  if (!tab.reinvert(false)) {
    sol.status = LpStatus::numerical_failure;
    return sol;
  }
  std::vector<double> y(w, 0.0);
  for (int j = 0; j < w; ++j) {
    if (!tab.is_basic[j] && tab.at_upper[j]) y[j] = tab.cap[j];
  }
  for (int i = 0; i < m_; ++i) y[tab.basis[i]] = tab.beta[i];
  sol.values.resize(n_);
  double obj = 0.0;
  for (int j = 0; j < n_; ++j) {
    double x = lower[j] + y[j];
    if (x < lower[j]) x = lower[j];
    if (x > upper[j]) x = upper[j];
    sol.values[j] = x;
    obj += cost_[j] * x;
  }
  sol.objective = (maximize_ ? obj : -obj) + constant_;

  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double* row = &a_[static_cast<std::size_t>(i) * n_];
    double act = 0.0;
    double magnitude = std::max(row_scale_[i], std::abs(rhs[i]));
    for (int j = 0; j < n_; ++j) {
      if (row[j] == 0.0) continue;
      const double term = row[j] * sol.values[j];
      act += term;
      magnitude = std::max(magnitude, std::abs(term));
    }
    double viol = 0.0;
    switch (sense_[i]) {
      case RowSense::le: viol = act - rhs[i]; break;
      case RowSense::ge: viol = rhs[i] - act; break;
      case RowSense::eq: viol = std::abs(act - rhs[i]); break;
    }
    worst = std::max(worst, viol / magnitude);
  }
  sol.max_residual = worst;
  sol.status = worst <= tol::feasibility ? LpStatus::optimal : LpStatus::numerical_failure;
  return sol;
}

LpSolution solve_lp(const MilpModel& model, int objective)
{
  return DenseLp(model, objective).solve();
}

}  // namespace cashsched
