/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cashsched {

namespace {

std::string idx(int v) { return std::to_string(v); }

struct Namer {
  bool crisp;
  // Chain tag inserted after the family name in the two-chain model.
  std::string chain(const std::string& base, int c, const std::string& rest) const
  {
    if (crisp) { return base + rest; }
    return base + (c == kChainL ? "_L" : "_U") + rest;
  }
};

class Builder {
 public:
  Builder(const Project& p, const TimingTable& tt, const BuildOptions& opt)
      : p_(p), tt_(tt), opt_(opt), g_(build_graph(p)), tw_(time_windows(p, tt)), names_{tt.crisp}
  {
    n_ = static_cast<int>(p.activities.size());
    G_ = tt.grid_days;
    Y_ = p.periods.count();
    chains_ = tt.chains();
  }

  MilpModel build()
  {
    check_size();
    add_schedule_variables();
    add_precedence();
    add_completion_rows();
    add_resource_rows();
    add_finance();
    add_objectives();
    m_.check();
    return std::move(m_);
  }

 private:
  bool full() const { return opt_.form == ModelForm::full; }

  bool start_allowed(int i, int mi, int t) const
  {
    const auto& mt = tt_.at(i, mi);
    if (!mt.schedulable()) { return false; }
    if (t + mt.min_completion > G_) { return false; }
    if (t + mt.window[kChainL] - 1 > G_) { return false; }
    return true;
  }

  std::pair<int, int> start_range(int i, int mi) const
  {
    if (full()) { return {1, G_}; }
    return {tw_.earliest[i], tw_.latest[i][mi]};
  }

  bool fixed_completion(int i, int mi) const
  {
    const auto& mt = tt_.at(i, mi);
    return !full() && mt.min_completion == mt.max_completion;
  }

  void check_size() const
  {
    std::size_t count = 0;
    for (int i = 0; i < n_; ++i) {
      const auto& modes = p_.activities[i].modes;
      for (int mi = 0; mi < static_cast<int>(modes.size()); ++mi) {
        if (full()) {
          count += static_cast<std::size_t>(G_) * (2 + Y_);
        } else {
          auto [lo, hi] = start_range(i, mi);
          const std::size_t s = hi >= lo ? hi - lo + 1 : 0;
          count += fixed_completion(i, mi) ? s : 2 * s + tt_.at(i, mi).max_completion;
        }
      }
    }
    const std::size_t K = p_.renewable_count(), L = p_.nonrenewable_count();
    count += static_cast<std::size_t>(chains_) * G_ * (full() ? K + L + 1 : 0);
    count += static_cast<std::size_t>(Y_) * (4 + 2 * chains_) + 1;
    if (opt_.max_variables > 0 && count > opt_.max_variables) {
      throw ModelSizeError("model would need about " + std::to_string(count) + " variables (limit " +
                           std::to_string(opt_.max_variables) +
                           "); export the model in LP format and use an external solver");
    }
  }

  // X, XP (and XYP in full form). comp_[i][m] maps a completion day to the
  // terms of its 0/1 indicator.
  void add_schedule_variables()
  {
    x_.resize(n_);
    comp_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      const int M = static_cast<int>(p_.activities[i].modes.size());
      x_[i].resize(M);
      comp_[i].resize(M);
      for (int mi = 0; mi < M; ++mi) {
        auto [lo, hi] = start_range(i, mi);
        for (int t = lo; t <= hi; ++t) {
          const bool ok = start_allowed(i, mi, t);
          if (!full() && !ok) { continue; }
          const int v = m_.add_binary("X_" + idx(i + 1) + "_" + idx(mi + 1) + "_" + idx(t));
          if (!ok) { m_.variables()[v].upper = 0.0; }
          x_[i][mi][t] = v;
        }
      }
    }
    for (int i = 0; i < n_; ++i) {
      for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
        const auto& mt = tt_.at(i, mi);
        if (fixed_completion(i, mi)) {
          for (auto [t, v] : x_[i][mi]) {
            comp_[i][mi][t + mt.min_completion] = v;
          }
          continue;
        }
        int lo = 1, hi = G_;
        if (!full()) {
          if (x_[i][mi].empty()) { continue; }
          lo = x_[i][mi].begin()->first + mt.min_completion;
          hi = std::min(G_, x_[i][mi].rbegin()->first + mt.max_completion);
        }
        for (int t = lo; t <= hi; ++t) {
          comp_[i][mi][t] = m_.add_binary("XP_" + idx(i + 1) + "_" + idx(mi + 1) + "_" + idx(t));
        }
      }
    }
    if (full()) { add_period_assignment(); }
  }

  // Period assignment of completions over the full index sets.
  void add_period_assignment()
  {
    xyp_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      xyp_[i].resize(x_[i].size());
      for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
        for (auto [t, xp] : comp_[i][mi]) {
          std::vector<Term> assign;
          const std::string suffix = idx(i + 1) + "_" + idx(mi + 1);
          for (int y = 0; y < Y_; ++y) {
            const int v = m_.add_binary("XYP_" + suffix + "_" + idx(y + 1) + "_" + idx(t));
            xyp_[i][mi][{y, t}] = v;
            assign.push_back({v, 1.0});
            const std::string tag = suffix + "_" + idx(y + 1) + "_" + idx(t);
            const int a = p_.periods.first_day(y), b = p_.periods.last_day(y);
            m_.add_constraint("pfirst_" + tag, {{v, static_cast<double>(a)}, {xp, -static_cast<double>(t)}},
                              RowSense::le, 0.0);
            m_.add_constraint("plast_" + tag, {{v, static_cast<double>(t - b)}}, RowSense::le, 0.0);
          }
          assign.push_back({xp, -1.0});
          m_.add_constraint("pone_" + suffix + "_" + idx(t), std::move(assign), RowSense::eq, 0.0);
        }
      }
    }
  }

  void add_precedence()
  {
    for (int i = 0; i < n_; ++i) {
      std::vector<Term> one;
      for (const auto& xm : x_[i]) {
        for (auto [t, v] : xm) one.push_back({v, 1.0});
      }
      m_.add_constraint("start_" + idx(i + 1), std::move(one), RowSense::eq, 1.0);
    }
    const int copies = (tt_.crisp || !full()) ? 1 : 2;
    for (int j = 0; j < n_; ++j) {
      for (int i : g_.predecessors[j]) {
        for (int c = 0; c < copies; ++c) {
          std::vector<Term> row;
          for (const auto& xm : x_[j]) {
            for (auto [t, v] : xm) row.push_back({v, static_cast<double>(t)});
          }
          for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
            const auto& mt = tt_.at(i, mi);
            // The compact form uses the integer lag implied by both copies.
            const double lag = full() ? mt.lag[c] : mt.lag_days;
            for (auto [t, v] : x_[i][mi]) row.push_back({v, -(t + lag)});
          }
          std::string name = "prec_" + idx(i + 1) + "_" + idx(j + 1);
          if (copies == 2) { name += c == 0 ? "_L" : "_U"; }
          m_.add_constraint(std::move(name), std::move(row), RowSense::ge, 0.0);
        }
      }
    }
  }

  // Completion offsets: exact for the crisp model, a window per triangle copy otherwise.
  void add_completion_rows()
  {
    for (int i = 0; i < n_; ++i) {
      std::vector<Term> unique;
      for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
        for (auto [t, v] : comp_[i][mi]) unique.push_back({v, 1.0});
        if (fixed_completion(i, mi)) { continue; }
        const auto& mt = tt_.at(i, mi);
        const std::string tag = idx(i + 1) + "_" + idx(mi + 1);
        auto offset_row = [&](double offset) {
          std::vector<Term> row;
          for (auto [t, v] : comp_[i][mi]) row.push_back({v, static_cast<double>(t)});
          for (auto [t, v] : x_[i][mi]) row.push_back({v, -(t + offset)});
          return row;
        };
        if (tt_.crisp) {
          m_.add_constraint("comp_" + tag, offset_row(mt.min_completion), RowSense::eq, 0.0);
        } else if (full()) {
          for (int c = 0; c < 2; ++c) {
            const std::string ct = c == 0 ? "_L" : "_U";
            m_.add_constraint("cmin_" + tag + ct, offset_row(mt.completion_min[c]), RowSense::ge, 0.0);
            m_.add_constraint("cmax_" + tag + ct, offset_row(mt.completion_max[c]), RowSense::le, 0.0);
          }
        } else {
          m_.add_constraint("cmin_" + tag, offset_row(mt.min_completion), RowSense::ge, 0.0);
          m_.add_constraint("cmax_" + tag, offset_row(mt.max_completion), RowSense::le, 0.0);
          std::vector<Term> link;
          for (auto [t, v] : comp_[i][mi]) link.push_back({v, 1.0});
          for (auto [t, v] : x_[i][mi]) link.push_back({v, -1.0});
          m_.add_constraint("cmode_" + tag, std::move(link), RowSense::eq, 0.0);
        }
      }
      m_.add_constraint("onecomp_" + idx(i + 1), std::move(unique), RowSense::eq, 1.0);
    }
  }

  // Start variables whose occupancy window covers day t.
  template <typename F>
  void for_each_occupying(int i, int mi, int c, int t, F&& f) const
  {
    const int w = tt_.at(i, mi).window[c];
    if (w <= 0) { return; }
    const auto& xm = x_[i][mi];
    for (auto it = xm.lower_bound(std::max(1, t - w + 1)); it != xm.end() && it->first <= t; ++it) {
      f(it->second);
    }
  }

  void add_resource_rows()
  {
    tbu_.assign(chains_, std::vector<int>(Y_, -1));
    for (int c = 0; c < chains_; ++c) {
      for (int y = 0; y < Y_; ++y) {
        tbu_[c][y] = m_.add_continuous(names_.chain("TBU", c, "_" + idx(y + 1)));
      }
    }
    if (full()) {
      add_full_resource_rows();
    } else {
      add_compact_resource_rows();
    }
  }

  // Daily usage, daily cost and period cost rows per cost chain.
  void add_full_resource_rows()
  {
    const int K = p_.renewable_count(), L = p_.nonrenewable_count();
    for (int c = 0; c < chains_; ++c) {
      std::vector<std::vector<Term>> period_rows(Y_);
      for (int t = 1; t <= G_; ++t) {
        const std::string day = "_" + idx(t);
        std::vector<Term> cost_row;
        auto usage_rows = [&](const char* fam, const char* row_fam, int count, bool renewable,
                              const std::vector<double>& prices) {
          for (int k = 0; k < count; ++k) {
            const std::string tag = "_" + idx(k + 1) + day;
            const int var = m_.add_continuous(names_.chain(fam, c, tag));
            std::vector<Term> row;
            for (int i = 0; i < n_; ++i) {
              for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
                const auto& mt = tt_.at(i, mi);
                const double coef = renewable ? mt.renewable[c][k] : mt.nonrenewable[c][k];
                if (coef == 0.0) { continue; }
                for_each_occupying(i, mi, c, t, [&](int v) { row.push_back({v, coef}); });
              }
            }
            row.push_back({var, -1.0});
            m_.add_constraint(names_.chain(row_fam, c, tag), std::move(row), RowSense::le, 0.0);
            cost_row.push_back({var, prices[k]});
          }
        };
        usage_rows("BR", "ruse", K, true, p_.pricing.renewable);
        usage_rows("WR", "nuse", L, false, p_.pricing.nonrenewable);
        // The daily cap is carried as the upper bound of BU_t.
        const int bu = m_.add_continuous(names_.chain("BU", c, day), 0.0, p_.pricing.daily_cap);
        cost_row.push_back({bu, -1.0});
        m_.add_constraint(names_.chain("dcost", c, day), std::move(cost_row), RowSense::le, 0.0);
        if (auto y = p_.periods.period_of(t)) { period_rows[*y].push_back({bu, -1.0}); }
      }
      for (int y = 0; y < Y_; ++y) {
        auto row = std::move(period_rows[y]);
        row.push_back({tbu_[c][y], 1.0});
        m_.add_constraint(names_.chain("pcost", c, "_" + idx(y + 1)), std::move(row), RowSense::eq, 0.0);
      }
    }
  }

  void add_compact_resource_rows()
  {
    // Daily cap on chain L (chain U is never costlier day by day).
    std::vector<double> worst(G_ + 1, 0.0);
    for (int i = 0; i < n_; ++i) {
      double hi = 0.0;
      for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
        if (!x_[i][mi].empty()) { hi = std::max(hi, tt_.at(i, mi).daily_cost[kChainL]); }
      }
      for (int t = 1; t <= G_; ++t) worst[t] += hi;
    }
    for (int t = 1; t <= G_; ++t) {
      if (worst[t] <= p_.pricing.daily_cap) { continue; }
      std::vector<Term> row;
      for (int i = 0; i < n_; ++i) {
        for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
          const double cost = tt_.at(i, mi).daily_cost[kChainL];
          if (cost == 0.0) { continue; }
          for_each_occupying(i, mi, kChainL, t, [&](int v) { row.push_back({v, cost}); });
        }
      }
      if (!row.empty()) { m_.add_constraint("ccap_" + idx(t), std::move(row), RowSense::le, p_.pricing.daily_cap); }
    }
    // TBU_y = cost of the occupied days falling in period y.
    for (int c = 0; c < chains_; ++c) {
      std::vector<std::map<int, double>> coef(Y_);
      for (int i = 0; i < n_; ++i) {
        for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
          const auto& mt = tt_.at(i, mi);
          const double cost = mt.daily_cost[c];
          if (cost == 0.0 || mt.window[c] <= 0) { continue; }
          for (auto [s, v] : x_[i][mi]) {
            for (int t = s; t < s + mt.window[c] && t <= G_; ++t) {
              if (auto y = p_.periods.period_of(t)) { coef[*y][v] += cost; }
            }
          }
        }
      }
      for (int y = 0; y < Y_; ++y) {
        std::vector<Term> row{{tbu_[c][y], 1.0}};
        for (auto [v, a] : coef[y]) row.push_back({v, -a});
        m_.add_constraint(names_.chain("pcost", c, "_" + idx(y + 1)), std::move(row), RowSense::eq, 0.0);
      }
    }
  }

  // Dues, cash balances, loan caps and the final L/U ordering.
  void add_finance()
  {
    const auto& f = p_.finance;
    const double D = f.compounding_days;
    const double g_excess = std::pow(1.0 + f.r_excess, D);
    const double g_delay = std::pow(1.0 + f.r_delay, D);
    const double g_long = std::pow(1.0 + f.r_long, D);
    const double g_short = std::pow(1.0 + f.r_short, D);

    const int ltl = m_.add_continuous("LTL", 0.0, f.max_long_loan);
    std::vector<int> stl(Y_), pa(Y_), dp(Y_);
    for (int y = 0; y < Y_; ++y) {
      stl[y] = m_.add_continuous("STL_" + idx(y + 1), 0.0, f.max_short_loan);
      pa[y] = m_.add_continuous("PA_" + idx(y + 1));
      dp[y] = m_.add_continuous("DP_" + idx(y + 1));
    }
    for (int y = 0; y < Y_; ++y) {
      std::vector<Term> row{{pa[y], 1.0}, {dp[y], 1.0}};
      for (int i = 0; i < n_; ++i) {
        for (int mi = 0; mi < static_cast<int>(x_[i].size()); ++mi) {
          const double pay = p_.activities[i].modes[mi].payment;
          if (pay == 0.0) { continue; }
          if (full()) {
            for (const auto& [key, v] : xyp_[i][mi]) {
              if (key.first == y) row.push_back({v, -pay});
            }
          } else {
            for (auto [t, v] : comp_[i][mi]) {
              if (p_.periods.period_of(t) == y) row.push_back({v, -pay});
            }
          }
        }
      }
      m_.add_constraint("dues_" + idx(y + 1), std::move(row), RowSense::eq, 0.0);
    }
    cf_.assign(chains_, std::vector<int>(Y_, -1));
    for (int c = 0; c < chains_; ++c) {
      for (int y = 0; y < Y_; ++y) {
        cf_[c][y] = m_.add_continuous(names_.chain("CF", c, "_" + idx(y + 1)), f.min_cash, kInf);
      }
      for (int y = 0; y < Y_; ++y) {
        std::vector<Term> row{{cf_[c][y], 1.0}, {stl[y], -1.0}, {pa[y], -1.0}, {tbu_[c][y], 1.0}};
        double rhs = 0.0;
        if (y == 0) {
          row.push_back({ltl, -1.0});
          rhs = f.initial_capital;
        } else {
          row.push_back({cf_[c][y - 1], -g_excess});
          row.push_back({dp[y - 1], -g_delay});
          row.push_back({ltl, 1.0 / g_long});
          row.push_back({stl[y - 1], 1.0 / g_short});
        }
        m_.add_constraint(names_.chain("cash", c, "_" + idx(y + 1)), std::move(row),
                          RowSense::eq, rhs);
      }
    }
    if (chains_ == 2 && Y_ > 0) {
      m_.add_constraint("cforder", {{cf_[kChainU][Y_ - 1], 1.0}, {cf_[kChainL][Y_ - 1], -1.0}}, RowSense::ge, 0.0);
    }
  }

  void add_objectives()
  {
    std::vector<Term> z1;
    const int sink = g_.sink;
    for (int mi = 0; mi < static_cast<int>(comp_[sink].size()); ++mi) {
      for (auto [t, v] : comp_[sink][mi]) z1.push_back({v, static_cast<double>(t)});
    }
    m_.add_objective("Z1", ObjSense::minimize, std::move(z1));
    if (Y_ == 0) { return; }
    if (chains_ == 1) {
      m_.add_objective("Z2", ObjSense::maximize, {{cf_[0][Y_ - 1], 1.0}});
    } else {
      m_.add_objective("Z2L", ObjSense::maximize, {{cf_[kChainL][Y_ - 1], 1.0}});
      m_.add_objective("Z2U", ObjSense::maximize, {{cf_[kChainU][Y_ - 1], 1.0}});
    }
  }

  const Project& p_;
  const TimingTable& tt_;
  BuildOptions opt_;
  ProjectGraph g_;
  TimeWindows tw_;
  Namer names_;
  int n_ = 0, G_ = 0, Y_ = 0, chains_ = 1;
  MilpModel m_;
  std::vector<std::vector<std::map<int, int>>> x_;     // [i][m] start day -> var
  std::vector<std::vector<std::map<int, int>>> comp_;  // [i][m] completion day -> var
  std::vector<std::vector<std::map<std::pair<int, int>, int>>> xyp_;
  std::vector<std::vector<int>> tbu_, cf_;
};

}  // namespace

TimeWindows time_windows(const Project& p, const TimingTable& tt)
{
  const ProjectGraph g = build_graph(p);
  const int n = static_cast<int>(p.activities.size());
  const int G = tt.grid_days;
  TimeWindows tw;
  tw.earliest.assign(n, 1);
  for (int j : g.topological_order) {
    for (int i : g.predecessors[j]) {
      int lag = -1;
      for (const auto& mt : tt.modes[i]) {
        if (mt.schedulable()) lag = lag < 0 ? mt.lag_days : std::min(lag, mt.lag_days);
      }
      tw.earliest[j] = std::max(tw.earliest[j], tw.earliest[i] + std::max(lag, 0));
    }
  }
  tw.latest.resize(n);
  std::vector<int> latest_any(n, 0);
  for (auto it = g.topological_order.rbegin(); it != g.topological_order.rend(); ++it) {
    const int i = *it;
    const int M = static_cast<int>(tt.modes[i].size());
    tw.latest[i].assign(M, 0);
    for (int mi = 0; mi < M; ++mi) {
      const auto& mt = tt.modes[i][mi];
      if (!mt.schedulable()) { continue; }
      int ls = std::min(G - mt.min_completion, G - std::max(mt.window[kChainL], 1) + 1);
      for (int j : g.successors[i]) {
        ls = std::min(ls, latest_any[j] - mt.lag_days);
      }
      tw.latest[i][mi] = ls;
      if (ls >= tw.earliest[i]) latest_any[i] = std::max(latest_any[i], ls);
    }
  }
  return tw;
}

int grid_days(const Project& p, double alpha, const BuildOptions& opt)
{
  if (!opt.trim_grid) { return p.horizon; }
  return std::min(p.horizon, horizon_bound(p, alpha) + 1);
}

MilpModel build_model(const Project& p, const TimingTable& tt, const BuildOptions& opt)
{
  return Builder(p, tt, opt).build();
}

MilpModel build_crisp_model(const Project& p, const BuildOptions& opt)
{
  return build_model(p, make_crisp_timing(p, grid_days(p, 0.0, opt)), opt);
}

MilpModel build_ivf_model(const Project& p, double alpha, const BuildOptions& opt)
{
  return build_model(p, make_timing(p, alpha, grid_days(p, alpha, opt)), opt);
}

}  // namespace cashsched
