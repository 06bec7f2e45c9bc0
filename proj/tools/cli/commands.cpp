/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "cashsched/instance_io.hpp"
#include "cashsched/lp_export.hpp"
#include "cashsched/psplib.hpp"
#include "cashsched/report.hpp"

namespace cashsched::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string shortest(double v)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Ten significant digits hide grid and simplex round-off in reports.
std::string brief(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

std::string load_text(const std::string& path)
{
  try {
    return read_file(path);
  } catch (const std::exception& e) {
    throw CommandError(kIoError, e.what());
  }
}

std::string located(const std::string& path, const ParseError& e)
{
  return path + ": " + e.what();
}

Project load_project(const std::string& path)
{
  if (path.empty()) throw CommandError(kBadArguments, "--instance is required");
  const std::string text = load_text(path);
  InstanceDocument doc;
  try {
    doc = parse_instance(text);
  } catch (const ParseError& e) {
    throw CommandError(kIoError, located(path, e));
  }
  if (!doc.diagnostics.empty()) {
    std::string msg = path + ": instance fails validation";
    for (const auto& d : doc.diagnostics) msg += "\n  " + d.entity + " [" + d.rule + "]: " + d.message;
    throw CommandError(kIoError, msg);
  }
  return std::move(doc.project);
}

template <class F>
auto parse_file(const std::string& path, F&& parse)
{
  const std::string text = load_text(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw CommandError(kIoError, located(path, e));
  }
}

/// Outputs are staged and written only once the command has succeeded.
class Artifacts {
 public:
  void add(const std::string& path, std::string content)
  {
    if (!path.empty()) files_.emplace_back(path, std::move(content));
  }
  void commit(std::ostream& out) const
  {
    for (const auto& [path, content] : files_) {
      try {
        write_file_atomic(path, content);
      } catch (const std::exception& e) {
        throw CommandError(kIoError, e.what());
      }
      out << "wrote " << path << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

RunOptions run_options(const SolveArgs& a, const Project& p)
{
  RunOptions opt;
  opt.alpha = a.alpha;
  const auto m = parse_method(a.method);
  if (!m) throw CommandError(kBadArguments, "unknown method \"" + a.method + "\"");
  opt.method = *m;
  opt.gamma = a.gamma;
  opt.theta = a.theta;
  opt.weights = a.weights;
  opt.limits = SolveLimits{a.max_nodes, a.time_limit, a.gap};
  std::string form = a.form.empty() ? (a.backend == "export" ? "full" : "compact") : a.form;
  if (form == "full") opt.form = ModelForm::full;
  else if (form == "compact") opt.form = ModelForm::compact;
  else throw CommandError(kBadArguments, "unknown model form \"" + form + "\"");
  try {
    check_run_options(p, opt);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kBadArguments, e.what());
  }
  return opt;
}

std::string ledger_csv(const Ledger& l)
{
  std::ostringstream os;
  write_ledger_csv(l, os);
  return os.str();
}

std::string gantt_svg(const Schedule& s, const Project& p)
{
  std::ostringstream os;
  render_gantt_svg(s, p, os);
  return os.str();
}

Json decisions_json(const FinancingDecisions& d)
{
  return Json{{"ltl", d.ltl}, {"stl", d.stl}, {"pa", d.pa}, {"dp", d.dp}};
}

Json ledger_json(const Ledger& l)
{
  Json cf = Json::array();
  for (const auto& per : l.periods) cf.push_back(per.cf);
  Json issues = Json::array();
  for (const auto& i : l.issues) issues.push_back(Json{{"period", i.period}, {"rule", i.rule}, {"message", i.message}});
  return Json{{"cash_flow", cf}, {"final_cash_flow", l.final_cash()}, {"issues", issues}};
}

const char* sense_word(ObjSense s)
{
  return s == ObjSense::minimize ? "min" : "max";
}

std::string summary_json(const RunResult& r, const RunOptions& opt, const Project& p)
{
  Json j;
  j["status"] = to_string(r.status);
  j["model"] = r.crisp ? "crisp" : "ivf";
  if (!r.crisp) j["alpha"] = r.alpha;
  j["method"] = to_string(opt.method);
  if (opt.method == Method::th) j["gamma"] = opt.gamma;
  Json objs = Json::array();
  for (std::size_t i = 0; i < r.objective_values.size(); ++i) {
    Json o{{"label", r.labels[i]}, {"sense", sense_word(r.senses[i])}, {"value", r.objective_values[i]}};
    if (!r.memberships.empty()) o["membership"] = r.memberships[i];
    if (r.payoffs) {
      o["pis"] = r.payoffs->entries[i].pis;
      o["nis"] = r.payoffs->entries[i].nis;
    }
    objs.push_back(std::move(o));
  }
  j["objectives"] = std::move(objs);
  if (r.lambda0) j["lambda0"] = *r.lambda0;
  j["scalar"] = r.scalar;
  j["bound"] = r.bound;
  j["gap"] = r.gap;
  j["nodes"] = r.nodes;
  j["seconds"] = r.seconds;
  j["makespan"] = r.schedule.makespan();
  Json acts = Json::array();
  for (std::size_t i = 0; i < r.schedule.items.size(); ++i) {
    const auto& s = r.schedule.items[i];
    acts.push_back(Json{{"id", p.activities[i].id}, {"mode", s.mode + 1}, {"start", s.start}, {"completion", s.completion}});
  }
  j["schedule"] = std::move(acts);
  j["decisions"] = decisions_json(r.decisions);
  j["ledger"] = ledger_json(r.ledger);
  return j.dump(2) + "\n";
}

void print_summary(std::ostream& out, const RunResult& r, const RunOptions& opt)
{
  out << "status: " << to_string(r.status) << '\n';
  out << "model: " << (r.crisp ? "crisp" : "ivf alpha=" + shortest(r.alpha)) << ", method " << to_string(opt.method)
      << '\n';
  for (std::size_t i = 0; i < r.objective_values.size(); ++i) {
    out << r.labels[i] << " (" << sense_word(r.senses[i]) << "): " << format_money(r.objective_values[i]);
    if (!r.memberships.empty()) out << "  membership " << brief(r.memberships[i]);
    out << '\n';
  }
  if (r.lambda0) out << "lambda0: " << brief(*r.lambda0) << '\n';
  out << "makespan: " << r.schedule.makespan() << '\n';
  out << "final cash flow: " << format_money(r.ledger.final_cash()) << '\n';
  out << "nodes: " << r.nodes << ", gap: " << shortest(r.gap) << ", time: " << shortest(std::round(r.seconds * 1e3) / 1e3)
      << " s\n";
}

int status_exit(SolveStatus s)
{
  switch (s) {
    case SolveStatus::optimal:
    case SolveStatus::feasible_limit: return kOk;
    case SolveStatus::infeasible: return kInfeasible;
    case SolveStatus::limit_no_incumbent: return kNoIncumbent;
    case SolveStatus::unbounded:
    case SolveStatus::numerical_failure: return kInternal;
  }
  return kInternal;
}

std::string export_text(const MilpModel& m, int objective)
{
  std::ostringstream os;
  export_lp(m, os, objective);
  return os.str();
}


Schedule checked_schedule(const std::string& path, const Project& p, const TimingTable& tt)
{
  Schedule s = parse_file(path, [&](const std::string& t) { return parse_schedule(t, p); });
  const auto problems = check_schedule(s, p, tt);
  if (!problems.empty()) {
    std::string msg = path + ": schedule is infeasible";
    for (const auto& m : problems) msg += "\n  " + m;
    throw CommandError(kInfeasible, msg);
  }
  return s;
}

}  // namespace

unsigned thread_limit()
{
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CASHSCHED_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec == std::errc{} && r.ptr == s.data() + s.size() && v > 0) n = v;
  }
  return n;
}

int cmd_solve(const SolveArgs& a, std::ostream& out)
{
  const Project p = load_project(a.instance);
  const RunOptions opt = run_options(a, p);
  if (a.backend == "export") {
    if (a.out.empty()) throw CommandError(kBadArguments, "--backend export needs --out");
    const BaseModel base = build_base(p, opt);
    MilpModel model;
    try {
      // Payoffs come from the compact form; both forms have the same optima.
      std::optional<BaseModel> compact;
      if (opt.form != ModelForm::compact && opt.method != Method::single_makespan &&
          opt.method != Method::single_profit) {
        RunOptions c = opt;
        c.form = ModelForm::compact;
        compact = build_base(p, c);
      }
      const ScalarObjective obj = make_scalar_objective(compact ? compact->model : base.model, opt);
      model = apply_objective(base.model, obj);
    } catch (const PayoffError& e) {
      throw CommandError(kInfeasible, std::string("payoff table: ") + e.what());
    }
    Artifacts files;
    files.add(a.out, export_text(model, 0));
    files.commit(out);
    return kOk;
  }
  if (a.backend != "embedded") throw CommandError(kBadArguments, "unknown backend \"" + a.backend + "\"");
  if (!a.out.empty()) throw CommandError(kBadArguments, "--out applies to the export backend");

  const RunResult r = run_solve(p, opt);
  if (!r.has_solution()) {
    out << "status: " << to_string(r.status) << '\n';
    throw CommandError(static_cast<Exit>(status_exit(r.status)), r.message);
  }
  print_summary(out, r, opt);
  Artifacts files;
  files.add(a.summary, summary_json(r, opt, p));
  files.add(a.ledger, ledger_csv(r.ledger));
  files.add(a.gantt, gantt_svg(r.schedule, p));
  files.add(a.schedule_out, write_schedule(r.schedule, p));
  files.add(a.decisions_out, write_decisions(r.decisions));
  files.commit(out);
  return kOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out)
{
  Ledger ledger;
  Json summary;
  if (!a.replay.empty()) {
    if (!a.instance.empty() || !a.schedule.empty() || !a.decisions.empty()) {
      throw CommandError(kBadArguments, "--replay excludes --instance, --schedule and --decisions");
    }
    const LedgerReplay rep = parse_file(a.replay, [](const std::string& t) { return parse_replay(t); });
    try {
      ledger = evaluate_ledger(rep.finance, rep.tbu, rep.due, rep.decisions);
    } catch (const std::invalid_argument& e) {
      throw CommandError(kIoError, a.replay + ": " + e.what());
    }
    summary["source"] = "replay";
    summary["decisions"] = decisions_json(rep.decisions);
  } else {
    if (a.schedule.empty()) throw CommandError(kBadArguments, "evaluate needs --schedule with --instance, or --replay");
    const Project p = load_project(a.instance);
    RunOptions opt;
    opt.alpha = a.alpha;
    const TimingTable tt = run_timing(p, opt);
    const Schedule s = checked_schedule(a.schedule, p, tt);
    std::optional<FinancingDecisions> d;
    if (!a.decisions.empty()) d = parse_file(a.decisions, [](const std::string& t) { return parse_decisions(t); });
    EvaluateResult ev;
    try {
      ev = evaluate_schedule(p, tt, s, d);
    } catch (const FinancingInfeasible& e) {
      throw CommandError(kInfeasible, e.what());
    } catch (const std::invalid_argument& e) {
      throw CommandError(kIoError, e.what());
    }
    ledger = ev.ledger;
    summary["source"] = ev.optimized ? "optimized" : "replay";
    summary["makespan"] = s.makespan();
    summary["decisions"] = decisions_json(ev.decisions);
  }
  summary["ledger"] = ledger_json(ledger);
  for (std::size_t y = 0; y < ledger.periods.size(); ++y) {
    out << "period " << y + 1 << " cash flow: " << format_money(ledger.periods[y].cf) << '\n';
  }
  out << "final cash flow: " << format_money(ledger.final_cash()) << '\n';
  if (!ledger.ok()) {
    std::string msg = "ledger violates its constraints";
    for (const auto& i : ledger.issues) msg += "\n  period " + std::to_string(i.period) + " [" + i.rule + "]: " + i.message;
    throw CommandError(kInfeasible, msg);
  }
  Artifacts files;
  files.add(a.ledger, ledger_csv(ledger));
  files.add(a.summary, summary.dump(2) + "\n");
  files.commit(out);
  return kOk;
}

namespace {

struct SweepRow {
  double value = 0.0;
  std::string status;
  bool ok = false;
  int makespan = 0;
  double final_cf = 0.0;
  std::optional<double> lambda0;
  std::vector<double> memberships;
};

const char* trend(const std::vector<double>& v)
{
  if (v.size() < 2) return "too few points";
  bool up = false, down = false, flat = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double tol = 1e-9 * std::max({1.0, std::abs(v[i]), std::abs(v[i - 1])});
    if (v[i] > v[i - 1] + tol) up = true;
    else if (v[i] < v[i - 1] - tol) down = true;
    else flat = true;
  }
  if (up && down) return "not monotone";
  if (up) return flat ? "non-decreasing" : "strictly increasing";
  if (down) return flat ? "non-increasing" : "strictly decreasing";
  return "constant";
}

void set_rate(FinanceParams& f, const std::string& param, double v)
{
  if (param == "r_excess") f.r_excess = v;
  else if (param == "r_delay") f.r_delay = v;
  else if (param == "r_long") f.r_long = v;
  else if (param == "r_short") f.r_short = v;
}

}  // namespace

int cmd_sweep(const SweepArgs& a, std::ostream& out)
{
  static const std::vector<std::string> params{"r_excess", "r_delay", "r_long", "r_short", "alpha"};
  if (std::find(params.begin(), params.end(), a.param) == params.end()) {
    throw CommandError(kBadArguments, "unknown sweep parameter \"" + a.param + "\"");
  }
  if (a.steps < 1) throw CommandError(kBadArguments, "empty grid: --steps must be at least 1");
  const bool is_alpha = a.param == "alpha";
  const std::string mode = a.mode.empty() ? (is_alpha ? "resolve" : "replay") : a.mode;
  if (mode != "replay" && mode != "resolve") throw CommandError(kBadArguments, "unknown sweep mode \"" + mode + "\"");
  if (is_alpha && mode == "replay") throw CommandError(kBadArguments, "alpha sweeps re-solve; replay mode fixes the timing");
  if (mode == "resolve" && (!a.schedule.empty() || !a.decisions.empty())) {
    throw CommandError(kBadArguments, "--schedule and --decisions apply to replay sweeps");
  }
  std::vector<double> grid;
  for (int i = 0; i < a.steps; ++i) {
    grid.push_back(a.steps == 1 ? a.from : a.from + (a.to - a.from) * i / (a.steps - 1));
  }
  if (is_alpha) {
    for (double v : grid) {
      if (!(v >= 0.0 && v <= 1.0)) throw CommandError(kBadArguments, "alpha grid leaves [0, 1]");
    }
  } else {
    for (double v : grid) {
      if (!(v >= 0.0)) throw CommandError(kBadArguments, "rates must be non-negative");
    }
  }

  const Project p = load_project(a.solve.instance);
  RunOptions opt = run_options(a.solve, p);
  if (is_alpha && !a.solve.alpha) opt.alpha = kDefaultAlpha;

  // Replay sweeps fix the schedule once: given, or solved at the base rates.
  Schedule fixed;
  TimingTable tt;
  std::optional<FinancingDecisions> fixed_decisions;
  if (mode == "replay") {
    tt = run_timing(p, opt);
    if (!a.schedule.empty()) {
      fixed = checked_schedule(a.schedule, p, tt);
    } else {
      const RunResult base = run_solve(p, opt);
      if (!base.has_solution()) throw CommandError(static_cast<Exit>(status_exit(base.status)), base.message);
      fixed = base.schedule;
    }
    if (!a.decisions.empty()) {
      fixed_decisions = parse_file(a.decisions, [](const std::string& t) { return parse_decisions(t); });
    }
  }

  std::vector<SweepRow> rows(grid.size());
  auto point = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = grid[i];
    Project q = p;
    RunOptions o = opt;
    if (is_alpha) o.alpha = grid[i];
    else set_rate(q.finance, a.param, grid[i]);
    try {
      if (mode == "replay") {
        const EvaluateResult ev = evaluate_schedule(q, tt, fixed, fixed_decisions);
        row.ok = ev.ledger.ok();
        row.status = row.ok ? "ok" : "ledger-violation";
        row.makespan = fixed.makespan();
        row.final_cf = ev.ledger.final_cash();
      } else {
        const RunResult r = run_solve(q, o);
        row.status = to_string(r.status);
        row.ok = r.has_solution();
        if (row.ok) {
          row.makespan = r.schedule.makespan();
          row.final_cf = r.ledger.final_cash();
          row.lambda0 = r.lambda0;
          row.memberships = r.memberships;
        }
      }
    } catch (const FinancingInfeasible&) {
      row.status = "infeasible";
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  };
  const unsigned workers = std::min<unsigned>(thread_limit(), static_cast<unsigned>(grid.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) point(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  const bool with_mu = mode == "resolve" && (opt.method == Method::th || opt.method == Method::weighted);
  RunOptions label_opt = opt;
  if (is_alpha) label_opt.alpha = grid.front();
  const std::vector<std::string> labels =
      objective_count(p, label_opt) == 2 ? std::vector<std::string>{"Z1", "Z2"} : std::vector<std::string>{"Z1", "Z2L", "Z2U"};
  std::ostringstream csv;
  csv << "index," << a.param << ",status,makespan,final_cash_flow";
  if (with_mu) {
    if (opt.method == Method::th) csv << ",lambda0";
    for (const auto& l : labels) csv << ",mu_" << l;
  }
  csv << '\n';
  std::vector<double> cf, ms;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    csv << i << ',' << brief(r.value) << ',' << status << ',';
    if (r.ok) {
      csv << r.makespan << ',' << format_money(r.final_cf);
      cf.push_back(r.final_cf);
      ms.push_back(r.makespan);
    } else {
      csv << ',';
    }
    if (with_mu) {
      if (opt.method == Method::th) csv << ',' << (r.lambda0 ? brief(*r.lambda0) : "");
      for (std::size_t k = 0; k < labels.size(); ++k) {
        csv << ',' << (k < r.memberships.size() ? brief(r.memberships[k]) : "");
      }
    }
    csv << '\n';
  }
  out << "sweep " << a.param << " over " << grid.size() << " points (" << mode << ")\n";
  out << "makespan: " << trend(ms) << '\n';
  out << "final_cash_flow: " << trend(cf) << '\n';
  if (a.out.empty()) {
    out << csv.str();
  } else {
    Artifacts files;
    files.add(a.out, csv.str());
    files.commit(out);
  }
  return kOk;
}

int cmd_convert(const ConvertArgs& a, std::ostream& out)
{
  if (a.psplib.empty() == a.mmlib.empty()) throw CommandError(kBadArguments, "give exactly one of --psplib or --mmlib");
  if (a.out.empty()) throw CommandError(kBadArguments, "--out is required");
  const bool mm = !a.mmlib.empty();
  const std::string& path = mm ? a.mmlib : a.psplib;
  FinanceConfig cfg;
  if (!a.finance_cfg.empty()) cfg = parse_file(a.finance_cfg, [](const std::string& t) { return parse_finance_config(t); });
  const BenchmarkInstance b = parse_file(path, [&](const std::string& t) {
    return parse_psplib_mm(t, mm ? BenchmarkDialect::mmlib : BenchmarkDialect::psplib_mm);
  });
  const HeaderEcho e = header_echo(b);
  out << "jobs: header " << e.declared_jobs << ", precedence " << e.precedence_jobs << ", requests " << e.request_jobs
      << '\n'
      << "renewable: header " << e.declared_renewable << ", requests " << e.request_renewable << '\n'
      << "nonrenewable: header " << e.declared_nonrenewable << ", requests " << e.request_nonrenewable << '\n'
      << "modes: " << e.request_modes << ", arcs: " << e.arcs << '\n';
  InstanceDocument doc;
  try {
    doc = synthesize_finance(b, a.seed, cfg);
  } catch (const std::invalid_argument& ex) {
    throw CommandError(kBadArguments, ex.what());
  }
  if (!doc.diagnostics.empty()) {
    std::string msg = "converted instance fails validation";
    for (const auto& d : doc.diagnostics) msg += "\n  " + d.entity + " [" + d.rule + "]: " + d.message;
    throw CommandError(kIoError, msg);
  }
  Artifacts files;
  files.add(a.out, write_instance(doc.project, doc.notes));
  files.commit(out);
  return kOk;
}

int cmd_export(const ExportArgs& a, std::ostream& out)
{
  if (a.out.empty()) throw CommandError(kBadArguments, "--out is required");
  const Project p = load_project(a.instance);
  RunOptions opt;
  opt.alpha = a.alpha;
  if (a.form == "full") opt.form = ModelForm::full;
  else if (a.form == "compact") opt.form = ModelForm::compact;
  else throw CommandError(kBadArguments, "unknown model form \"" + a.form + "\"");
  try {
    check_run_options(p, opt);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kBadArguments, e.what());
  }
  BaseModel base;
  try {
    base = build_base(p, opt);
  } catch (const ModelSizeError& e) {
    throw CommandError(kBadArguments, e.what());
  }
  const auto k = base.model.find_objective(a.objective);
  if (!k) {
    std::string have;
    for (const auto& o : base.model.objectives()) have += (have.empty() ? "" : ", ") + o.label;
    throw CommandError(kBadArguments, "no objective \"" + a.objective + "\"; this model has " + have);
  }
  out << "variables: " << base.model.variables().size() << " (" << base.model.binary_count()
      << " binary), constraints: " << base.model.constraints().size() << '\n';
  Artifacts files;
  files.add(a.out, export_text(base.model, *k));
  files.commit(out);
  return kOk;
}

int cmd_report(const ReportArgs& a, std::ostream& out)
{
  if (a.gantt.empty() && a.ledger.empty()) throw CommandError(kBadArguments, "report needs --gantt and/or --ledger");
  if (a.schedule.empty()) throw CommandError(kBadArguments, "--schedule is required");
  const Project p = load_project(a.instance);
  RunOptions opt;
  opt.alpha = a.alpha;
  const TimingTable tt = run_timing(p, opt);
  const Schedule s = checked_schedule(a.schedule, p, tt);
  Artifacts files;
  files.add(a.gantt, gantt_svg(s, p));
  if (!a.ledger.empty()) {
    std::optional<FinancingDecisions> d;
    if (!a.decisions.empty()) d = parse_file(a.decisions, [](const std::string& t) { return parse_decisions(t); });
    try {
      files.add(a.ledger, ledger_csv(evaluate_schedule(p, tt, s, d).ledger));
    } catch (const FinancingInfeasible& e) {
      throw CommandError(kInfeasible, e.what());
    }
  }
  out << "makespan: " << s.makespan() << '\n';
  files.commit(out);
  return kOk;
}

}  // namespace cashsched::cli
