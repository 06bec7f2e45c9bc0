/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <iostream>

#include <CLI11.hpp>

#include "cashsched/builder.hpp"
#include "cashsched/solver.hpp"
#include "commands.hpp"

using namespace cashsched::cli;

namespace {

void solve_flags(CLI::App& app, SolveArgs& a)
{
  app.add_option("--instance", a.instance, "native instance file")->required();
  app.add_option("--alpha", a.alpha, "alpha-level in [0, 1]; omit for the crisp model of a crisp instance");
  app.add_option("--method", a.method, "th | weighted | single-makespan | single-profit")->capture_default_str();
  app.add_option("--gamma", a.gamma, "th compensation coefficient in [0, 1]")->capture_default_str();
  app.add_option("--theta", a.theta, "th weights, one per objective, summing to 1")->delimiter(',');
  app.add_option("--weights", a.weights, "weighted-sum weights, one per objective, summing to 1")->delimiter(',');
  app.add_option("--form", a.form, "model form: compact | full");
  app.add_option("--max-nodes", a.max_nodes, "branch-and-bound node limit")->capture_default_str();
  app.add_option("--time-limit", a.time_limit, "time limit in seconds")->capture_default_str();
  app.add_option("--gap", a.gap, "relative gap at which to stop")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Project scheduling with cash-flow financing under interval-valued fuzzy data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cashsched 0.1.0");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "build and solve a scheduling model");
  solve_flags(*s, solve);
  s->add_option("--backend", solve.backend, "embedded | export")->capture_default_str();
  s->add_option("--out", solve.out, "LP file written by the export backend");
  s->add_option("--summary", solve.summary, "solution summary (JSON)");
  s->add_option("--ledger", solve.ledger, "ledger CSV");
  s->add_option("--gantt", solve.gantt, "Gantt chart SVG");
  s->add_option("--schedule-out", solve.schedule_out, "schedule file");
  s->add_option("--decisions-out", solve.decisions_out, "financing decisions file");

  EvaluateArgs eval;
  auto* e = app.add_subcommand("evaluate", "ledger of a fixed schedule");
  e->add_option("--instance", eval.instance, "native instance file");
  e->add_option("--schedule", eval.schedule, "schedule file");
  e->add_option("--decisions", eval.decisions, "financing decisions to replay; optimized when omitted");
  e->add_option("--replay", eval.replay, "ledger replay file with costs, dues and decisions");
  e->add_option("--alpha", eval.alpha, "alpha-level for fuzzy instances");
  e->add_option("--ledger", eval.ledger, "ledger CSV");
  e->add_option("--summary", eval.summary, "summary (JSON)");

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "final cash flow over a parameter grid");
  solve_flags(*w, sweep.solve);
  w->add_option("--param", sweep.param, "r_excess | r_delay | r_long | r_short | alpha")->required();
  w->add_option("--from", sweep.from, "first grid value")->required();
  w->add_option("--to", sweep.to, "last grid value")->required();
  w->add_option("--steps", sweep.steps, "number of grid points")->required();
  w->add_option("--mode", sweep.mode, "replay (fixed schedule) | resolve; rates default to replay, alpha to resolve");
  w->add_option("--schedule", sweep.schedule, "fixed schedule for replay; solved once when omitted");
  w->add_option("--decisions", sweep.decisions, "fixed decisions for replay; optimized per point when omitted");
  w->add_option("--out", sweep.out, "CSV output; standard output when omitted");

  ConvertArgs conv;
  auto* c = app.add_subcommand("convert", "benchmark file to native instance with synthesized finance");
  auto* ps = c->add_option("--psplib", conv.psplib, "PSPLIB multi-mode file");
  c->add_option("--mmlib", conv.mmlib, "MMLIB file")->excludes(ps);
  c->add_option("--seed", conv.seed, "generator seed")->capture_default_str();
  c->add_option("--finance-cfg", conv.finance_cfg, "generator configuration (JSON)");
  c->add_option("--out", conv.out, "native instance output")->required();

  ExportArgs exp;
  auto* x = app.add_subcommand("export", "write a model in CPLEX LP format");
  x->add_option("--instance", exp.instance, "native instance file")->required();
  x->add_option("--alpha", exp.alpha, "alpha-level; omit for the crisp model of a crisp instance");
  x->add_option("--objective", exp.objective, "objective label: Z1, Z2, Z2L or Z2U")->capture_default_str();
  x->add_option("--form", exp.form, "full | compact")->capture_default_str();
  x->add_option("--out", exp.out, "LP output")->required();

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Gantt chart and ledger of a schedule");
  r->add_option("--instance", rep.instance, "native instance file")->required();
  r->add_option("--schedule", rep.schedule, "schedule file")->required();
  r->add_option("--decisions", rep.decisions, "financing decisions; optimized when omitted");
  r->add_option("--alpha", rep.alpha, "alpha-level for fuzzy instances");
  r->add_option("--gantt", rep.gantt, "Gantt chart SVG");
  r->add_option("--ledger", rep.ledger, "ledger CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*s) return cmd_solve(solve, std::cout);
    if (*e) return cmd_evaluate(eval, std::cout);
    if (*w) return cmd_sweep(sweep, std::cout);
    if (*c) return cmd_convert(conv, std::cout);
    if (*x) return cmd_export(exp, std::cout);
    if (*r) return cmd_report(rep, std::cout);
  } catch (const CommandError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return err.code();
  } catch (const cashsched::ModelSizeError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return kInternal;
  }
  return kBadArguments;
}
