/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <benchmark/benchmark.h>

#include <sstream>
#include <string>

#include "cashsched/builder.hpp"
#include "cashsched/financing.hpp"
#include "cashsched/instance_io.hpp"
#include "cashsched/lp_export.hpp"
#include "cashsched/psplib.hpp"
#include "cashsched/scalarize.hpp"
#include "cashsched/solver.hpp"
#include "cashsched/toy.hpp"

using namespace cashsched;

namespace {

void BM_LedgerReplay(benchmark::State& state)
{
  const LedgerReplay r = parse_replay(read_file(CASHSCHED_DATA_DIR "/case22_ledger.json"));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_ledger(r.finance, r.tbu, r.due, r.decisions).final_cash());
}
BENCHMARK(BM_LedgerReplay);

void BM_ParseNative(benchmark::State& state)
{
  const std::string text = read_file(CASHSCHED_DATA_DIR "/case22.json");
  for (auto _ : state) benchmark::DoNotOptimize(parse_instance(text).project.activities.size());
}
BENCHMARK(BM_ParseNative);

void BM_ParsePsplib(benchmark::State& state)
{
  const std::string text = read_file(CASHSCHED_TEST_DATA_DIR "/j30_synth.mm");
  for (auto _ : state) benchmark::DoNotOptimize(parse_psplib_mm(text).jobs.size());
}
BENCHMARK(BM_ParsePsplib);

void BM_BuildCase22(benchmark::State& state)
{
  const Project p = parse_instance(read_file(CASHSCHED_DATA_DIR "/case22.json")).project;
  BuildOptions bo;
  bo.form = state.range(0) ? ModelForm::compact : ModelForm::full;
  for (auto _ : state) benchmark::DoNotOptimize(build_ivf_model(p, 0.5, bo).variables().size());
}
BENCHMARK(BM_BuildCase22)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExportCase22(benchmark::State& state)
{
  const Project p = parse_instance(read_file(CASHSCHED_DATA_DIR "/case22.json")).project;
  const MilpModel m = build_ivf_model(p, 0.5);
  for (auto _ : state) {
    std::ostringstream out;
    export_lp(m, out, 1);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_ExportCase22)->Unit(benchmark::kMillisecond);

void BM_SolveToy(benchmark::State& state)
{
  const Project p = random_toy(static_cast<std::uint64_t>(state.range(0)));
  BuildOptions bo;
  bo.form = ModelForm::compact;
  const MilpModel m = build_ivf_model(p, 0.5, bo);
  for (auto _ : state) benchmark::DoNotOptimize(solve_milp(m, {}, 1).objective);
}
BENCHMARK(BM_SolveToy)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PayoffToy(benchmark::State& state)
{
  const Project p = random_toy(static_cast<std::uint64_t>(state.range(0)));
  BuildOptions bo;
  bo.form = ModelForm::compact;
  const MilpModel m = build_ivf_model(p, 0.5, bo);
  for (auto _ : state) benchmark::DoNotOptimize(compute_payoff_table(m).size());
}
BENCHMARK(BM_PayoffToy)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
