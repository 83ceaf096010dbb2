#include "jetcov/backlund.hpp"
#include "jetcov/cli/driver.hpp"
#include "jetcov/coframe.hpp"

#include <benchmark/benchmark.h>

using namespace jetcov;
using namespace jetcov::cli;

namespace {

ProblemModel builtin(const std::string &name, unsigned order)
{
	return build_model(parse_problem(load_problem_text("builtin:" + name)), order);
}

void flatness(benchmark::State &state, const char *name)
{
	unsigned order = static_cast<unsigned>(state.range(0));
	auto m = builtin(name, order);
	for (auto _ : state)
		benchmark::DoNotOptimize(flatness_check(*m.covering, order));
}

void closure(benchmark::State &state)
{
	unsigned k = static_cast<unsigned>(state.range(0));
	auto m = builtin("khz", k + 1);
	for (auto _ : state)
		benchmark::DoNotOptimize(we_closure_check(*m.covering, k));
}

void backlund(benchmark::State &state, const char *name)
{
	auto m = builtin(name, 3);
	for (auto _ : state)
		benchmark::DoNotOptimize(verify_backlund(m.backlund.front()));
}

void linear_combination(benchmark::State &state)
{
	for (auto _ : state)
		benchmark::DoNotOptimize(mkhz_linear_combination_check());
}

void coframe(benchmark::State &state)
{
	auto n = static_cast<std::size_t>(state.range(0));
	for (auto _ : state)
	{
		auto cf = build_lifted_coframe(coframe_context(n));
		benchmark::DoNotOptimize(check_structure_congruences(cf));
	}
}

void parse_corpus(benchmark::State &state)
{
	auto text = load_problem_text("builtin:khz");
	for (auto _ : state)
		benchmark::DoNotOptimize(parse_problem(text));
}

} // namespace

BENCHMARK_CAPTURE(flatness, khz, "khz")->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(flatness, mkhz, "mkhz")->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(closure)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(backlund, khz, "khz")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(backlund, eq9, "eq9")->Unit(benchmark::kMillisecond);
BENCHMARK(linear_combination)->Unit(benchmark::kMillisecond);
BENCHMARK(coframe)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(parse_corpus)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
