#include "harness/corpus.hpp"
#include "lmmroot/lmmroot.hpp"

#include <benchmark/benchmark.h>

#include <limits>
#include <vector>

using namespace lmmroot;

namespace {

std::vector<IterationRecord<double>> window(std::size_t s) {
    std::vector<IterationRecord<double>> w;
    for (std::size_t k = 0; k < s; ++k) {
        const double x = 0.5 + 0.1 * static_cast<double>(k);
        w.push_back({x, x * x * x - x - 1, 3 * x * x - 1, k});
    }
    return w;
}

void BM_HermiteStep(benchmark::State& state) {
    const auto w = window(static_cast<std::size_t>(state.range(0)));
    const std::vector<bool> slopes(w.size(), true);
    for (auto _ : state) benchmark::DoNotOptimize(hermite_step<double>(w, slopes));
}
BENCHMARK(BM_HermiteStep)->DenseRange(2, 5);

void BM_CoefficientsClosedS3(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lmm_coefficients_s3(3.0, 2.0));
}
BENCHMARK(BM_CoefficientsClosedS3);

void BM_CoefficientsSolvedS3(benchmark::State& state) {
    const std::vector<double> q = {3.0, 2.0};
    const auto mask = SigmaMask::full(3);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lmm_coefficients(q, mask));
}
BENCHMARK(BM_CoefficientsSolvedS3);

void BM_RobustCorpus(benchmark::State& state) {
    const double delta = 2 * std::numeric_limits<double>::epsilon();
    std::vector<Problem<double>> problems;
    std::vector<harness::BracketRef> brackets;
    for (const auto* e : harness::benchmark_entries()) {
        problems.push_back(e->problem<double>());
        brackets.push_back(*e->bracket);
    }
    for (auto _ : state) {
        for (std::size_t i = 0; i < problems.size(); ++i) {
            benchmark::DoNotOptimize(solve_bracketed(problems[i], brackets[i].a, brackets[i].b, delta));
        }
    }
}
BENCHMARK(BM_RobustCorpus);

void BM_FullLmmExtended(benchmark::State& state) {
    const unsigned digits = static_cast<unsigned>(state.range(0));
    PrecisionScope scope(digits);
    const auto& e = harness::find_entry("x^3-x-1");
    const auto p = e.problem<Extended>();
    const Extended eps = pow(Extended(10), -static_cast<int>(digits) + 50);
    const auto spec = SolverSpec<Extended>::full_lmm(3, StopCriterion<Extended>::absolute_increment(eps));
    for (auto _ : state) benchmark::DoNotOptimize(run(p, spec, p.default_start));
}
BENCHMARK(BM_FullLmmExtended)->Arg(100)->Arg(300)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
