#include <benchmark/benchmark.h>

#include "qlik/estimate.hpp"

using namespace qlik;

static void BM_FitScalarScale(benchmark::State& state)
{
    const Quantizer q(AdcBank(std::vector<std::vector<double>>{{-3, -2, -1, 0, 1, 2, 3}}));
    const Matrix w = NoiseModel(NoiseFamily::Gaussian, 1).sample_matrix(state.range(0), 7);
    std::vector<Code> codes;
    for (Eigen::Index i = 0; i < w.cols(); ++i) codes.push_back(q.quantize(Vector::Constant(1, 0.7 + w(0, i))));
    FitConfig cfg;
    cfg.mode = FitMode::LocationScalarScale;
    cfg.x0 = Vector::Zero(1);
    cfg.scale0 = ScalarScale{1.0};
    const FitProblem problem{Matrix::Ones(1, 1), NoiseFamily::Gaussian, q};
    for (auto _ : state) benchmark::DoNotOptimize(fit(problem, codes, cfg).x_hat);
}
BENCHMARK(BM_FitScalarScale)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
