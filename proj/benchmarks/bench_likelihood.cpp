#include <benchmark/benchmark.h>

#include "qlik/likelihood.hpp"

using namespace qlik;

namespace {

std::vector<Code> sign_codes(std::int64_t n)
{
    std::vector<Code> codes;
    for (std::int64_t i = 0; i < n; ++i) codes.push_back(Code{i % 3 == 0 ? 0 : 1, i % 2});
    return codes;
}

const LocationScaleModel& model()
{
    static const LocationScaleModel m(Matrix::Identity(2, 2), Vector::Constant(2, 0.3), DiagonalScale{Vector::Constant(2, 1.2)});
    return m;
}

}  // namespace

static void BM_ExactDatasetLoglik(benchmark::State& state)
{
    const Quantizer q(AdcBank(std::vector<std::vector<double>>{{0.0}, {0.0}}));
    const NoiseModel noise(NoiseFamily::Gaussian, 2);
    const auto codes = sign_codes(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dataset_loglik(model(), noise, q, codes).log_value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactDatasetLoglik)->Arg(1000)->Arg(100000);

static void BM_ExactGradient(benchmark::State& state)
{
    const Quantizer q(AdcBank(std::vector<std::vector<double>>{{0.0}, {0.0}}));
    const NoiseModel noise(NoiseFamily::Logistic, 2);
    const auto codes = sign_codes(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(grad_dataset_loglik(model(), noise, q, codes).location);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactGradient)->Arg(1000);

static void BM_MonteCarloHexagon(benchmark::State& state)
{
    Matrix psi(2, 2);
    psi << 1.5, 0.3, 0.3, 0.8;
    const LocationScaleModel m(Matrix::Identity(2, 2), Vector::Zero(2), FixedScale{psi});
    const Quantizer q{HexagonalQuantizer(1.0)};
    const NoiseModel noise(NoiseFamily::Gaussian, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(quantized_loglik(m, noise, q, Code{0, 0}, McOptions{state.range(0), 1}).log_value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloHexagon)->Arg(100000)->Unit(benchmark::kMillisecond);
