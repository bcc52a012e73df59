#include <benchmark/benchmark.h>

#include "fyk/bubble_extension.hpp"
#include "fyk/constants_certificate.hpp"
#include "fyk/moments.hpp"
#include "fyk/special_functions.hpp"

namespace {

void BesselK(benchmark::State& state) {
    double s = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fyk::bessel_k(0.3, s));
        s = s < 40.0 ? s * 1.37 : 1e-3;
    }
}
BENCHMARK(BesselK);

void ProfileEvaluation(benchmark::State& state) {
    const fyk::SpectralProfile prof(fyk::FractionalParams::make(7.0, 0.3));
    double s = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(prof.phi(s) + prof.phi_prime(s));
        s = s < 25.0 ? s * 1.31 : 0.01;
    }
}
BENCHMARK(ProfileEvaluation);

void MomentEntry(benchmark::State& state) {
    const fyk::FractionalParams params = fyk::FractionalParams::make(8.0, 0.3);
    for (auto _ : state) {
        fyk::MomentTable table(params, 1e-11);
        benchmark::DoNotOptimize(table.a(params.a + 2.0));
    }
}
BENCHMARK(MomentEntry)->Unit(benchmark::kMillisecond);

void ExtensionIntegralSuite(benchmark::State& state) {
    const fyk::FractionalParams params = fyk::FractionalParams::make(8.0, 0.25);
    const double c0 = fyk::fit_C0(params);
    for (auto _ : state) {
        fyk::MomentTable table(params, 1e-11);
        benchmark::DoNotOptimize(fyk::compute_I(table, c0, false));
    }
}
BENCHMARK(ExtensionIntegralSuite)->Unit(benchmark::kMillisecond);

void HankelTransformPoint(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fyk::hankel_radial_transform(7.0, 3.2, 2.0));
}
BENCHMARK(HankelTransformPoint)->Unit(benchmark::kMillisecond);

void ThetaScan(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fyk::theta_positivity_scan(6, 30, {0.3, 0.5, 0.7}));
}
BENCHMARK(ThetaScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
