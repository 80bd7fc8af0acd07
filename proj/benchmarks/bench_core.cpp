#include <benchmark/benchmark.h>

#include "biraman/heterodyne.hpp"
#include "biraman/kramers_kronig.hpp"
#include "biraman/medium.hpp"
#include "biraman/modulation.hpp"

using namespace biraman;

namespace {

medium::MediumParams reference_params() {
    medium::MediumParams p;
    p.half_width = medium::half_width_from_fwhm(700e3);
    p.pump_separation = 2e6;
    p.line_amplitude = medium::calibrate_amplitude(3.5, 700e3, p.cell_length);
    return p;
}

void BM_KramersKronig(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto profile = medium::sample(reference_params(), linspace(-40e6, 40e6, n), ProfileKind::susceptibility);
    for (auto _ : state) benchmark::DoNotOptimize(medium::kramers_kronig(profile));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KramersKronig)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_Demodulate(benchmark::State& state) {
    const heterodyne::BeatSpec spec;
    const auto sig = heterodyne::synthesize_beat(0.05, 2.0, spec, 20e-6);
    const auto ref = heterodyne::synthesize_beat(0.0, 1.0, spec, 20e-6);
    for (auto _ : state) benchmark::DoNotOptimize(heterodyne::demodulate(sig, ref, {}));
}
BENCHMARK(BM_Demodulate);

void BM_SweepMeasure(benchmark::State& state) {
    const heterodyne::SweepSpec sweep{-4e6, 4e6, static_cast<std::size_t>(state.range(0))};
    const auto p = reference_params();
    for (auto _ : state) benchmark::DoNotOptimize(heterodyne::sweep_measure(p, sweep, {}));
}
BENCHMARK(BM_SweepMeasure)->Arg(41)->Arg(161)->Unit(benchmark::kMillisecond);

void BM_PowerSpectrum(benchmark::State& state) {
    const auto fc = modulation::FieldComponents::geometric_ladder(2e6, 3);
    const double fs = 64e6;
    const auto series = modulation::intensity_timeseries(fc, static_cast<double>(state.range(0)) / fs, fs);
    for (auto _ : state) benchmark::DoNotOptimize(modulation::power_spectrum(series, fs));
}
BENCHMARK(BM_PowerSpectrum)->Arg(4096)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
