#include "ssvep/canonical.hpp"
#include "ssvep/evaluation.hpp"
#include "ssvep/filterbank.hpp"
#include "ssvep/fusion.hpp"
#include "ssvep/synthetic.hpp"
#include "ssvep/templates.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

namespace {

Eigen::MatrixXd noise(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

const ssvep::SsvepDataset& dataset() {
  static const ssvep::SsvepDataset ds = [] {
    auto spec = ssvep::reference_synth_spec();
    spec.snr_db = -10.0;
    spec.seed = 42;
    return ssvep::generate_ssvep(spec);
  }();
  return ds;
}

// range(0) = samples per epoch
void BM_Sscca(benchmark::State& state) {
  const auto ns = state.range(0);
  const ssvep::EegEpoch z(noise(8, ns, 1), 256.0), y(noise(8, ns, 2), 256.0);
  for (auto _ : state) benchmark::DoNotOptimize(ssvep::sscca_correlations(z, y));
}
BENCHMARK(BM_Sscca)->Arg(64)->Arg(128)->Arg(256)->Arg(1024);

void BM_Design(benchmark::State& state) {
  ssvep::BandpassSpec spec;
  spec.low_hz = 9.25;
  spec.sample_rate_hz = 256.0;
  for (auto _ : state) benchmark::DoNotOptimize(ssvep::design_chebyshev1(spec));
}
BENCHMARK(BM_Design);

void BM_Decompose(benchmark::State& state) {
  const ssvep::Filterbank bank(9.25, 5, 256.0);
  const ssvep::EegEpoch z(noise(8, state.range(0), 3), 256.0);
  for (auto _ : state) benchmark::DoNotOptimize(bank.decompose(z));
  state.SetItemsProcessed(state.iterations() * 8 * state.range(0));
}
BENCHMARK(BM_Decompose)->Arg(64)->Arg(256)->Arg(1024);

// One test epoch against 12 prepared templates.
void BM_Recognize(benchmark::State& state) {
  const auto& ds = dataset();
  const double window = static_cast<double>(state.range(0)) / 1000.0;
  const auto win = ssvep::window_for(ds, 0.0, window);
  std::vector<std::size_t> train(ds.n_trials() - 1);
  std::iota(train.begin(), train.end(), 1);
  const auto bank = ssvep::build_templates(ds, train, win);
  const ssvep::FusionRecognizer rec(bank, ds.base_frequency_hz(), ssvep::FusionParams{});
  const auto z = ds.slice(0, 3, win.first, win.count);
  for (auto _ : state) benchmark::DoNotOptimize(rec.recognize(z));
}
BENCHMARK(BM_Recognize)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Loocv(benchmark::State& state) {
  const auto& ds = dataset();
  const auto method = state.range(0) == 0 ? ssvep::Method::baseline_sscca : ssvep::Method::proposed_fusion;
  for (auto _ : state)
    benchmark::DoNotOptimize(ssvep::evaluate_loocv(ds, method, ssvep::FusionParams{}, 1.0, 0.0));
}
BENCHMARK(BM_Loocv)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
