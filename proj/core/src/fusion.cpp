#include "ssvep/fusion.hpp"

#include "ssvep/errors.hpp"
#include "ssvep/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ssvep {

void FusionParams::validate() const {
  for (double v : {a1, b1, a2, b2}) {
    if (!std::isfinite(v)) throw ArgumentError("fusion weights must be finite");
  }
  if (sn < 1) throw ArgumentError("sn must be at least 1");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw ArgumentError("ridge must be a finite non-negative number");
}

std::vector<double> channel_weights(std::size_t n_channels, const FusionParams& params) {
  std::vector<double> w(n_channels);
  for (std::size_t k = 1; k <= n_channels; ++k) w[k - 1] = std::exp(-params.a1 * static_cast<double>(k)) + params.b1;
  return w;
}

std::vector<double> band_weights(std::size_t n_bands, const FusionParams& params) {
  std::vector<double> w(n_bands);
  for (std::size_t m = 1; m <= n_bands; ++m) w[m - 1] = std::pow(static_cast<double>(m), -params.a2) + params.b2;
  return w;
}

FeatureVector merge_top(const CcaResult& first, const CcaResult& second, std::size_t n_channels) {
  std::vector<double> merged;
  merged.reserve(2 * n_channels);
  for (const auto* result : {&first, &second}) {
    const auto& rho = result->correlations;
    for (std::size_t k = 0; k < n_channels; ++k) merged.push_back(k < rho.size() ? rho[k] : 0.0);
  }
  std::partial_sort(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(n_channels), merged.end(),
                    std::greater<>());
  merged.resize(n_channels);
  return FeatureVector{std::move(merged)};
}

FeatureVector subband_feature(const EegEpoch& z_m, const EegEpoch& y1_m, const EegEpoch& y2_m,
                              const FusionParams& params) {
  if (!y1_m.same_shape(y2_m) || y1_m.n_samples() != z_m.n_samples()) {
    throw ArgumentError("subband test and template epochs must share a sample count");
  }
  const CcaOperand test(embed_delay(z_m, params.tau).data, params.ridge);
  const CcaOperand first(trim_samples(y1_m.data(), params.tau), params.ridge);
  const CcaOperand second(trim_samples(y2_m.data(), params.tau), params.ridge);
  return merge_top(canonical_correlations(test, first), canonical_correlations(test, second), z_m.n_channels());
}

double channel_fuse(const FeatureVector& feature, const FusionParams& params) {
  const auto phi = channel_weights(feature.values.size(), params);
  double delta = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) delta += phi[k] * feature.values[k];
  return delta;
}

double band_fuse(std::span<const double> deltas, const FusionParams& params) {
  if (deltas.size() != params.sn) {
    throw ArgumentError("expected " + std::to_string(params.sn) + " subband scores, got " +
                        std::to_string(deltas.size()));
  }
  const auto w = band_weights(deltas.size(), params);
  double psi = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) psi += w[m] * deltas[m];
  return psi;
}

DecisionScores score_features(const FeatureTable& features, const FusionParams& params) {
  DecisionScores scores;
  scores.psi.reserve(features.size());
  std::vector<double> deltas;
  for (const auto& per_band : features) {
    deltas.clear();
    for (const auto& feature : per_band) deltas.push_back(channel_fuse(feature, params));
    scores.psi.push_back(band_fuse(deltas, params));
  }
  scores.chosen = argmax_first(scores.psi);
  return scores;
}

namespace {

const EegEpoch& reference_template(const TemplateBank& bank, const FusionParams& params) {
  params.validate();
  if (bank.y1.size() < 2 || bank.y2.size() != bank.y1.size()) {
    throw ArgumentError("recognition needs at least two template frequencies");
  }
  return bank.y1.front();
}

}  // namespace

FusionRecognizer::FusionRecognizer(const TemplateBank& bank, double f0_hz, const FusionParams& params)
    : params_(params),
      filterbank_(f0_hz, params.sn, reference_template(bank, params).sample_rate_hz(), params.filter),
      n_channels_(bank.y1.front().n_channels()),
      n_samples_(bank.y1.front().n_samples()) {
  const std::size_t nf = bank.y1.size();
  y1_.resize(nf);
  y2_.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (bank.y1[i].n_channels() != n_channels_ || bank.y1[i].n_samples() != n_samples_ ||
        !bank.y1[i].same_shape(bank.y2[i])) {
      throw ArgumentError("template bank epochs must share one shape");
    }
    for (auto [source, target] : {std::pair{&bank.y1[i], &y1_[i]}, std::pair{&bank.y2[i], &y2_[i]}}) {
      const SubbandSet bands = filterbank_.decompose(*source);
      target->reserve(bands.size());
      for (const auto& band : bands.bands) target->emplace_back(trim_samples(band.data(), params_.tau), params_.ridge);
    }
  }
}

FeatureTable FusionRecognizer::features(const EegEpoch& z) const {
  if (z.n_channels() != n_channels_ || z.n_samples() != n_samples_) {
    throw ArgumentError("test epoch shape differs from the templates");
  }
  const SubbandSet bands = filterbank_.decompose(z);
  FeatureTable table(y1_.size(), std::vector<FeatureVector>(bands.size()));
  for (std::size_t m = 0; m < bands.size(); ++m) {
    const CcaOperand test(embed_delay(bands.bands[m], params_.tau).data, params_.ridge);
    for (std::size_t i = 0; i < y1_.size(); ++i) {
      table[i][m] =
          merge_top(canonical_correlations(test, y1_[i][m]), canonical_correlations(test, y2_[i][m]), n_channels_);
    }
  }
  return table;
}

DecisionScores FusionRecognizer::recognize(const EegEpoch& z) const { return score_features(features(z), params_); }

DecisionScores recognize(const EegEpoch& z, const TemplateBank& bank, double f0_hz, const FusionParams& params) {
  return FusionRecognizer(bank, f0_hz, params).recognize(z);
}

FusionGrid FusionGrid::defaults() {
  FusionGrid grid;
  for (int i = 1; i <= 8; ++i) grid.a1.push_back(i / 5.0);
  for (int i = 0; i <= 5; ++i) grid.b1.push_back(i / 10.0);
  grid.a2 = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  grid.b2 = {0.0, 0.25, 0.5};
  return grid;
}

FusionGrid FusionGrid::singleton(const FusionParams& params) {
  return FusionGrid{{params.a1}, {params.b1}, {params.a2}, {params.b2}};
}

GridSearchResult grid_search(const SsvepDataset& dataset, const FusionGrid& grid, double window_s, double start_s,
                             const FusionParams& base, std::size_t threads) {
  if (grid.a1.empty() || grid.b1.empty() || grid.a2.empty() || grid.b2.empty()) {
    throw ArgumentError("every grid axis needs at least one value");
  }
  base.validate();
  const SampleWindow window = window_for(dataset, start_s, window_s);
  const FoldPlan plan = loocv_folds(dataset.n_trials());
  const std::size_t nf = dataset.n_frequencies();

  // cache[fold][true frequency] -> features against every candidate
  std::vector<std::vector<FeatureTable>> cache(plan.folds.size());
  parallel_for(plan.folds.size(), threads, [&](std::size_t k) {
    const Fold& fold = plan.folds[k];
    const TemplateBank bank = build_templates(dataset, fold.train_trials, window);
    const FusionRecognizer recognizer(bank, dataset.base_frequency_hz(), base);
    cache[k].reserve(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      cache[k].push_back(recognizer.features(dataset.slice(fold.test_trial, f, window.first, window.count)));
    }
  });

  const double total = static_cast<double>(plan.folds.size() * nf);
  GridSearchResult result;
  result.table.reserve(grid.size());
  bool have_best = false;
  for (double a1 : grid.a1) {
    for (double b1 : grid.b1) {
      for (double a2 : grid.a2) {
        for (double b2 : grid.b2) {
          FusionParams params = base;
          params.a1 = a1;
          params.b1 = b1;
          params.a2 = a2;
          params.b2 = b2;
          params.validate();
          long long correct = 0;
          for (const auto& per_fold : cache) {
            for (std::size_t f = 0; f < per_fold.size(); ++f) {
              if (score_features(per_fold[f], params).chosen == f) ++correct;
            }
          }
          const double accuracy = static_cast<double>(correct) / total;
          result.table.push_back(GridPoint{a1, b1, a2, b2, accuracy});
          if (!have_best || accuracy > result.best_accuracy) {
            result.best = params;
            result.best_accuracy = accuracy;
            have_best = true;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace ssvep
