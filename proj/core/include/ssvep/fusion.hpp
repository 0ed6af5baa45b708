#pragma once

#include "ssvep/canonical.hpp"
#include "ssvep/dataset.hpp"
#include "ssvep/epoch.hpp"
#include "ssvep/filterbank.hpp"
#include "ssvep/templates.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ssvep {

// Channel-level weights phi_k = exp(-a1 k) + b1 and band-level weights
// w_m = m^-a2 + b2 (k, m 1-based). Defaults are the tuned values.
struct FusionParams {
  double a1 = 0.6;
  double b1 = 0.2;
  double a2 = 2.0;
  double b2 = 0.25;
  std::size_t sn = 5;
  std::size_t tau = 1;
  double ridge = kDefaultRidge;
  FilterbankSettings filter{};

  void validate() const;
  bool operator==(const FusionParams&) const = default;
};

std::vector<double> channel_weights(std::size_t n_channels, const FusionParams& params);
std::vector<double> band_weights(std::size_t n_bands, const FusionParams& params);

// Top-Nc of the merged coefficients from the two template comparisons,
// descending.
struct FeatureVector {
  std::vector<double> values;
};

// Merges two coefficient lists, each zero-padded to n_channels, and keeps
// the n_channels largest.
FeatureVector merge_top(const CcaResult& first, const CcaResult& second, std::size_t n_channels);

FeatureVector subband_feature(const EegEpoch& z_m, const EegEpoch& y1_m, const EegEpoch& y2_m,
                              const FusionParams& params);

double channel_fuse(const FeatureVector& feature, const FusionParams& params);
double band_fuse(std::span<const double> deltas, const FusionParams& params);

struct DecisionScores {
  std::vector<double> psi;
  std::size_t chosen = 0;
};

// features[i][m] is the subband feature of candidate frequency i, band m.
using FeatureTable = std::vector<std::vector<FeatureVector>>;

DecisionScores score_features(const FeatureTable& features, const FusionParams& params);

// Template bank decomposed into subbands and prepared for CCA once, so that
// each test epoch only pays for its own decomposition.
class FusionRecognizer {
 public:
  FusionRecognizer(const TemplateBank& bank, double f0_hz, const FusionParams& params);

  std::size_t n_frequencies() const noexcept { return y1_.size(); }
  const FusionParams& params() const noexcept { return params_; }

  FeatureTable features(const EegEpoch& z) const;
  DecisionScores recognize(const EegEpoch& z) const;

 private:
  FusionParams params_;
  Filterbank filterbank_;
  std::size_t n_channels_;
  std::size_t n_samples_;
  std::vector<std::vector<CcaOperand>> y1_;  // [frequency][band]
  std::vector<std::vector<CcaOperand>> y2_;
};

DecisionScores recognize(const EegEpoch& z, const TemplateBank& bank, double f0_hz, const FusionParams& params);

struct FusionGrid {
  std::vector<double> a1;
  std::vector<double> b1;
  std::vector<double> a2;
  std::vector<double> b2;

  static FusionGrid defaults();
  static FusionGrid singleton(const FusionParams& params);
  std::size_t size() const noexcept { return a1.size() * b1.size() * a2.size() * b2.size(); }
};

struct GridPoint {
  double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
  double accuracy = 0.0;
};

struct GridSearchResult {
  FusionParams best;
  double best_accuracy = 0.0;
  std::vector<GridPoint> table;  // a1-major, b2 fastest
};

// Exhaustive LOOCV accuracy over every (a1, b1, a2, b2) tuple. sn, tau,
// ridge and filter settings come from `base`. Ties resolve to the first
// tuple in grid order. Correlations do not depend on the weights, so the
// subband features are computed once and rescored per tuple.
GridSearchResult grid_search(const SsvepDataset& dataset, const FusionGrid& grid, double window_s, double start_s,
                             const FusionParams& base = {}, std::size_t threads = 0);

}  // namespace ssvep
