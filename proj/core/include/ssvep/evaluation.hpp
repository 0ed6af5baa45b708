#pragma once

#include "ssvep/dataset.hpp"
#include "ssvep/fusion.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssvep {

enum class Method { baseline_sscca, proposed_fusion };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);

struct EvalOptions {
  std::string subject_id = "subject";
  std::size_t threads = 0;  // 0 = hardware concurrency
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<std::vector<long long>> confusion;  // [true][predicted]
  Method method = Method::proposed_fusion;
  FusionParams params;
  double window_s = 0.0;
  double start_s = 0.0;

  double accuracy() const noexcept { return rows.empty() ? 0.0 : rows.front().accuracy; }
};

// Bits per minute (Wolpaw). Terms at P = 0 or 1 take their limits; below
// chance the rate is clamped to zero.
double itr_bits_per_min(double accuracy, std::size_t n_classes, double selection_time_s);

// Leave-one-trial-out over the dataset. The baseline builds a single
// [f0, high] band and picks the largest leading SSCCA correlation against the
// all-trial template; the proposed method runs the subband fusion pipeline.
EvalReport evaluate_loocv(const SsvepDataset& dataset, Method method, const FusionParams& params, double window_s,
                          double start_s, const EvalOptions& options = {});

// Reports ordered by (window, method) with the baseline first.
std::vector<EvalReport> compare_methods(const SsvepDataset& dataset, const FusionParams& params,
                                        std::span<const double> windows_s, double start_s,
                                        const EvalOptions& options = {});

std::vector<EvalRow> collect_rows(std::span<const EvalReport> reports);

}  // namespace ssvep
