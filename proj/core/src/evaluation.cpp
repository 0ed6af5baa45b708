#include "ssvep/evaluation.hpp"

#include "ssvep/errors.hpp"
#include "ssvep/parallel.hpp"
#include "ssvep/templates.hpp"

#include <cmath>
#include <string>

namespace ssvep {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::baseline_sscca:
      return "baseline_sscca";
    case Method::proposed_fusion:
      return "proposed_fusion";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "baseline" || text == "baseline_sscca") return Method::baseline_sscca;
  if (text == "proposed" || text == "proposed_fusion") return Method::proposed_fusion;
  throw ArgumentError("unknown method '" + std::string(text) + "'");
}

double itr_bits_per_min(double accuracy, std::size_t n_classes, double selection_time_s) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw ArgumentError("accuracy must lie in [0, 1]");
  if (n_classes < 2) throw ArgumentError("ITR needs at least two classes");
  if (!(selection_time_s > 0.0)) throw ArgumentError("selection time must be positive");

  const double n = static_cast<double>(n_classes);
  if (accuracy <= 1.0 / n) return 0.0;
  double bits = std::log2(n);
  if (accuracy < 1.0) {
    bits += accuracy * std::log2(accuracy) + (1.0 - accuracy) * std::log2((1.0 - accuracy) / (n - 1.0));
  }
  return std::max(0.0, bits) * 60.0 / selection_time_s;
}

namespace {

// predictions[fold][true frequency] = chosen frequency
using Predictions = std::vector<std::vector<std::size_t>>;

Predictions predict_baseline(const SsvepDataset& dataset, const FoldPlan& plan, SampleWindow window,
                             const FusionParams& params, std::size_t threads) {
  const Filterbank band(dataset.base_frequency_hz(), 1, dataset.sample_rate_hz(), params.filter);
  const std::size_t nf = dataset.n_frequencies();
  Predictions predictions(plan.folds.size(), std::vector<std::size_t>(nf));
  parallel_for(plan.folds.size(), threads, [&](std::size_t k) {
    const Fold& fold = plan.folds[k];
    const TemplateBank bank = build_templates(dataset, fold.train_trials, window);
    std::vector<CcaOperand> references;
    references.reserve(nf);
    for (const auto& t : bank.overall) {
      references.emplace_back(trim_samples(band.decompose(t).bands.front().data(), params.tau), params.ridge);
    }
    std::vector<double> scores(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      const EegEpoch z = dataset.slice(fold.test_trial, f, window.first, window.count);
      const CcaOperand test(embed_delay(band.decompose(z).bands.front(), params.tau).data, params.ridge);
      for (std::size_t i = 0; i < nf; ++i) scores[i] = canonical_correlations(test, references[i]).leading();
      predictions[k][f] = argmax_first(scores);
    }
  });
  return predictions;
}

Predictions predict_fusion(const SsvepDataset& dataset, const FoldPlan& plan, SampleWindow window,
                           const FusionParams& params, std::size_t threads) {
  const std::size_t nf = dataset.n_frequencies();
  Predictions predictions(plan.folds.size(), std::vector<std::size_t>(nf));
  parallel_for(plan.folds.size(), threads, [&](std::size_t k) {
    const Fold& fold = plan.folds[k];
    const TemplateBank bank = build_templates(dataset, fold.train_trials, window);
    const FusionRecognizer recognizer(bank, dataset.base_frequency_hz(), params);
    for (std::size_t f = 0; f < nf; ++f) {
      predictions[k][f] = recognizer.recognize(dataset.slice(fold.test_trial, f, window.first, window.count)).chosen;
    }
  });
  return predictions;
}

}  // namespace

EvalReport evaluate_loocv(const SsvepDataset& dataset, Method method, const FusionParams& params, double window_s,
                          double start_s, const EvalOptions& options) {
  params.validate();
  const std::size_t nf = dataset.n_frequencies();
  if (nf < 2) throw ArgumentError("evaluation needs at least two stimulus frequencies");
  const SampleWindow window = window_for(dataset, start_s, window_s);
  const FoldPlan plan = loocv_folds(dataset.n_trials());

  const Predictions predictions = method == Method::baseline_sscca
                                      ? predict_baseline(dataset, plan, window, params, options.threads)
                                      : predict_fusion(dataset, plan, window, params, options.threads);

  EvalReport report;
  report.method = method;
  report.params = params;
  report.window_s = window_s;
  report.start_s = start_s;
  report.confusion.assign(nf, std::vector<long long>(nf, 0));
  for (const auto& per_fold : predictions) {
    for (std::size_t f = 0; f < nf; ++f) ++report.confusion[f][per_fold[f]];
  }
  long long correct = 0;
  for (std::size_t f = 0; f < nf; ++f) correct += report.confusion[f][f];
  const auto total = static_cast<long long>(plan.folds.size() * nf);
  const double accuracy = static_cast<double>(correct) / static_cast<double>(total);
  report.rows.push_back(
      make_eval_row(options.subject_id, window_s, correct, total, itr_bits_per_min(accuracy, nf, window_s)));
  return report;
}

std::vector<EvalReport> compare_methods(const SsvepDataset& dataset, const FusionParams& params,
                                        std::span<const double> windows_s, double start_s,
                                        const EvalOptions& options) {
  if (windows_s.empty()) throw ArgumentError("need at least one window length");
  std::vector<EvalReport> reports;
  reports.reserve(2 * windows_s.size());
  for (double w : windows_s) {
    reports.push_back(evaluate_loocv(dataset, Method::baseline_sscca, params, w, start_s, options));
    reports.push_back(evaluate_loocv(dataset, Method::proposed_fusion, params, w, start_s, options));
  }
  return reports;
}

std::vector<EvalRow> collect_rows(std::span<const EvalReport> reports) {
  std::vector<EvalRow> rows;
  for (const auto& report : reports) rows.insert(rows.end(), report.rows.begin(), report.rows.end());
  return rows;
}

}  // namespace ssvep
