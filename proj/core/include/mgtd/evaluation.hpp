#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgtd/ensemble.hpp"
#include "mgtd/metrics.hpp"
#include "mgtd/records.hpp"

namespace mgtd {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const Confusion&) const = default;
};

struct LanguageBreakdown {
  double accuracy = 0.0;
  std::size_t n_human = 0;
  std::size_t n_machine = 0;

  bool operator==(const LanguageBreakdown&) const = default;
};

struct EvalReport {
  double accuracy = 0.0;
  // Raw-score AUC per channel. The voted ensemble never has one.
  std::map<std::string, double> per_channel_auc;
  // Accuracy of each channel's own decision (absent decision = human).
  std::map<std::string, double> per_channel_accuracy;
  Confusion confusion;
  // Keyed by the document's identified language, "UNKNOWN" when untagged.
  std::map<std::string, LanguageBreakdown> per_language;

  bool operator==(const EvalReport&) const = default;
};

// Throws FormatError when the prediction ids and the labeled gold ids differ.
// AUC is computed for each of `auc_channels` that has both classes among its
// valid scores.
EvalReport evaluate(std::span<const Prediction> predictions, std::span<const DocumentRecord> gold,
                    std::span<const ChannelSpec> auc_channels = {},
                    const StatisticRegistry& registry = StatisticRegistry::defaults());

// Built-in statistics (if any gold doc has tokens) plus every classifier key
// seen in the gold set.
std::vector<ChannelSpec> default_auc_channels(std::span<const DocumentRecord> gold);

// report.json body, pretty-printed with a trailing newline.
std::string report_json(const EvalReport& report);

// Accuracy / AUC ROC table, with N/A for the voted system's AUC, followed by
// the per-language breakdown.
std::string report_table(const EvalReport& report, std::string_view system_name = "ensemble");

}  // namespace mgtd
