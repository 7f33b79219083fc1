#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgtd/langgate.hpp"
#include "mgtd/metrics.hpp"
#include "mgtd/records.hpp"
#include "mgtd/threshold_table.hpp"

namespace mgtd {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  // Score (original units) at which this point starts predicting machine.
  // The leading (0, 0) point carries an infinite threshold.
  double threshold = 0.0;
};

// One point per distinct score, from (0, 0) to (1, 1).
struct RocCurve {
  std::vector<RocPoint> points;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  Orientation orientation = Orientation::higher_is_machine;
};

// Throws CalibrationError on empty or single-class input, mismatched lengths,
// or non-finite scores.
RocCurve build_roc(std::span<const double> scores, std::span<const Label> labels,
                   Orientation orientation);

// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

struct YoudenCut {
  double threshold = 0.0;  // original score units
  double j_stat = 0.0;     // TPR - FPR at the cut
};

// Cut maximizing TPR - FPR, placed at the midpoint between the last score
// predicted machine and the first predicted human. Ties prefer higher TPR,
// then the more conservative cut. With no informative cut (max J = 0) the
// threshold lies just beyond the most machine-like score, so everything is
// predicted human.
YoudenCut youden_threshold(const RocCurve& curve);

struct CalibrationOptions {
  // Minimum samples per class for a language bucket to get its own entry.
  std::size_t min_samples = 5;
};

// Fits one entry per (channel, bucket) that has both classes with at least
// min_samples valid scores each, plus an UNKNOWN entry per channel fit on all
// labeled documents. Throws CalibrationError when a document is unlabeled, no
// channels are given, or the UNKNOWN pool for a channel is single-class.
ThresholdTable calibrate(std::span<const DocumentRecord> docs,
                         std::span<const ChannelSpec> channels, const LanguageSet& known,
                         const CalibrationOptions& options = {},
                         const StatisticRegistry& registry = StatisticRegistry::defaults());

}  // namespace mgtd
