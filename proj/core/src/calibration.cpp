#include "mgtd/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mgtd/digest.hpp"
#include "mgtd/error.hpp"

namespace mgtd {
namespace {

// Maps between original score units and "higher is machine" units. The map is
// its own inverse.
double normalize(double score, Orientation o) {
  return o == Orientation::higher_is_machine ? score : -score;
}

struct Pool {
  std::vector<double> scores;
  std::vector<Label> labels;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;

  void add(double score, Label label) {
    scores.push_back(score);
    labels.push_back(label);
    (label == Label::machine ? n_pos : n_neg) += 1;
  }
};

ThresholdEntry fit_entry(const ChannelSpec& spec, const Bucket& bucket, const Pool& pool) {
  const RocCurve curve = build_roc(pool.scores, pool.labels, spec.orientation);
  const YoudenCut cut = youden_threshold(curve);
  return {spec.name, bucket, cut.threshold, spec.orientation, cut.j_stat, pool.n_pos, pool.n_neg};
}

}  // namespace

RocCurve build_roc(std::span<const double> scores, std::span<const Label> labels,
                   Orientation orientation) {
  if (scores.size() != labels.size())
    throw CalibrationError("scores and labels differ in length");
  if (scores.empty()) throw CalibrationError("no calibration samples");

  RocCurve curve;
  curve.orientation = orientation;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw CalibrationError("non-finite calibration score");
    (labels[i] == Label::machine ? curve.positives : curve.negatives) += 1;
  }
  if (curve.positives == 0 || curve.negatives == 0)
    throw CalibrationError("degenerate calibration class");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return normalize(scores[a], orientation) > normalize(scores[b], orientation);
  });

  const auto pos = static_cast<double>(curve.positives);
  const auto neg = static_cast<double>(curve.negatives);
  curve.points.push_back(
      {0.0, 0.0, normalize(std::numeric_limits<double>::infinity(), orientation)});

  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double group = normalize(scores[order[i]], orientation);
    while (i < order.size() && normalize(scores[order[i]], orientation) == group) {
      (labels[order[i]] == Label::machine ? tp : fp) += 1;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / neg, static_cast<double>(tp) / pos,
                            normalize(group, orientation)});
  }
  return curve;
}

double auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const RocPoint& a = curve.points[i - 1];
    const RocPoint& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
  }
  return area;
}

YoudenCut youden_threshold(const RocCurve& curve) {
  const auto& pts = curve.points;
  if (pts.size() < 2) throw CalibrationError("ROC curve has no score groups");

  std::size_t best = 0;
  double best_j = pts[0].tpr - pts[0].fpr;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double j = pts[i].tpr - pts[i].fpr;
    // Strict comparisons keep the earlier, more conservative cut on full ties.
    if (j > best_j || (j == best_j && pts[i].tpr > pts[best].tpr)) {
      best = i;
      best_j = j;
    }
  }

  const Orientation o = curve.orientation;
  if (!(best_j > 0.0)) {
    const double top = normalize(pts[1].threshold, o);
    return {normalize(std::nextafter(top, std::numeric_limits<double>::infinity()), o), 0.0};
  }

  // best_j > 0 rules out both the leading (0,0) and the trailing (1,1) point.
  const double hi = normalize(pts[best].threshold, o);
  const double lo = normalize(pts[best + 1].threshold, o);
  double mid = std::midpoint(lo, hi);
  if (!(mid > lo)) mid = hi;  // adjacent doubles
  return {normalize(mid, o), best_j};
}

ThresholdTable calibrate(std::span<const DocumentRecord> docs,
                         std::span<const ChannelSpec> channels, const LanguageSet& known,
                         const CalibrationOptions& options, const StatisticRegistry& registry) {
  if (channels.empty()) throw CalibrationError("no channels to calibrate");
  if (docs.empty()) throw CalibrationError("no calibration documents");

  std::vector<Bucket> buckets;
  buckets.reserve(docs.size());
  std::string ids;
  for (const DocumentRecord& doc : docs) {
    if (!doc.label) throw CalibrationError("labels required: document \"" + doc.id + "\" has none");
    buckets.push_back(resolve_bucket(doc, known));
    ids += doc.id;
    ids += '\n';
  }

  const std::size_t floor = std::max<std::size_t>(options.min_samples, 1);
  ThresholdTable table;
  table.known_languages = known;
  table.meta.n_docs = docs.size();
  table.meta.min_samples = options.min_samples;
  table.meta.dataset_digest = hex_digest(fnv1a64(ids));

  for (const ChannelSpec& spec : channels) {
    Pool pooled;
    std::map<Bucket, Pool> per_bucket;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const ChannelScore s = score_channel(docs[i], spec, registry);
      if (!s.valid) continue;
      pooled.add(s.value, *docs[i].label);
      if (!buckets[i].is_unknown()) per_bucket[buckets[i]].add(s.value, *docs[i].label);
    }
    if (pooled.n_pos == 0 || pooled.n_neg == 0) {
      throw CalibrationError("degenerate calibration class: channel \"" + spec.name +
                             "\" has " + std::to_string(pooled.n_pos) + " machine and " +
                             std::to_string(pooled.n_neg) + " human scored documents");
    }
    table.insert(fit_entry(spec, Bucket::unknown(), pooled));
    for (const auto& [bucket, pool] : per_bucket) {
      if (pool.n_pos >= floor && pool.n_neg >= floor) table.insert(fit_entry(spec, bucket, pool));
    }
  }
  return table;
}

}  // namespace mgtd
