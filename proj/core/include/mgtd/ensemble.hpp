#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgtd/langgate.hpp"
#include "mgtd/metrics.hpp"
#include "mgtd/pipeline_config.hpp"
#include "mgtd/records.hpp"
#include "mgtd/threshold_table.hpp"

namespace mgtd {

struct Prediction {
  std::string doc_id;
  Bucket bucket;
  // nullopt when the channel could not be scored.
  std::map<std::string, std::optional<Label>> channel_decisions;
  std::optional<Label> stat_vote;  // two_step only
  Label final_label = Label::human;
  // Not serialized; nullopt for predictions read back from disk.
  std::optional<VoteMode> mode;

  bool operator==(const Prediction&) const = default;
};

// Machine iff the orientation-normalized score reaches the threshold.
// nullopt for an invalid score.
std::optional<Label> apply_threshold(const ChannelScore& score, const ThresholdEntry& entry);

// Machine iff the probability is at least 1 - epsilon.
std::optional<Label> fixed_one_decision(const ChannelScore& score,
                                        double epsilon = kDefaultEpsilonOne);

// Odd number of voters required.
Label majority(std::span<const Label> votes);
Label stat_majority(Label a, Label b, Label c);
Label final_vote(Label stat, Label clf1, Label clf2);

// Throws ConfigError if the table cannot serve the config: a thresholded
// channel without an UNKNOWN entry, an orientation mismatch, or a different
// known-language set.
void check_table(const ThresholdTable& table, const PipelineConfig& config,
                 const StatisticRegistry& registry = StatisticRegistry::defaults());

// Absent decisions count as human.
Prediction predict(const DocumentRecord& doc, const ThresholdTable& table,
                   const PipelineConfig& config,
                   const StatisticRegistry& registry = StatisticRegistry::defaults());

std::string to_json_line(const Prediction& p);
Prediction parse_prediction(std::string_view json, std::size_t line = 0);
std::vector<Prediction> read_predictions(std::istream& in);
std::vector<Prediction> read_predictions_file(const std::string& path);
void write_prediction(std::ostream& out, const Prediction& p);

}  // namespace mgtd
