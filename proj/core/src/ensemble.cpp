#include "mgtd/ensemble.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "json_util.hpp"
#include "mgtd/error.hpp"

namespace mgtd {

std::optional<Label> apply_threshold(const ChannelScore& score, const ThresholdEntry& entry) {
  if (!score.valid) return std::nullopt;
  if (score.channel != entry.channel)
    throw ConfigError("threshold for \"" + entry.channel + "\" applied to channel \"" +
                      score.channel + "\"");
  const bool machine = entry.orientation == Orientation::higher_is_machine
                           ? score.value >= entry.threshold
                           : -score.value >= -entry.threshold;
  return label_from_bool(machine);
}

std::optional<Label> fixed_one_decision(const ChannelScore& score, double epsilon) {
  if (!score.valid) return std::nullopt;
  return label_from_bool(score.value >= 1.0 - epsilon);
}

Label majority(std::span<const Label> votes) {
  if (votes.empty() || votes.size() % 2 == 0)
    throw ConfigError("majority vote needs an odd number of voters");
  const auto machine = std::count(votes.begin(), votes.end(), Label::machine);
  return label_from_bool(static_cast<std::size_t>(machine) * 2 > votes.size());
}

Label stat_majority(Label a, Label b, Label c) {
  const Label v[] = {a, b, c};
  return majority(v);
}

Label final_vote(Label stat, Label clf1, Label clf2) {
  const Label v[] = {stat, clf1, clf2};
  return majority(v);
}

void check_table(const ThresholdTable& table, const PipelineConfig& config,
                 const StatisticRegistry& registry) {
  if (table.known_languages != config.known_languages)
    throw ConfigError("threshold table was calibrated for a different known-language set");
  for (const ChannelSpec& spec : config.thresholded_channels(registry)) {
    const ThresholdEntry* e = table.find(spec.name, Bucket::unknown());
    if (!e) throw ConfigError("threshold table has no UNKNOWN entry for channel \"" + spec.name + "\"");
    if (e->orientation != spec.orientation)
      throw ConfigError("orientation of channel \"" + spec.name + "\" differs from the table");
  }
}

namespace {

Label vote_or_human(const std::optional<Label>& d) { return d.value_or(Label::human); }

}  // namespace

Prediction predict(const DocumentRecord& doc, const ThresholdTable& table,
                   const PipelineConfig& config, const StatisticRegistry& registry) {
  Prediction p;
  p.doc_id = doc.id;
  p.bucket = resolve_bucket(doc, table.known_languages);
  p.mode = config.mode;

  std::vector<Label> stat;
  for (const std::string& name : config.stat_channels) {
    const ChannelScore s = registry.compute(name, doc);
    const auto d = apply_threshold(s, table.lookup(name, p.bucket));
    p.channel_decisions.insert_or_assign(name, d);
    stat.push_back(vote_or_human(d));
  }
  std::vector<Label> clf;
  for (const std::string& name : config.clf_channels) {
    const ChannelScore s = classifier_score(doc, name);
    const auto d = config.mode == VoteMode::fixed_one
                       ? fixed_one_decision(s, config.epsilon_one)
                       : apply_threshold(s, table.lookup(name, p.bucket));
    p.channel_decisions.insert_or_assign(name, d);
    clf.push_back(vote_or_human(d));
  }

  switch (config.mode) {
    case VoteMode::two_step: {
      if (stat.size() != 3 || clf.size() != 2) throw ConfigError("two_step needs 3 + 2 channels");
      const Label sv = stat_majority(stat[0], stat[1], stat[2]);
      p.stat_vote = sv;
      p.final_label = final_vote(sv, clf[0], clf[1]);
      break;
    }
    case VoteMode::fixed_one: {
      if (stat.size() != 1 || clf.size() != 2) throw ConfigError("fixed_one needs 1 + 2 channels");
      const Label v[] = {clf[0], clf[1], stat[0]};
      p.final_label = majority(v);
      break;
    }
    case VoteMode::stat_only:
    case VoteMode::stat5:
      p.final_label = majority(stat);
      break;
  }
  return p;
}

std::string to_json_line(const Prediction& p) {
  detail::OrderedJson j;
  j["id"] = p.doc_id;
  j["bucket"] = p.bucket.str();
  detail::OrderedJson decisions = detail::OrderedJson::object();
  for (const auto& [name, d] : p.channel_decisions) {
    decisions[name] = d ? detail::OrderedJson(to_int(*d)) : detail::OrderedJson(nullptr);
  }
  j["decisions"] = std::move(decisions);
  if (p.stat_vote) j["stat_vote"] = to_int(*p.stat_vote);
  j["final"] = to_int(p.final_label);
  return j.dump();
}

namespace {

Label parse_vote(const detail::Json& v, const char* key, std::size_t line) {
  const long long n = detail::as_integer(v, key, line);
  if (n != 0 && n != 1) throw FormatError(std::string("\"") + key + "\" must be 0 or 1", line);
  return label_from_bool(n == 1);
}

}  // namespace

Prediction parse_prediction(std::string_view json, std::size_t line) {
  const detail::Json j = detail::parse_json(json, line, "prediction");
  if (!j.is_object()) throw FormatError("prediction must be a JSON object", line);
  Prediction p;
  p.doc_id = detail::as_string(detail::require(j, "id", line), "id", line);
  p.bucket = Bucket::parse(detail::as_string(detail::require(j, "bucket", line), "bucket", line));
  const detail::Json& decisions = detail::require(j, "decisions", line);
  if (!decisions.is_object()) throw FormatError("\"decisions\" must be an object", line);
  for (auto it = decisions.begin(); it != decisions.end(); ++it) {
    p.channel_decisions.emplace(
        it.key(), it->is_null() ? std::nullopt : std::optional(parse_vote(*it, "decisions", line)));
  }
  if (auto it = j.find("stat_vote"); it != j.end() && !it->is_null())
    p.stat_vote = parse_vote(*it, "stat_vote", line);
  p.final_label = parse_vote(detail::require(j, "final", line), "final", line);
  return p;
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    out.push_back(parse_prediction(line, n));
  }
  if (in.bad()) throw IoError("read failed after line " + std::to_string(n));
  return out;
}

std::vector<Prediction> read_predictions_file(const std::string& path) {
  auto in = detail::open_input(path);
  return read_predictions(in);
}

void write_prediction(std::ostream& out, const Prediction& p) { out << to_json_line(p) << '\n'; }

}  // namespace mgtd
