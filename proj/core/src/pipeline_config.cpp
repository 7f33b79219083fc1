#include "mgtd/pipeline_config.hpp"

#include <istream>
#include <iterator>
#include <set>

#include "json_util.hpp"
#include "mgtd/error.hpp"

namespace mgtd {

using detail::Json;
using detail::OrderedJson;

std::string_view to_string(VoteMode m) noexcept {
  switch (m) {
    case VoteMode::two_step: return "two_step";
    case VoteMode::fixed_one: return "fixed_one";
    case VoteMode::stat_only: return "stat_only";
    case VoteMode::stat5: return "stat5";
  }
  return "two_step";
}

VoteMode vote_mode_from_string(std::string_view s) {
  for (VoteMode m : {VoteMode::two_step, VoteMode::fixed_one, VoteMode::stat_only, VoteMode::stat5}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError("unknown mode \"" + std::string(s) + "\"");
}

PipelineConfig PipelineConfig::preset(std::string_view variant) {
  const std::string ent(channel::entropy), rnk(channel::rank), bino(channel::binoculars);
  PipelineConfig c;
  if (variant == "LLM2S3" || variant == "rLLM2S3") {
    c.mode = VoteMode::two_step;
    c.stat_channels = {ent, rnk, bino};
    c.clf_channels = {"falcon", "mistral"};
  } else if (variant == "S3") {
    c.mode = VoteMode::stat_only;
    c.stat_channels = {ent, rnk, bino};
  } else if (variant == "S5") {
    c.mode = VoteMode::stat5;
    c.stat_channels = {std::string(channel::likelihood), ent, rnk, std::string(channel::log_rank),
                       std::string(channel::llm_deviation)};
  } else if (variant == "LLM2B1") {
    c.mode = VoteMode::fixed_one;
    c.stat_channels = {bino};
    c.clf_channels = {"falcon", "mistral"};
  } else {
    throw ConfigError("unknown variant \"" + std::string(variant) + "\"");
  }
  return c;
}

void PipelineConfig::validate(const StatisticRegistry& registry) const {
  std::size_t want_stat = 0;
  std::size_t want_clf = 0;
  switch (mode) {
    case VoteMode::two_step: want_stat = 3; want_clf = 2; break;
    case VoteMode::fixed_one: want_stat = 1; want_clf = 2; break;
    case VoteMode::stat_only: want_stat = 3; want_clf = 0; break;
    case VoteMode::stat5: want_stat = 5; want_clf = 0; break;
  }
  const std::string m(to_string(mode));
  if (stat_channels.size() != want_stat)
    throw ConfigError("mode " + m + " needs " + std::to_string(want_stat) +
                      " statistical channels, got " + std::to_string(stat_channels.size()));
  if (clf_channels.size() != want_clf)
    throw ConfigError("mode " + m + " needs " + std::to_string(want_clf) +
                      " classifier channels, got " + std::to_string(clf_channels.size()));

  std::set<std::string> seen;
  for (const std::string& name : stat_channels) {
    if (!registry.contains(name)) throw ConfigError("unknown statistical channel \"" + name + "\"");
    if (!seen.insert(name).second) throw ConfigError("duplicate channel \"" + name + "\"");
  }
  for (const std::string& name : clf_channels) {
    if (name.empty()) throw ConfigError("empty classifier channel name");
    if (!seen.insert(name).second) throw ConfigError("duplicate channel \"" + name + "\"");
  }
  if (min_samples == 0) throw ConfigError("min_samples must be >= 1");
  if (!(epsilon_one >= 0.0 && epsilon_one < 1.0)) throw ConfigError("epsilon_one must be in [0,1)");
  for (const std::string& l : known_languages) {
    if (l.empty() || l == Bucket::kUnknownName) throw ConfigError("invalid known language \"" + l + "\"");
  }
}

std::vector<ChannelSpec> PipelineConfig::channels(const StatisticRegistry& registry) const {
  std::vector<ChannelSpec> out;
  for (const std::string& name : stat_channels) out.push_back(statistical_channel(name, registry));
  for (const std::string& name : clf_channels) out.push_back(classifier_channel(name));
  return out;
}

std::vector<ChannelSpec> PipelineConfig::thresholded_channels(
    const StatisticRegistry& registry) const {
  std::vector<ChannelSpec> out;
  for (const std::string& name : stat_channels) out.push_back(statistical_channel(name, registry));
  if (mode != VoteMode::fixed_one) {
    for (const std::string& name : clf_channels) out.push_back(classifier_channel(name));
  }
  return out;
}

std::string PipelineConfig::canonical_json() const {
  OrderedJson j;
  j["mode"] = std::string(to_string(mode));
  j["stat_channels"] = stat_channels;
  j["clf_channels"] = clf_channels;
  j["known_languages"] = std::vector<std::string>(known_languages.begin(), known_languages.end());
  j["min_samples"] = min_samples;
  j["epsilon_one"] = epsilon_one;
  return j.dump();
}

namespace {

std::vector<std::string> string_list(const Json& v, const char* key) {
  if (!v.is_array()) throw FormatError(std::string("config \"") + key + "\" must be an array");
  std::vector<std::string> out;
  for (const Json& s : v) out.push_back(detail::as_string(s, key, 0));
  return out;
}

}  // namespace

PipelineConfig parse_config(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const Json j = detail::parse_json(text, 0, "config");
  if (!j.is_object()) throw FormatError("config must be a JSON object");

  static const std::set<std::string> kKeys = {"variant",         "mode",        "stat_channels",
                                              "clf_channels",    "known_languages", "min_samples",
                                              "epsilon_one",     "table"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kKeys.contains(it.key())) throw ConfigError("unknown config key \"" + it.key() + "\"");
  }

  PipelineConfig c;
  if (auto it = j.find("variant"); it != j.end())
    c = PipelineConfig::preset(detail::as_string(*it, "variant", 0));
  if (auto it = j.find("mode"); it != j.end())
    c.mode = vote_mode_from_string(detail::as_string(*it, "mode", 0));
  if (auto it = j.find("stat_channels"); it != j.end()) c.stat_channels = string_list(*it, "stat_channels");
  if (auto it = j.find("clf_channels"); it != j.end()) c.clf_channels = string_list(*it, "clf_channels");
  if (auto it = j.find("known_languages"); it != j.end()) {
    const auto langs = string_list(*it, "known_languages");
    c.known_languages = LanguageSet(langs.begin(), langs.end());
  }
  if (auto it = j.find("min_samples"); it != j.end()) {
    const long long n = detail::as_integer(*it, "min_samples", 0);
    if (n < 1) throw ConfigError("min_samples must be >= 1");
    c.min_samples = static_cast<std::size_t>(n);
  }
  if (auto it = j.find("epsilon_one"); it != j.end())
    c.epsilon_one = detail::as_real(*it, "epsilon_one", 0);
  if (auto it = j.find("table"); it != j.end()) c.table_path = detail::as_string(*it, "table", 0);

  c.validate();
  return c;
}

PipelineConfig load_config_file(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_config(in);
}

}  // namespace mgtd
