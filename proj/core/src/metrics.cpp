#include "mgtd/metrics.hpp"

#include <cmath>

#include "mgtd/error.hpp"

namespace mgtd {
namespace {

template <class Field>
double token_mean(const DocumentRecord& doc, Field field) {
  double sum = 0.0;
  for (const TokenRecord& t : doc.tokens) sum += field(t);
  return sum / static_cast<double>(doc.tokens.size());
}

template <class Field>
ChannelScore mean_channel(std::string_view name, const DocumentRecord& doc, Field field) {
  if (doc.tokens.empty()) return ChannelScore::invalid(std::string(name), "empty tokens");
  return ChannelScore::ok(std::string(name), token_mean(doc, field));
}

}  // namespace

std::string_view to_string(Orientation o) noexcept {
  return o == Orientation::higher_is_machine ? "higher_is_machine" : "lower_is_machine";
}

Orientation orientation_from_string(std::string_view s) {
  if (s == "higher_is_machine") return Orientation::higher_is_machine;
  if (s == "lower_is_machine") return Orientation::lower_is_machine;
  throw FormatError("unknown orientation \"" + std::string(s) + "\"");
}

ChannelScore likelihood(const DocumentRecord& doc) {
  return mean_channel(channel::likelihood, doc, [](const TokenRecord& t) { return t.logprob; });
}

ChannelScore entropy_score(const DocumentRecord& doc) {
  return mean_channel(channel::entropy, doc, [](const TokenRecord& t) { return t.entropy; });
}

ChannelScore rank_score(const DocumentRecord& doc) {
  return mean_channel(channel::rank, doc,
                      [](const TokenRecord& t) { return static_cast<double>(t.rank); });
}

ChannelScore log_rank_score(const DocumentRecord& doc) {
  return mean_channel(channel::log_rank, doc, [](const TokenRecord& t) {
    return std::log(static_cast<double>(t.rank));
  });
}

ChannelScore binoculars_score(const DocumentRecord& doc) {
  const std::string name(channel::binoculars);
  if (doc.tokens.empty()) return ChannelScore::invalid(name, "empty tokens");
  const double log_ppl = -token_mean(doc, [](const TokenRecord& t) { return t.logprob; });
  const double x_log_ppl = token_mean(doc, [](const TokenRecord& t) { return t.xent; });
  if (x_log_ppl < kBinocularsMinDenominator)
    return ChannelScore::invalid(name, "degenerate denominator");
  return ChannelScore::ok(name, log_ppl / x_log_ppl);
}

ChannelScore classifier_score(const DocumentRecord& doc, std::string_view name) {
  auto it = doc.classifier_probs.find(std::string(name));
  if (it == doc.classifier_probs.end())
    return ChannelScore::invalid(std::string(name), "classifier probability missing");
  return ChannelScore::ok(std::string(name), it->second);
}

StatisticRegistry::StatisticRegistry() {
  entries_.emplace(channel::likelihood, Entry{Orientation::higher_is_machine, &likelihood});
  entries_.emplace(channel::entropy, Entry{Orientation::lower_is_machine, &entropy_score});
  entries_.emplace(channel::rank, Entry{Orientation::lower_is_machine, &rank_score});
  entries_.emplace(channel::log_rank, Entry{Orientation::lower_is_machine, &log_rank_score});
  entries_.emplace(channel::binoculars, Entry{Orientation::lower_is_machine, &binoculars_score});
  entries_.emplace(channel::llm_deviation, Entry{Orientation::higher_is_machine, {}});
}

const StatisticRegistry& StatisticRegistry::defaults() {
  static const StatisticRegistry registry;
  return registry;
}

void StatisticRegistry::add(std::string name, Orientation orientation, StatisticFn fn) {
  if (!fn) throw ConfigError("statistic \"" + name + "\" registered without an implementation");
  auto it = entries_.find(name);
  if (it != entries_.end() && it->second.fn)
    throw ConfigError("statistic \"" + name + "\" is already registered");
  entries_.insert_or_assign(std::move(name), Entry{orientation, std::move(fn)});
}

bool StatisticRegistry::contains(std::string_view name) const {
  return entries_.find(name) != entries_.end();
}

bool StatisticRegistry::has_implementation(std::string_view name) const {
  auto it = entries_.find(name);
  return it != entries_.end() && static_cast<bool>(it->second.fn);
}

Orientation StatisticRegistry::orientation(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end())
    throw ConfigError("unknown statistical channel \"" + std::string(name) + "\"");
  return it->second.orientation;
}

ChannelScore StatisticRegistry::compute(std::string_view name, const DocumentRecord& doc) const {
  auto it = entries_.find(name);
  if (it == entries_.end())
    throw ConfigError("unknown statistical channel \"" + std::string(name) + "\"");
  if (!it->second.fn) return ChannelScore::invalid(std::string(name), "no implementation registered");
  ChannelScore s = it->second.fn(doc);
  s.channel = std::string(name);
  return s;
}

std::vector<std::string> StatisticRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

ChannelSpec statistical_channel(std::string_view name, const StatisticRegistry& registry) {
  return {std::string(name), ChannelKind::statistical, registry.orientation(name)};
}

ChannelSpec classifier_channel(std::string name) {
  return {std::move(name), ChannelKind::classifier, Orientation::higher_is_machine};
}

ChannelScore score_channel(const DocumentRecord& doc, const ChannelSpec& spec,
                           const StatisticRegistry& registry) {
  if (spec.kind == ChannelKind::classifier) return classifier_score(doc, spec.name);
  return registry.compute(spec.name, doc);
}

std::map<std::string, ChannelScore> score_all(const DocumentRecord& doc,
                                              std::span<const ChannelSpec> channels,
                                              const StatisticRegistry& registry) {
  std::map<std::string, ChannelScore> out;
  for (const ChannelSpec& spec : channels) out.insert_or_assign(spec.name, score_channel(doc, spec, registry));
  return out;
}

}  // namespace mgtd
