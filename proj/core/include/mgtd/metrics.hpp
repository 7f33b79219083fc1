#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgtd/records.hpp"

namespace mgtd {

enum class Orientation { higher_is_machine, lower_is_machine };
enum class ChannelKind { statistical, classifier };

std::string_view to_string(Orientation o) noexcept;
Orientation orientation_from_string(std::string_view s);

// A named score source and the direction in which machine text lies.
struct ChannelSpec {
  std::string name;
  ChannelKind kind = ChannelKind::statistical;
  Orientation orientation = Orientation::higher_is_machine;

  bool operator==(const ChannelSpec&) const = default;
};

struct ChannelScore {
  std::string channel;
  double value = 0.0;
  bool valid = false;
  std::string reason;  // why the score is invalid; empty when valid

  static ChannelScore ok(std::string channel, double value) {
    return {std::move(channel), value, true, {}};
  }
  static ChannelScore invalid(std::string channel, std::string reason) {
    return {std::move(channel), 0.0, false, std::move(reason)};
  }
};

namespace channel {
inline constexpr std::string_view likelihood = "likelihood";
inline constexpr std::string_view entropy = "entropy";
inline constexpr std::string_view rank = "rank";
inline constexpr std::string_view log_rank = "log_rank";
inline constexpr std::string_view binoculars = "binoculars";
// Reserved plug-in slot. No formula ships with the library.
inline constexpr std::string_view llm_deviation = "llm_deviation";
}  // namespace channel

// Binoculars denominators below this are treated as degenerate.
inline constexpr double kBinocularsMinDenominator = 1e-12;

// Mean observer log-prob. Higher means machine.
ChannelScore likelihood(const DocumentRecord& doc);
// Mean predictive entropy. Lower means machine.
ChannelScore entropy_score(const DocumentRecord& doc);
// Mean observed-token rank. Lower means machine.
ChannelScore rank_score(const DocumentRecord& doc);
// Mean ln(rank). Lower means machine.
ChannelScore log_rank_score(const DocumentRecord& doc);
// Observer log-perplexity over observer/performer cross log-perplexity.
// Lower means machine.
ChannelScore binoculars_score(const DocumentRecord& doc);

// Machine-class probability stored under `name`; invalid when absent.
ChannelScore classifier_score(const DocumentRecord& doc, std::string_view name);

using StatisticFn = std::function<ChannelScore(const DocumentRecord&)>;

// Name -> statistical channel implementation. A default-constructed registry
// holds the five built-in statistics plus the empty llm_deviation slot.
class StatisticRegistry {
 public:
  StatisticRegistry();

  // Process-wide registry with only the built-ins.
  static const StatisticRegistry& defaults();

  // Adds a plug-in, or fills a reserved slot. Throws ConfigError when the name
  // is already bound to an implementation.
  void add(std::string name, Orientation orientation, StatisticFn fn);

  bool contains(std::string_view name) const;
  bool has_implementation(std::string_view name) const;
  Orientation orientation(std::string_view name) const;

  // Throws ConfigError for unknown names. An unfilled slot yields an invalid
  // score.
  ChannelScore compute(std::string_view name, const DocumentRecord& doc) const;

  std::vector<std::string> names() const;

 private:
  struct Entry {
    Orientation orientation;
    StatisticFn fn;  // empty for a reserved slot
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

ChannelSpec statistical_channel(std::string_view name,
                                const StatisticRegistry& registry = StatisticRegistry::defaults());
ChannelSpec classifier_channel(std::string name);

ChannelScore score_channel(const DocumentRecord& doc, const ChannelSpec& spec,
                           const StatisticRegistry& registry = StatisticRegistry::defaults());

std::map<std::string, ChannelScore> score_all(
    const DocumentRecord& doc, std::span<const ChannelSpec> channels,
    const StatisticRegistry& registry = StatisticRegistry::defaults());

}  // namespace mgtd
