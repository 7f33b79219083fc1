#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgtd/langgate.hpp"
#include "mgtd/metrics.hpp"

namespace mgtd {

enum class VoteMode {
  two_step,   // majority of 3 statistical channels, then majority with 2 classifiers
  fixed_one,  // classifiers vote machine only at probability 1; 3-way majority
  stat_only,  // majority of 3 statistical channels
  stat5,      // flat majority of 5 statistical channels
};

std::string_view to_string(VoteMode m) noexcept;
VoteMode vote_mode_from_string(std::string_view s);

inline constexpr double kDefaultEpsilonOne = 1e-9;

struct PipelineConfig {
  VoteMode mode = VoteMode::two_step;
  std::vector<std::string> stat_channels;
  std::vector<std::string> clf_channels;
  LanguageSet known_languages = official_languages();
  std::size_t min_samples = 5;
  double epsilon_one = kDefaultEpsilonOne;
  std::optional<std::string> table_path;

  // Named system variants: LLM2S3, rLLM2S3, S3, S5, LLM2B1.
  static PipelineConfig preset(std::string_view variant);

  // Throws ConfigError when channel counts do not fit the mode, names repeat,
  // or a statistical channel is not registered.
  void validate(const StatisticRegistry& registry = StatisticRegistry::defaults()) const;

  // Statistical channels first, then classifier channels.
  std::vector<ChannelSpec> channels(
      const StatisticRegistry& registry = StatisticRegistry::defaults()) const;

  // Channels decided by a calibrated threshold. In fixed_one mode the
  // classifier channels are excluded.
  std::vector<ChannelSpec> thresholded_channels(
      const StatisticRegistry& registry = StatisticRegistry::defaults()) const;

  // Stable JSON rendering used for hashing.
  std::string canonical_json() const;

  bool operator==(const PipelineConfig&) const = default;
};

// Accepts an optional "variant" key that seeds the preset before the other
// keys override it. Throws FormatError / ConfigError.
PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config_file(const std::string& path);

}  // namespace mgtd
