#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mgtd/records.hpp"

namespace mgtd {

inline constexpr char32_t kZeroWidthJoiner = U'\u200D';

// Character -> visually confusable replacement.
class ConfusableMap {
 public:
  ConfusableMap() = default;
  explicit ConfusableMap(std::unordered_map<char32_t, char32_t> map) : map_(std::move(map)) {}

  // Built-in Latin <-> Cyrillic/Greek table.
  static const ConfusableMap& builtin();
  // JSON object of single-character strings, e.g. {"a": "а"}.
  static ConfusableMap parse(std::istream& in);
  static ConfusableMap load_file(const std::string& path);

  std::optional<char32_t> lookup(char32_t c) const;
  std::size_t size() const noexcept { return map_.size(); }
  const std::unordered_map<char32_t, char32_t>& raw() const noexcept { return map_; }

 private:
  std::unordered_map<char32_t, char32_t> map_;
};

using ObfuscationRng = std::mt19937_64;

// Replaces each mappable character with probability char_rate. Code-point
// count is preserved.
std::string homoglyph_obfuscate(std::string_view text, double char_rate, ObfuscationRng& rng,
                                const ConfusableMap& map = ConfusableMap::builtin());

// Inserts U+200D after each character with probability char_rate.
std::string zwj_insert(std::string_view text, double char_rate, ObfuscationRng& rng);

std::string strip_zwj(std::string_view text);

struct ObfuscationPlan {
  double sample_rate = 0.2;  // fraction of documents to obfuscate
  double char_rate = 0.1;    // per-character probability inside a document
  std::uint64_t seed = 0;

  // Throws ConfigError when a rate is outside [0, 1].
  void validate() const;
  // round(sample_rate * n), half away from zero.
  std::size_t target_count(std::size_t n) const;
};

struct ObfuscationResult {
  std::vector<DocumentRecord> docs;
  std::vector<std::string> altered_ids;  // in dataset order
  std::vector<std::string> warnings;
};

// Picks target_count(n) documents with non-empty text in seeded random order
// and runs homoglyph_obfuscate then zwj_insert on each. A selected document
// always changes: if both passes happen to leave it intact, one ZWJ is
// inserted at a random position. Documents without text are skipped with a
// warning and the next candidate is drawn.
ObfuscationResult obfuscate_dataset(std::span<const DocumentRecord> docs,
                                    const ObfuscationPlan& plan,
                                    const ConfusableMap& map = ConfusableMap::builtin());

}  // namespace mgtd
