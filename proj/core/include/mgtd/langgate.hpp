#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "mgtd/records.hpp"

namespace mgtd {

using LanguageSet = std::set<std::string, std::less<>>;

// Calibration group of a document: a known language code or UNKNOWN.
class Bucket {
 public:
  static constexpr std::string_view kUnknownName = "UNKNOWN";

  Bucket() : code_(kUnknownName) {}

  static Bucket unknown() { return Bucket(); }
  static Bucket language(std::string code);
  // Parses either "UNKNOWN" or a language code.
  static Bucket parse(std::string_view s);

  bool is_unknown() const noexcept { return code_ == kUnknownName; }
  const std::string& str() const noexcept { return code_; }

  auto operator<=>(const Bucket&) const = default;

 private:
  explicit Bucket(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

// Identification confidence must be strictly above this to trust the tag.
inline constexpr double kLanguageConfidenceCutoff = 0.5;

// The eight languages of the shared-task train/dev sets.
LanguageSet official_languages();

// `lang` if it is known and (when given) its confidence exceeds the cutoff,
// otherwise UNKNOWN. A tag without a confidence is trusted as metadata.
// Throws FormatError when conf is outside [0, 1].
Bucket resolve_bucket(const std::optional<std::string>& lang, std::optional<double> conf,
                      const LanguageSet& known);

inline Bucket resolve_bucket(const DocumentRecord& doc, const LanguageSet& known) {
  return resolve_bucket(doc.language, doc.language_confidence, known);
}

}  // namespace mgtd
