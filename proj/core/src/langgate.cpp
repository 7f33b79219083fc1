#include "mgtd/langgate.hpp"

#include "mgtd/error.hpp"

namespace mgtd {

Bucket Bucket::language(std::string code) {
  if (code.empty()) throw FormatError("empty language code");
  if (code == kUnknownName) return Bucket();
  return Bucket(std::move(code));
}

Bucket Bucket::parse(std::string_view s) { return language(std::string(s)); }

LanguageSet official_languages() { return {"ar", "bg", "de", "en", "id", "ru", "ur", "zh"}; }

Bucket resolve_bucket(const std::optional<std::string>& lang, std::optional<double> conf,
                      const LanguageSet& known) {
  if (conf && !(*conf >= 0.0 && *conf <= 1.0))
    throw FormatError("language confidence out of range [0,1]");
  if (!lang || !known.contains(*lang)) return Bucket::unknown();
  if (conf && !(*conf > kLanguageConfidenceCutoff)) return Bucket::unknown();
  return Bucket::language(*lang);
}

}  // namespace mgtd
