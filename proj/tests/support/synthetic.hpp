#pragma once

// Random record generators for property tests and end-to-end runs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mgtd/records.hpp"
#include "mgtd/threshold_table.hpp"
#include "mgtd/utf8.hpp"

namespace mgtd::synth {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Random valid Unicode scalar values, biased toward ASCII, Cyrillic and the
// joiner itself.
inline std::string random_text(Rng& rng, std::size_t max_len = 40) {
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::u32string cps;
  for (std::size_t i = 0; i < len; ++i) {
    const int bucket = std::uniform_int_distribution<int>(0, 9)(rng);
    char32_t c;
    if (bucket < 5) c = std::uniform_int_distribution<char32_t>(0x20, 0x7E)(rng);
    else if (bucket < 7) c = std::uniform_int_distribution<char32_t>(0x400, 0x4FF)(rng);
    else if (bucket == 7) c = U'\u200D';
    else {
      do c = std::uniform_int_distribution<char32_t>(0x80, 0x10FFFF)(rng);
      while (c >= 0xD800 && c <= 0xDFFF);
    }
    cps.push_back(c);
  }
  return utf8::encode(cps);
}

// Doubles spanning many magnitudes, exercising shortest-repr serialization.
inline double wild_nonneg(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return 0.0;
    case 1: return uniform(rng, 0.0, 1.0);
    case 2: return std::ldexp(uniform(rng, 0.5, 1.0), std::uniform_int_distribution<int>(-60, 20)(rng));
    default: return uniform(rng, 0.0, 20.0);
  }
}

inline TokenRecord random_token(Rng& rng) {
  TokenRecord t;
  t.logprob = -wild_nonneg(rng);
  t.entropy = wild_nonneg(rng);
  t.rank = coin(rng, 0.3) ? 1 : std::uniform_int_distribution<std::int64_t>(1, 250000)(rng);
  t.xent = wild_nonneg(rng);
  return t;
}

inline DocumentRecord random_document(Rng& rng, const std::string& id) {
  static const char* kLangs[] = {"en", "de", "ar", "zh", "ru", "it", "bg", "ur", "id", "xx"};
  DocumentRecord d;
  d.id = id;
  if (coin(rng)) d.text = random_text(rng);
  if (coin(rng, 0.8)) {
    d.language = kLangs[std::uniform_int_distribution<int>(0, 9)(rng)];
    if (coin(rng, 0.8)) d.language_confidence = uniform(rng, 0.0, 1.0);
  }
  if (coin(rng, 0.7)) d.label = label_from_bool(coin(rng));
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 12)(rng);
  for (std::size_t i = 0; i < n; ++i) d.tokens.push_back(random_token(rng));
  for (const char* clf : {"falcon", "mistral", "llama"}) {
    if (coin(rng, 0.6)) d.classifier_probs[clf] = coin(rng, 0.1) ? 1.0 : uniform(rng, 0.0, 1.0);
  }
  return d;
}

inline std::vector<DocumentRecord> random_corpus(Rng& rng, std::size_t n) {
  std::vector<DocumentRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_document(rng, "doc-" + std::to_string(i)));
  return out;
}

// A document whose entropy, rank and binoculars scores take the given values
// exactly (rank up to 1/10 granularity). Uses 10 tokens with xent = 1 so the
// binoculars score is -mean(lp).
inline DocumentRecord stat_document(std::string id, Label label, double entropy, double rank,
                                    double binoculars) {
  DocumentRecord d;
  d.id = std::move(id);
  d.label = label;
  constexpr int kTokens = 10;
  const auto total = std::max<std::int64_t>(kTokens, std::llround(rank * kTokens));
  for (int i = 0; i < kTokens; ++i) {
    TokenRecord t;
    t.entropy = std::max(0.0, entropy);
    t.logprob = -std::max(0.0, binoculars);
    t.xent = 1.0;
    t.rank = total / kTokens + (i < total % kTokens ? 1 : 0);
    d.tokens.push_back(t);
  }
  return d;
}

struct SeparableSpec {
  std::vector<std::string> languages{"en", "de", "ar"};
  std::size_t docs_per_language = 200;
  double machine_mean = 0.8;  // in machine direction
  double human_mean = 0.2;
  double stddev = 0.05;
  double clf_machine = 0.99;
  double clf_human = 0.01;
  double language_confidence = 0.95;
};

// Balanced classes per language. Statistical channels are lower-is-machine,
// so a machine-direction draw x becomes the score 1 - x (rank: 1 + 10(1 - x)).
inline std::vector<DocumentRecord> separable_corpus(const SeparableSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DocumentRecord> docs;
  for (const std::string& lang : spec.languages) {
    for (std::size_t i = 0; i < spec.docs_per_language; ++i) {
      const Label label = label_from_bool(i % 2 == 0);
      const double mean = label == Label::machine ? spec.machine_mean : spec.human_mean;
      std::normal_distribution<double> draw(mean, spec.stddev);
      const double e = 1.0 - draw(rng);
      const double r = 1.0 + 10.0 * (1.0 - draw(rng));
      const double b = 1.0 - draw(rng);
      DocumentRecord d = stat_document(lang + "-" + std::to_string(i) + "-" + std::to_string(seed),
                                       label, e, r, b);
      d.language = lang;
      d.language_confidence = spec.language_confidence;
      const double p = label == Label::machine ? spec.clf_machine : spec.clf_human;
      d.classifier_probs = {{"falcon", p}, {"mistral", p}};
      docs.push_back(std::move(d));
    }
  }
  return docs;
}

// Table with wide-ranging thresholds over a few channels and buckets. Every
// channel keeps its UNKNOWN entry.
inline ThresholdTable random_table(Rng& rng) {
  ThresholdTable t;
  t.known_languages = {"en", "de", "ar"};
  t.meta = {static_cast<std::size_t>(rng() % 1000), 5, "abc", "def"};
  for (std::string ch : {"entropy", "rank", "falcon"}) {
    for (std::string b : {"UNKNOWN", "en", "de"}) {
      if (b != "UNKNOWN" && coin(rng)) continue;
      t.insert({ch, Bucket::parse(b), uniform(rng, -50, 50) * wild_nonneg(rng),
                coin(rng) ? Orientation::higher_is_machine : Orientation::lower_is_machine,
                uniform(rng, -1, 1), 1 + rng() % 100, rng() % 100});
    }
  }
  return t;
}

}  // namespace mgtd::synth
