#include "mgtd/obfuscation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <numeric>

#include "json_util.hpp"
#include "mgtd/error.hpp"
#include "mgtd/utf8.hpp"

namespace mgtd {
namespace {

// Latin letters and their Cyrillic or Greek look-alikes. Each pair is used in
// both directions so Cyrillic text is perturbed as well.
constexpr std::pair<char32_t, char32_t> kLookalikes[] = {
    {U'a', U'а'}, {U'c', U'с'}, {U'e', U'е'}, {U'o', U'о'},
    {U'p', U'р'}, {U'x', U'х'}, {U'y', U'у'}, {U'i', U'і'},
    {U'j', U'ј'}, {U's', U'ѕ'}, {U'h', U'һ'}, {U'A', U'А'},
    {U'B', U'В'}, {U'C', U'С'}, {U'E', U'Е'}, {U'H', U'Н'},
    {U'K', U'К'}, {U'M', U'М'}, {U'O', U'О'}, {U'P', U'Р'},
    {U'T', U'Т'}, {U'X', U'Х'}, {U'I', U'І'}, {U'J', U'Ј'},
    {U'S', U'Ѕ'}, {U'v', U'ν'}, {U'u', U'υ'}, {U'N', U'Ν'},
    {U'Z', U'Ζ'}, {U'Y', U'Υ'},
};

bool draw(double rate, ObfuscationRng& rng) {
  if (rate <= 0.0) return false;
  if (rate >= 1.0) return true;
  return std::bernoulli_distribution(rate)(rng);
}

void check_rate(double rate, const char* what) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError(std::string(what) + " must be in [0,1]");
}

}  // namespace

const ConfusableMap& ConfusableMap::builtin() {
  static const ConfusableMap map = [] {
    std::unordered_map<char32_t, char32_t> m;
    for (const auto& [latin, other] : kLookalikes) {
      m.emplace(latin, other);
      m.emplace(other, latin);
    }
    return ConfusableMap(std::move(m));
  }();
  return map;
}

ConfusableMap ConfusableMap::parse(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const detail::Json j = detail::parse_json(text, 0, "confusable map");
  if (!j.is_object()) throw FormatError("confusable map must be a JSON object");
  std::unordered_map<char32_t, char32_t> m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::u32string from = utf8::decode(it.key());
    const std::u32string to = utf8::decode(detail::as_string(it.value(), "confusable map", 0));
    if (from.size() != 1 || to.size() != 1)
      throw FormatError("confusable map entries must be single characters");
    m[from[0]] = to[0];
  }
  return ConfusableMap(std::move(m));
}

ConfusableMap ConfusableMap::load_file(const std::string& path) {
  auto in = detail::open_input(path);
  return parse(in);
}

std::optional<char32_t> ConfusableMap::lookup(char32_t c) const {
  auto it = map_.find(c);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::string homoglyph_obfuscate(std::string_view text, double char_rate, ObfuscationRng& rng,
                                const ConfusableMap& map) {
  check_rate(char_rate, "char_rate");
  std::u32string cps = utf8::decode(text);
  for (char32_t& c : cps) {
    if (auto sub = map.lookup(c); sub && draw(char_rate, rng)) c = *sub;
  }
  return utf8::encode(cps);
}

std::string zwj_insert(std::string_view text, double char_rate, ObfuscationRng& rng) {
  check_rate(char_rate, "char_rate");
  const std::u32string cps = utf8::decode(text);
  std::u32string out;
  out.reserve(cps.size() * 2);
  for (char32_t c : cps) {
    out.push_back(c);
    if (draw(char_rate, rng)) out.push_back(kZeroWidthJoiner);
  }
  return utf8::encode(out);
}

std::string strip_zwj(std::string_view text) {
  std::u32string cps = utf8::decode(text);
  std::erase(cps, kZeroWidthJoiner);
  return utf8::encode(cps);
}

void ObfuscationPlan::validate() const {
  check_rate(sample_rate, "sample_rate");
  check_rate(char_rate, "char_rate");
}

std::size_t ObfuscationPlan::target_count(std::size_t n) const {
  return static_cast<std::size_t>(std::llround(sample_rate * static_cast<double>(n)));
}

ObfuscationResult obfuscate_dataset(std::span<const DocumentRecord> docs,
                                    const ObfuscationPlan& plan, const ConfusableMap& map) {
  plan.validate();
  ObfuscationResult result;
  result.docs.assign(docs.begin(), docs.end());

  const std::size_t target = plan.target_count(docs.size());
  if (target == 0) return result;

  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  ObfuscationRng selector(plan.seed);
  std::shuffle(order.begin(), order.end(), selector);

  std::vector<std::size_t> chosen;
  for (std::size_t idx : order) {
    if (chosen.size() == target) break;
    const DocumentRecord& doc = docs[idx];
    if (!doc.text || doc.text->empty()) {
      result.warnings.push_back("document \"" + doc.id + "\" has no text; drawing another");
      continue;
    }
    chosen.push_back(idx);
  }
  if (chosen.size() < target) {
    result.warnings.push_back("only " + std::to_string(chosen.size()) + " of " +
                              std::to_string(target) + " requested documents have text");
  }
  std::sort(chosen.begin(), chosen.end());

  for (std::size_t idx : chosen) {
    // Per-document stream, independent of the order documents are processed in.
    std::seed_seq seq{static_cast<std::uint32_t>(plan.seed), static_cast<std::uint32_t>(plan.seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
    ObfuscationRng rng(seq);
    std::string& text = *result.docs[idx].text;
    const std::string original = text;
    text = zwj_insert(homoglyph_obfuscate(original, plan.char_rate, rng, map), plan.char_rate, rng);
    if (text == original) {
      std::u32string cps = utf8::decode(text);
      const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, cps.size() - 1)(rng);
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(pos) + 1, kZeroWidthJoiner);
      text = utf8::encode(cps);
    }
    result.altered_ids.push_back(result.docs[idx].id);
  }
  return result;
}

}  // namespace mgtd
