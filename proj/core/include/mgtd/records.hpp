#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mgtd {

enum class Label : std::uint8_t { human = 0, machine = 1 };

inline constexpr int to_int(Label l) noexcept { return static_cast<int>(l); }
inline constexpr Label label_from_bool(bool machine) noexcept {
  return machine ? Label::machine : Label::human;
}

// Per-position statistics produced by a scorer. All log quantities are in nats.
struct TokenRecord {
  double logprob = 0.0;  // observer log-prob of the observed token, <= 0
  double entropy = 0.0;  // observer predictive entropy, >= 0
  std::int64_t rank = 1; // 1-based rank of the observed token under the observer
  double xent = 0.0;     // observer distribution scored under the performer, >= 0

  bool operator==(const TokenRecord&) const = default;
};

struct DocumentRecord {
  std::string id;
  std::optional<std::string> text;
  std::optional<std::string> language;
  std::optional<double> language_confidence;
  std::optional<Label> label;
  std::vector<TokenRecord> tokens;
  // Machine-class probability per classifier channel.
  std::map<std::string, double> classifier_probs;

  bool operator==(const DocumentRecord&) const = default;
};

// Slack allowed on the logprob <= 0 invariant.
inline constexpr double kLogprobTolerance = 1e-9;

// Throws FormatError if a field violates the record invariants.
void validate(const DocumentRecord& doc);

// Parses one JSON-lines record. `line` is only used in error messages.
DocumentRecord parse_record(std::string_view json, std::size_t line = 0);

// Compact single-line JSON, no trailing newline.
std::string to_json_line(const DocumentRecord& doc);

// Streaming JSON-lines reader. Blank lines are skipped; ids must be unique
// across the whole stream.
class RecordReader {
 public:
  explicit RecordReader(std::istream& in);

  std::optional<DocumentRecord> next();

  std::size_t line_number() const noexcept { return line_; }

 private:
  std::istream* in_;
  std::size_t line_ = 0;
  std::unordered_set<std::string> seen_ids_;
};

std::vector<DocumentRecord> read_dataset(std::istream& in);
std::vector<DocumentRecord> read_dataset_file(const std::string& path);

void write_record(std::ostream& out, const DocumentRecord& doc);
void write_dataset(std::ostream& out, std::span<const DocumentRecord> docs);
void write_dataset_file(const std::string& path, std::span<const DocumentRecord> docs);

}  // namespace mgtd
