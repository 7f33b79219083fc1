#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mgtd/langgate.hpp"
#include "mgtd/metrics.hpp"

namespace mgtd {

struct ThresholdEntry {
  std::string channel;
  Bucket bucket;
  double threshold = 0.0;
  Orientation orientation = Orientation::higher_is_machine;
  double j_stat = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;

  bool operator==(const ThresholdEntry&) const = default;
};

struct TableMeta {
  std::size_t n_docs = 0;
  std::size_t min_samples = 0;
  std::string dataset_digest;  // digest of calibration document ids
  std::string config_hash;     // set by the caller, empty if unknown

  bool operator==(const TableMeta&) const = default;
};

class ThresholdTable {
 public:
  using Key = std::pair<std::string, Bucket>;

  // Replaces any entry with the same (channel, bucket).
  void insert(ThresholdEntry entry);

  const ThresholdEntry* find(std::string_view channel, const Bucket& bucket) const;

  // The bucket's entry, or the channel's UNKNOWN entry. Throws ConfigError if
  // neither exists.
  const ThresholdEntry& lookup(std::string_view channel, const Bucket& bucket) const;

  bool has_unknown(std::string_view channel) const;

  const std::map<Key, ThresholdEntry>& entries() const noexcept { return entries_; }
  std::vector<std::string> channels() const;

  LanguageSet known_languages;
  TableMeta meta;

  bool operator==(const ThresholdTable&) const = default;

 private:
  std::map<Key, ThresholdEntry> entries_;
};

// Throws FormatError on schema violations.
ThresholdTable parse_table(std::istream& in);
ThresholdTable read_table_file(const std::string& path);
std::string to_json(const ThresholdTable& table);
void write_table(std::ostream& out, const ThresholdTable& table);
void write_table_file(const std::string& path, const ThresholdTable& table);

// Aligned plain-text listing of every entry.
std::string format_table(const ThresholdTable& table);

}  // namespace mgtd
