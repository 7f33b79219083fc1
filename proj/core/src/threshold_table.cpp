#include "mgtd/threshold_table.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "json_util.hpp"
#include "mgtd/error.hpp"

namespace mgtd {

using detail::as_integer;
using detail::as_real;
using detail::as_string;
using detail::Json;
using detail::OrderedJson;
using detail::require;

void ThresholdTable::insert(ThresholdEntry entry) {
  Key key{entry.channel, entry.bucket};
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

const ThresholdEntry* ThresholdTable::find(std::string_view channel, const Bucket& bucket) const {
  auto it = entries_.find(Key{std::string(channel), bucket});
  return it == entries_.end() ? nullptr : &it->second;
}

const ThresholdEntry& ThresholdTable::lookup(std::string_view channel, const Bucket& bucket) const {
  if (const ThresholdEntry* e = find(channel, bucket)) return *e;
  if (const ThresholdEntry* e = find(channel, Bucket::unknown())) return *e;
  throw ConfigError("threshold table has no UNKNOWN entry for channel \"" + std::string(channel) +
                    "\"");
}

bool ThresholdTable::has_unknown(std::string_view channel) const {
  return find(channel, Bucket::unknown()) != nullptr;
}

std::vector<std::string> ThresholdTable::channels() const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : entries_) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

namespace {

std::size_t as_count(const Json& v, const char* key) {
  const long long n = as_integer(v, key, 0);
  if (n < 0) throw FormatError(std::string("field \"") + key + "\" must be non-negative");
  return static_cast<std::size_t>(n);
}

}  // namespace

ThresholdTable parse_table(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failed for threshold table");
  const Json j = detail::parse_json(text, 0, "threshold table");
  if (!j.is_object()) throw FormatError("threshold table must be a JSON object");

  ThresholdTable table;
  const Json& langs = require(j, "known_languages", 0);
  if (!langs.is_array()) throw FormatError("known_languages must be an array");
  for (const Json& l : langs) table.known_languages.insert(as_string(l, "known_languages", 0));

  const Json& entries = require(j, "entries", 0);
  if (!entries.is_array()) throw FormatError("entries must be an array");
  for (const Json& e : entries) {
    if (!e.is_object()) throw FormatError("table entries must be objects");
    ThresholdEntry entry;
    entry.channel = as_string(require(e, "channel", 0), "channel", 0);
    entry.bucket = Bucket::parse(as_string(require(e, "bucket", 0), "bucket", 0));
    entry.threshold = as_real(require(e, "threshold", 0), "threshold", 0);
    entry.orientation =
        orientation_from_string(as_string(require(e, "orientation", 0), "orientation", 0));
    entry.j_stat = as_real(require(e, "j", 0), "j", 0);
    entry.n_pos = as_count(require(e, "n_pos", 0), "n_pos");
    entry.n_neg = as_count(require(e, "n_neg", 0), "n_neg");

    if (!std::isfinite(entry.threshold)) throw FormatError("non-finite threshold");
    if (!(entry.j_stat >= -1.0 && entry.j_stat <= 1.0)) throw FormatError("j out of range [-1,1]");
    if (entry.n_pos + entry.n_neg == 0) throw FormatError("entry fit on zero samples");
    if (!entry.bucket.is_unknown() && !table.known_languages.contains(entry.bucket.str()))
      throw FormatError("bucket \"" + entry.bucket.str() + "\" is not a known language");
    if (table.find(entry.channel, entry.bucket))
      throw FormatError("duplicate entry for (" + entry.channel + ", " + entry.bucket.str() + ")");
    table.insert(std::move(entry));
  }
  for (const std::string& ch : table.channels()) {
    if (!table.has_unknown(ch)) throw FormatError("channel \"" + ch + "\" lacks an UNKNOWN entry");
  }

  if (auto it = j.find("meta"); it != j.end()) {
    const Json& m = *it;
    if (!m.is_object()) throw FormatError("meta must be an object");
    if (auto f = m.find("n_docs"); f != m.end()) table.meta.n_docs = as_count(*f, "n_docs");
    if (auto f = m.find("min_samples"); f != m.end())
      table.meta.min_samples = as_count(*f, "min_samples");
    if (auto f = m.find("dataset_digest"); f != m.end())
      table.meta.dataset_digest = as_string(*f, "dataset_digest", 0);
    if (auto f = m.find("config_hash"); f != m.end())
      table.meta.config_hash = as_string(*f, "config_hash", 0);
  }
  return table;
}

ThresholdTable read_table_file(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_table(in);
}

std::string to_json(const ThresholdTable& table) {
  OrderedJson j;
  j["known_languages"] = OrderedJson::array();
  for (const std::string& l : table.known_languages) j["known_languages"].push_back(l);
  j["entries"] = OrderedJson::array();
  for (const auto& [key, e] : table.entries()) {
    j["entries"].push_back(OrderedJson{{"channel", e.channel},
                                       {"bucket", e.bucket.str()},
                                       {"threshold", e.threshold},
                                       {"orientation", std::string(to_string(e.orientation))},
                                       {"j", e.j_stat},
                                       {"n_pos", e.n_pos},
                                       {"n_neg", e.n_neg}});
  }
  j["meta"] = OrderedJson{{"n_docs", table.meta.n_docs},
                          {"min_samples", table.meta.min_samples},
                          {"dataset_digest", table.meta.dataset_digest},
                          {"config_hash", table.meta.config_hash}};
  return j.dump(2) + "\n";
}

void write_table(std::ostream& out, const ThresholdTable& table) {
  out << to_json(table);
  detail::check_written(out, "threshold table");
}

void write_table_file(const std::string& path, const ThresholdTable& table) {
  auto out = detail::open_output(path);
  write_table(out, table);
  out.flush();
  detail::check_written(out, path);
}

std::string format_table(const ThresholdTable& table) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "channel" << std::setw(10) << "bucket" << std::setw(19)
     << "orientation" << std::right << std::setw(14) << "threshold" << std::setw(9) << "J"
     << std::setw(8) << "n_pos" << std::setw(8) << "n_neg" << '\n';
  for (const auto& [key, e] : table.entries()) {
    os << std::left << std::setw(16) << e.channel << std::setw(10) << e.bucket.str()
       << std::setw(19) << to_string(e.orientation) << std::right << std::setw(14)
       << std::setprecision(6) << std::fixed << e.threshold << std::setw(9) << std::setprecision(4)
       << e.j_stat << std::setw(8) << e.n_pos << std::setw(8) << e.n_neg << '\n';
    os.unsetf(std::ios::floatfield);
  }
  os << "known languages:";
  for (const std::string& l : table.known_languages) os << ' ' << l;
  os << "\ncalibration docs: " << table.meta.n_docs << ", min samples per class: "
     << table.meta.min_samples << '\n';
  return os.str();
}

}  // namespace mgtd
