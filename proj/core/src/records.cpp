#include "mgtd/records.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "json_util.hpp"
#include "mgtd/error.hpp"

namespace mgtd {
namespace {

using detail::as_integer;
using detail::as_real;
using detail::as_string;
using detail::Json;
using detail::OrderedJson;
using detail::require;

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

void validate_at(const DocumentRecord& doc, std::size_t line) {
  if (doc.id.empty()) throw FormatError("empty id", line);
  if (doc.language_confidence) {
    if (!doc.language) throw FormatError("lang_conf given without lang", line);
    const double c = *doc.language_confidence;
    if (!(c >= 0.0 && c <= 1.0)) throw FormatError("lang_conf out of range [0,1]", line);
  }
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const TokenRecord& t = doc.tokens[i];
    const std::string where = "token " + std::to_string(i) + ": ";
    if (!std::isfinite(t.logprob) || !std::isfinite(t.entropy) || !std::isfinite(t.xent))
      throw FormatError(where + "non-finite statistic", line);
    if (t.logprob > kLogprobTolerance) throw FormatError(where + "logprob must be <= 0", line);
    if (t.entropy < 0.0) throw FormatError(where + "entropy must be >= 0", line);
    if (t.rank < 1) throw FormatError(where + "rank must be >= 1", line);
    if (t.xent < 0.0) throw FormatError(where + "xent must be >= 0", line);
  }
  for (const auto& [name, p] : doc.classifier_probs) {
    if (!(p >= 0.0 && p <= 1.0))
      throw FormatError("probability out of range for classifier \"" + name + "\"", line);
  }
}

TokenRecord parse_token(const Json& j, std::size_t line) {
  if (!j.is_object()) throw FormatError("token entries must be objects", line);
  TokenRecord t;
  t.logprob = as_real(require(j, "lp", line), "lp", line);
  t.entropy = as_real(require(j, "ent", line), "ent", line);
  t.rank = as_integer(require(j, "rank", line), "rank", line);
  t.xent = as_real(require(j, "xent", line), "xent", line);
  return t;
}

}  // namespace

void validate(const DocumentRecord& doc) { validate_at(doc, 0); }

DocumentRecord parse_record(std::string_view json, std::size_t line) {
  const Json j = detail::parse_json(json, line, "record");
  if (!j.is_object()) throw FormatError("record must be a JSON object", line);

  DocumentRecord doc;
  doc.id = as_string(require(j, "id", line), "id", line);
  if (auto it = j.find("text"); it != j.end() && !it->is_null())
    doc.text = as_string(*it, "text", line);
  if (auto it = j.find("lang"); it != j.end() && !it->is_null())
    doc.language = as_string(*it, "lang", line);
  if (auto it = j.find("lang_conf"); it != j.end() && !it->is_null())
    doc.language_confidence = as_real(*it, "lang_conf", line);
  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    const long long v = as_integer(*it, "label", line);
    if (v != 0 && v != 1) throw FormatError("label must be 0 or 1", line);
    doc.label = label_from_bool(v == 1);
  }

  const Json& tokens = require(j, "tokens", line);
  if (!tokens.is_array()) throw FormatError("field \"tokens\" must be an array", line);
  doc.tokens.reserve(tokens.size());
  for (const Json& t : tokens) doc.tokens.push_back(parse_token(t, line));

  const Json& clf = require(j, "clf", line);
  if (!clf.is_object()) throw FormatError("field \"clf\" must be an object", line);
  for (auto it = clf.begin(); it != clf.end(); ++it) {
    doc.classifier_probs.emplace(it.key(), as_real(it.value(), "clf", line));
  }

  validate_at(doc, line);
  return doc;
}

std::string to_json_line(const DocumentRecord& doc) {
  OrderedJson j;
  j["id"] = doc.id;
  if (doc.text) j["text"] = *doc.text;
  if (doc.language) j["lang"] = *doc.language;
  if (doc.language_confidence) j["lang_conf"] = *doc.language_confidence;
  if (doc.label) j["label"] = to_int(*doc.label);
  OrderedJson tokens = OrderedJson::array();
  for (const TokenRecord& t : doc.tokens) {
    tokens.push_back(OrderedJson{{"lp", t.logprob}, {"ent", t.entropy}, {"rank", t.rank},
                                 {"xent", t.xent}});
  }
  j["tokens"] = std::move(tokens);
  OrderedJson clf = OrderedJson::object();
  for (const auto& [name, p] : doc.classifier_probs) clf[name] = p;
  j["clf"] = std::move(clf);
  try {
    return j.dump();
  } catch (const OrderedJson::type_error& e) {
    throw FormatError("record \"" + doc.id + "\" is not serializable: " + e.what());
  }
}

RecordReader::RecordReader(std::istream& in) : in_(&in) {}

std::optional<DocumentRecord> RecordReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    if (is_blank(line)) continue;
    DocumentRecord doc = parse_record(line, line_);
    if (!seen_ids_.insert(doc.id).second)
      throw FormatError("duplicate id \"" + doc.id + "\"", line_);
    return doc;
  }
  if (in_->bad()) throw IoError("read failed after line " + std::to_string(line_));
  return std::nullopt;
}

std::vector<DocumentRecord> read_dataset(std::istream& in) {
  RecordReader reader(in);
  std::vector<DocumentRecord> docs;
  while (auto doc = reader.next()) docs.push_back(std::move(*doc));
  return docs;
}

std::vector<DocumentRecord> read_dataset_file(const std::string& path) {
  auto in = detail::open_input(path);
  return read_dataset(in);
}

void write_record(std::ostream& out, const DocumentRecord& doc) {
  out << to_json_line(doc) << '\n';
}

void write_dataset(std::ostream& out, std::span<const DocumentRecord> docs) {
  for (const DocumentRecord& doc : docs) write_record(out, doc);
  detail::check_written(out, "dataset");
}

void write_dataset_file(const std::string& path, std::span<const DocumentRecord> docs) {
  auto out = detail::open_output(path);
  write_dataset(out, docs);
  out.flush();
  detail::check_written(out, path);
}

}  // namespace mgtd
