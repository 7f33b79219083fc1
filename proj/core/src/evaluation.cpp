#include "mgtd/evaluation.hpp"

#include <cstdio>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json_util.hpp"
#include "mgtd/calibration.hpp"
#include "mgtd/error.hpp"

namespace mgtd {

EvalReport evaluate(std::span<const Prediction> predictions, std::span<const DocumentRecord> gold,
                    std::span<const ChannelSpec> auc_channels, const StatisticRegistry& registry) {
  std::unordered_map<std::string_view, const DocumentRecord*> by_id;
  for (const DocumentRecord& doc : gold) {
    if (!doc.label) throw FormatError("gold document \"" + doc.id + "\" has no label");
    if (!by_id.emplace(doc.id, &doc).second)
      throw FormatError("duplicate gold id \"" + doc.id + "\"");
  }
  if (predictions.size() != gold.size())
    throw FormatError("id mismatch: " + std::to_string(predictions.size()) + " predictions for " +
                      std::to_string(gold.size()) + " gold documents");
  if (predictions.empty()) throw FormatError("nothing to evaluate");

  EvalReport report;
  std::unordered_set<std::string_view> seen;
  std::map<std::string, std::size_t> channel_correct;
  std::map<std::string, std::size_t> lang_correct;

  for (const Prediction& p : predictions) {
    auto it = by_id.find(p.doc_id);
    if (it == by_id.end()) throw FormatError("id mismatch: no gold document \"" + p.doc_id + "\"");
    if (!seen.insert(p.doc_id).second)
      throw FormatError("duplicate prediction for \"" + p.doc_id + "\"");
    const DocumentRecord& doc = *it->second;
    const bool truth = *doc.label == Label::machine;
    const bool said = p.final_label == Label::machine;

    Confusion& c = report.confusion;
    if (truth && said) ++c.tp;
    else if (!truth && said) ++c.fp;
    else if (!truth && !said) ++c.tn;
    else ++c.fn;

    for (const auto& [name, d] : p.channel_decisions) {
      const bool channel_said = d.value_or(Label::human) == Label::machine;
      channel_correct[name] += channel_said == truth ? 1 : 0;
    }

    const std::string lang = doc.language.value_or(std::string(Bucket::kUnknownName));
    LanguageBreakdown& lb = report.per_language[lang];
    (truth ? lb.n_machine : lb.n_human) += 1;
    lang_correct[lang] += said == truth ? 1 : 0;
  }

  const auto n = static_cast<double>(predictions.size());
  report.accuracy = static_cast<double>(report.confusion.tp + report.confusion.tn) / n;
  for (const auto& [name, correct] : channel_correct)
    report.per_channel_accuracy[name] = static_cast<double>(correct) / n;
  for (auto& [lang, lb] : report.per_language)
    lb.accuracy = static_cast<double>(lang_correct[lang]) / static_cast<double>(lb.n_human + lb.n_machine);

  for (const ChannelSpec& spec : auc_channels) {
    std::vector<double> scores;
    std::vector<Label> labels;
    std::size_t pos = 0;
    for (const DocumentRecord& doc : gold) {
      const ChannelScore s = score_channel(doc, spec, registry);
      if (!s.valid) continue;
      scores.push_back(s.value);
      labels.push_back(*doc.label);
      pos += *doc.label == Label::machine ? 1 : 0;
    }
    if (pos == 0 || pos == scores.size()) continue;
    report.per_channel_auc[spec.name] = auc(build_roc(scores, labels, spec.orientation));
  }
  return report;
}

std::vector<ChannelSpec> default_auc_channels(std::span<const DocumentRecord> gold) {
  std::vector<ChannelSpec> out;
  bool has_tokens = false;
  std::set<std::string> classifiers;
  for (const DocumentRecord& doc : gold) {
    has_tokens = has_tokens || !doc.tokens.empty();
    for (const auto& [name, p] : doc.classifier_probs) classifiers.insert(name);
  }
  if (has_tokens) {
    for (std::string_view name : {channel::likelihood, channel::entropy, channel::rank,
                                  channel::log_rank, channel::binoculars}) {
      out.push_back(statistical_channel(name));
    }
  }
  for (const std::string& name : classifiers) {
    if (std::none_of(out.begin(), out.end(), [&](const ChannelSpec& s) { return s.name == name; }))
      out.push_back(classifier_channel(name));
  }
  return out;
}

std::string report_json(const EvalReport& report) {
  detail::OrderedJson j;
  j["accuracy"] = report.accuracy;
  j["auc"] = detail::OrderedJson::object();
  for (const auto& [name, a] : report.per_channel_auc) j["auc"][name] = a;
  j["confusion"] = detail::OrderedJson{{"tp", report.confusion.tp},
                                       {"fp", report.confusion.fp},
                                       {"tn", report.confusion.tn},
                                       {"fn", report.confusion.fn}};
  j["per_language"] = detail::OrderedJson::object();
  for (const auto& [lang, lb] : report.per_language) {
    j["per_language"][lang] = detail::OrderedJson{
        {"accuracy", lb.accuracy}, {"n_human", lb.n_human}, {"n_machine", lb.n_machine}};
  }
  return j.dump(2) + "\n";
}

namespace {

std::string cell(const std::map<std::string, double>& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", it->second);
  return buf;
}

void row(std::string& out, const std::string& a, const std::string& b, const std::string& c) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-18s %10s %10s\n", a.c_str(), b.c_str(), c.c_str());
  out += buf;
}

}  // namespace

std::string report_table(const EvalReport& report, std::string_view system_name) {
  std::string out;
  char acc[32];
  std::snprintf(acc, sizeof acc, "%.4f", report.accuracy);
  row(out, "System", "Accuracy", "AUC ROC");
  row(out, std::string(system_name), acc, "N/A");

  std::set<std::string> names;
  for (const auto& [name, v] : report.per_channel_accuracy) names.insert(name);
  for (const auto& [name, v] : report.per_channel_auc) names.insert(name);
  for (const std::string& name : names)
    row(out, name, cell(report.per_channel_accuracy, name), cell(report.per_channel_auc, name));

  char buf[160];
  std::snprintf(buf, sizeof buf, "\nconfusion: tp=%zu fp=%zu tn=%zu fn=%zu\n\n", report.confusion.tp,
                report.confusion.fp, report.confusion.tn, report.confusion.fn);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %10s %8s %10s\n", "Language", "Accuracy", "Human", "Machine");
  out += buf;
  for (const auto& [lang, lb] : report.per_language) {
    std::snprintf(buf, sizeof buf, "%-10s %10.4f %8zu %10zu\n", lang.c_str(), lb.accuracy,
                  lb.n_human, lb.n_machine);
    out += buf;
  }
  return out;
}

}  // namespace mgtd
