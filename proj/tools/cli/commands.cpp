#include "cli/commands.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "mgtd/calibration.hpp"
#include "mgtd/digest.hpp"
#include "mgtd/ensemble.hpp"
#include "mgtd/error.hpp"
#include "mgtd/evaluation.hpp"
#include "mgtd/obfuscation.hpp"
#include "mgtd/pipeline_config.hpp"
#include "mgtd/records.hpp"
#include "mgtd/threshold_table.hpp"

namespace mgtd::cli {
namespace {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

int run_calibrate(const CalibrateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PipelineConfig config = load_config_file(args.config);
    const std::optional<std::string> table_path = args.out_table ? args.out_table : config.table_path;
    if (!table_path) {
      err << "error: no output table given (--out-table or config \"table\")\n";
      return int{kIoError};
    }
    const std::vector<DocumentRecord> docs = read_dataset_file(args.input);
    for (const DocumentRecord& doc : docs) {
      if (!doc.label) throw CalibrationError("labels required: document \"" + doc.id + "\" has none");
    }
    const auto channels = config.thresholded_channels();
    ThresholdTable table =
        calibrate(docs, channels, config.known_languages, {.min_samples = config.min_samples});
    table.meta.config_hash = hex_digest(fnv1a64(config.canonical_json()));
    write_table_file(*table_path, table);
    out << format_table(table);
    return int{kSuccess};
  });
}

int run_predict(const PredictArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PipelineConfig config = load_config_file(args.config);
    const std::optional<std::string> table_path = args.table ? args.table : config.table_path;
    if (!table_path) {
      err << "error: no threshold table given (--table or config \"table\")\n";
      return int{kIoError};
    }
    const ThresholdTable table = read_table_file(*table_path);
    check_table(table, config);

    auto in = open_input(args.input);
    auto sink = open_output(args.out);
    RecordReader reader(in);
    std::size_t n = 0;
    std::size_t machine = 0;
    while (auto doc = reader.next()) {
      const Prediction p = predict(*doc, table, config);
      write_prediction(sink, p);
      ++n;
      machine += p.final_label == Label::machine ? 1 : 0;
    }
    finish(sink, args.out);
    out << "predicted " << n << " documents (" << machine << " machine)\n";
    return int{kSuccess};
  });
}

int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<PipelineConfig> config;
    if (args.config) config = load_config_file(*args.config);
    const std::vector<Prediction> predictions = read_predictions_file(args.pred);
    const std::vector<DocumentRecord> gold = read_dataset_file(args.gold);
    const std::vector<ChannelSpec> channels =
        config ? config->channels() : default_auc_channels(gold);
    const EvalReport report = evaluate(predictions, gold, channels);

    auto sink = open_output(args.out);
    sink << report_json(report);
    finish(sink, args.out);
    out << report_table(report, config ? to_string(config->mode) : "ensemble");
    return int{kSuccess};
  });
}

int run_obfuscate(const ObfuscateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ObfuscationPlan plan{args.sample_rate, args.char_rate, args.seed};
    plan.validate();
    const ConfusableMap map = args.map ? ConfusableMap::load_file(*args.map) : ConfusableMap::builtin();
    const std::vector<DocumentRecord> docs = read_dataset_file(args.input);
    const ObfuscationResult result = obfuscate_dataset(docs, plan, map);
    for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
    write_dataset_file(args.out, result.docs);
    out << "obfuscated " << result.altered_ids.size() << " of " << docs.size() << " documents\n";
    return int{kSuccess};
  });
}

int run_inspect(const InspectArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << format_table(read_table_file(args.table));
    return int{kSuccess};
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Machine-generated text detection: calibration, voting and evaluation"};
  app.require_subcommand(1);

  CalibrateArgs cal;
  auto* c = app.add_subcommand("calibrate", "Fit per-language thresholds on labeled records");
  c->add_option("--config", cal.config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  c->add_option("--input", cal.input, "Labeled records (JSONL)")->required();
  c->add_option("--out-table", cal.out_table, "Threshold table to write (JSON)");

  PredictArgs pred;
  auto* p = app.add_subcommand("predict", "Apply thresholds and majority voting");
  p->add_option("--config", pred.config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  p->add_option("--table", pred.table, "Threshold table (JSON)");
  p->add_option("--input", pred.input, "Records (JSONL)")->required();
  p->add_option("--out", pred.out, "Predictions to write (JSONL)")->required();

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score predictions against gold labels");
  e->add_option("--pred", ev.pred, "Predictions (JSONL)")->required();
  e->add_option("--gold", ev.gold, "Labeled records (JSONL)")->required();
  e->add_option("--out", ev.out, "report.json to write")->required();
  e->add_option("--config", ev.config, "Pipeline config; limits AUC to its channels");

  ObfuscateArgs ob;
  auto* o = app.add_subcommand("obfuscate", "Homoglyph and zero-width-joiner perturbation");
  o->add_option("--sample-rate", ob.sample_rate, "Fraction of documents to alter")
      ->required()->check(CLI::Range(0.0, 1.0));
  o->add_option("--char-rate", ob.char_rate, "Per-character probability")
      ->default_val(0.1)->check(CLI::Range(0.0, 1.0));
  o->add_option("--seed", ob.seed, "RNG seed")->required();
  o->add_option("--input", ob.input, "Records with text (JSONL)")->required();
  o->add_option("--out", ob.out, "Records to write (JSONL)")->required();
  o->add_option("--map", ob.map, "Confusable map override (JSON)");

  InspectArgs in;
  auto* i = app.add_subcommand("inspect", "Print a threshold table");
  i->add_option("--table", in.table, "Threshold table (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kIoError;
  }

  if (c->parsed()) return run_calibrate(cal, out, err);
  if (p->parsed()) return run_predict(pred, out, err);
  if (e->parsed()) return run_evaluate(ev, out, err);
  if (o->parsed()) return run_obfuscate(ob, out, err);
  return run_inspect(in, out, err);
}

}  // namespace mgtd::cli
