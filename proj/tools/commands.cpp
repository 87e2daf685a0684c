#include "commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "engage/error.hpp"
#include "engage/eval/eval.hpp"
#include "engage/features/features.hpp"
#include "engage/features/labels.hpp"
#include "engage/gbrt/gbrt.hpp"
#include "engage/ingest/corpus_io.hpp"
#include "engage/ingest/synth.hpp"
#include "engage/parallel.hpp"
#include "engage/parallel_analysis/parallel_analysis.hpp"
#include "engage/signal/signal.hpp"

namespace engage::cli {

using nlohmann::ordered_json;

namespace {

struct Common {
  std::string in = "-";
  std::string out = "-";
  std::uint64_t seed = 0;
  int threads = 0;
};

struct Io {
  std::istream& in;
  std::ostream& out;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<ingest::TweetRecord> load_corpus(const std::string& path, Io& io) {
  if (path == "-") return ingest::read_corpus(io.in, "<stdin>");
  return ingest::read_corpus(std::filesystem::path(path));
}

// Writes text to a file, or to stdout for "-".
void emit(const std::string& path, const std::string& text, Io& io) {
  if (path == "-") {
    io.out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::kIoFailure, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::kIoFailure, "write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path) {
  auto j = nlohmann::json::parse(read_text(path), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::kSchemaViolation, path + ": malformed JSON");
  return j;
}

// Resolves --preset / --signal into params; nullopt when neither is given.
std::optional<signal::SignalParams> resolve_signal(const std::string& preset, const std::string& signal_path,
                                                   signal::LogBase* base = nullptr) {
  if (!preset.empty() && !signal_path.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "--preset and --signal are mutually exclusive");
  }
  if (!preset.empty()) return signal::preset(preset);
  if (!signal_path.empty()) return signal::load_signal(signal_path, base);
  return std::nullopt;
}

ordered_json provenance(const std::string& command, const Common& c) {
  ordered_json p;
  p["command"] = command;
  p["input"] = c.in;
  p["seed"] = c.seed;
  return p;
}

void add_gbrt_flags(CLI::App* sub, gbrt::GbrtConfig& g) {
  sub->add_option("--trees", g.num_trees, "Number of boosting rounds")->capture_default_str();
  sub->add_option("--learning-rate", g.learning_rate, "Shrinkage per tree")->capture_default_str();
  sub->add_option("--max-leaves", g.max_leaves, "Leaf cap per tree")->capture_default_str();
  sub->add_option("--min-leaf", g.min_samples_per_leaf, "Minimum training rows per leaf")->capture_default_str();
  sub->add_option("--bins", g.histogram_bins, "Histogram bins per numeric feature")->capture_default_str();
  sub->add_option("--lambda", g.lambda_l2, "L2 penalty on leaf values")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Engagement signal toolkit: parallel analysis, compound engagement, GBRT models"};
  app.require_subcommand(1);
  Io io{in, out};

  Common c;
  std::string preset, signal_path, target = "engagement", mode = "within", log_base = "e", model_path, metric = "r2",
                                   protocol = "kfold", nulls_path;
  std::size_t rows = 1000, folds = 3, top = 0;
  int permutations = 100;
  double quantile = 0.95;
  bool sort = false, summary = false, correlation = false;
  std::vector<std::string> report_paths;
  gbrt::GbrtConfig gcfg;

  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus (JSONL)");
  synth->add_option("--n", rows, "Number of records")->capture_default_str();
  synth->add_option("--seed", c.seed)->capture_default_str();
  synth->add_option("--out", c.out, "Output JSONL ('-' for stdout)")->capture_default_str();

  auto* feats = app.add_subcommand("features", "Extract the 31-column feature matrix as CSV");
  feats->add_option("--in", c.in, "Corpus JSONL ('-' for stdin)")->capture_default_str();
  feats->add_option("--out", c.out, "Feature CSV path");
  feats->add_option("--target", target, "Append a label column for this target");
  feats->add_option("--preset", preset, "Signal preset for engagement labels (t2017|t2018)");
  feats->add_option("--signal", signal_path, "Signal JSON for engagement labels");
  feats->add_flag("--summary", summary, "Print a skewness summary (raw and transformed) as JSON");
  feats->add_option("--threads", c.threads);

  auto* pa_cmd = app.add_subcommand("pa", "Parallel analysis of the stabilized response matrix");
  pa_cmd->add_option("--in", c.in)->capture_default_str();
  pa_cmd->add_option("--out", c.out, "PaResult JSON ('-' for stdout)")->capture_default_str();
  pa_cmd->add_option("--permutations", permutations)->capture_default_str();
  pa_cmd->add_option("--quantile", quantile)->capture_default_str();
  pa_cmd->add_option("--mode", mode, "within|across")->capture_default_str();
  pa_cmd->add_option("--seed", c.seed)->capture_default_str();
  pa_cmd->add_option("--threads", c.threads);
  pa_cmd->add_flag("--correlation", correlation, "Use correlation instead of covariance matrices");
  pa_cmd->add_option("--nulls", nulls_path, "CSV of all pooled null eigenvalues");

  auto* fit = app.add_subcommand("fit-signal", "Fit the compound engagement signal");
  fit->add_option("--in", c.in)->capture_default_str();
  fit->add_option("--out", c.out)->capture_default_str();

  auto* proj = app.add_subcommand("project", "Score records with the compound engagement signal");
  proj->add_option("--in", c.in)->capture_default_str();
  proj->add_option("--out", c.out)->capture_default_str();
  proj->add_option("--preset", preset, "t2017|t2018");
  proj->add_option("--signal", signal_path, "Signal JSON");
  proj->add_option("--log-base", log_base, "e|10 (overrides the signal file)");
  proj->add_flag("--sort", sort, "Sort by descending score");
  proj->add_option("--top", top, "Keep only the first N rows");

  auto* train_cmd = app.add_subcommand("train", "Train a GBRT model on one target");
  train_cmd->add_option("--in", c.in)->capture_default_str();
  train_cmd->add_option("--out", c.out, "Model JSON path")->required();
  train_cmd->add_option("--target", target)->capture_default_str();
  train_cmd->add_option("--preset", preset, "Fixed signal preset for engagement labels");
  train_cmd->add_option("--signal", signal_path, "Fixed signal JSON for engagement labels");
  train_cmd->add_option("--seed", c.seed)->capture_default_str();
  train_cmd->add_option("--threads", c.threads);
  add_gbrt_flags(train_cmd, gcfg);

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validated evaluation of one or all targets");
  evaluate->add_option("--in", c.in)->capture_default_str();
  evaluate->add_option("--out", c.out, "Report JSON ('-' for stdout)")->capture_default_str();
  evaluate->add_option("--target", target, "retweets|replies|favorites|engagement|all")->capture_default_str();
  evaluate->add_option("--folds", folds)->capture_default_str();
  evaluate->add_option("--protocol", protocol, "kfold|holdout")->capture_default_str();
  evaluate->add_option("--preset", preset, "Use a fixed signal preset instead of fold-local fitting");
  evaluate->add_option("--signal", signal_path, "Use a fixed signal file instead of fold-local fitting");
  evaluate->add_option("--seed", c.seed)->capture_default_str();
  evaluate->add_option("--threads", c.threads);
  add_gbrt_flags(evaluate, gcfg);

  auto* importance = app.add_subcommand("importance", "Normalized gain importance of a trained model");
  importance->add_option("--model", model_path)->required();
  importance->add_option("--top", top, "Keep only the first N features");
  importance->add_option("--out", c.out)->capture_default_str();

  auto* rank = app.add_subcommand("rank", "Compare evaluation reports");
  rank->add_option("--in", report_paths, "Report JSON files")->required();
  rank->add_option("--metric", metric, "r2|rho|rmse")->capture_default_str();
  rank->add_option("--out", c.out, "Table path (.json or CSV)")->capture_default_str();

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const int threads = c.threads > 0 ? c.threads : default_thread_count();

  try {
    if (*synth) {
      const auto records = ingest::synth_corpus(rows, c.seed);
      if (c.out == "-") {
        ingest::write_corpus(records, io.out);
      } else {
        ingest::write_corpus(records, std::filesystem::path(c.out));
        ordered_json p;
        p["command"] = "synth";
        p["n"] = rows;
        p["seed"] = c.seed;
        p["config"] = "default";
        emit(c.out + ".provenance.json", p.dump(2) + "\n", io);
      }
    } else if (*feats) {
      const auto records = load_corpus(c.in, io);
      if (summary) {
        auto arr = ordered_json::array();
        for (const auto& row : features::skewness_summary(records)) {
          ordered_json r;
          r["feature"] = row.name;
          r["transform"] = row.transform;
          r["skewness_raw"] = row.raw ? ordered_json(*row.raw) : ordered_json(nullptr);
          r["skewness_transformed"] = row.transformed ? ordered_json(*row.transformed) : ordered_json(nullptr);
          arr.push_back(std::move(r));
        }
        io.out << arr.dump(2) << '\n';
      }
      if (c.out != "-") {
        const auto fm = features::extract_features(records, features::FeatureSchema::standard(), threads);
        std::optional<std::vector<double>> labels;
        if (feats->count("--target") > 0) {
          labels = features::label_vector(records, features::parse_target(target), resolve_signal(preset, signal_path));
        }
        features::write_feature_csv(fm, c.out, labels ? &*labels : nullptr);
        ordered_json side;
        side["dictionary"] = fm.dictionary.to_json();
        side["schema_hash"] = fm.schema.hash();
        side["provenance"] = provenance("features", c);
        if (labels) side["provenance"]["target"] = target;
        emit(c.out + ".dict.json", side.dump(2) + "\n", io);
      } else if (!summary) {
        throw Error(ErrorKind::kInvalidArgument, "features needs --out or --summary");
      }
    } else if (*pa_cmd) {
      const auto records = load_corpus(c.in, io);
      pa::PaConfig cfg;
      cfg.permutations = permutations;
      cfg.quantile = quantile;
      cfg.mode = pa::parse_mode(mode);
      cfg.seed = c.seed;
      cfg.use_correlation = correlation;
      cfg.threads = threads;
      const auto result = pa::run_pa(pa::stabilized_responses(records), cfg);
      auto j = pa::to_json(result);
      j["provenance"] = provenance("pa", c);
      emit(c.out, j.dump(2) + "\n", io);
      if (!nulls_path.empty()) pa::write_null_csv(result, nulls_path);
    } else if (*fit) {
      const auto records = load_corpus(c.in, io);
      std::vector<ingest::EngagementVector> responses;
      responses.reserve(records.size());
      for (const auto& r : records) responses.push_back(r.response);
      auto j = signal::to_json(signal::fit_signal(responses));
      j["source"] = provenance("fit-signal", c);
      emit(c.out, j.dump(2) + "\n", io);
    } else if (*proj) {
      const auto records = load_corpus(c.in, io);
      signal::LogBase base = signal::LogBase::kNatural;
      auto params = resolve_signal(preset, signal_path, &base);
      if (!params) throw Error(ErrorKind::kMissingSignal, "project needs --preset or --signal");
      if (proj->count("--log-base") > 0) base = signal::parse_log_base(log_base);
      auto scored = signal::project_batch(records, *params, sort, base);
      if (top > 0 && scored.size() > top) scored.resize(top);
      std::string text = "id,engagement\n";
      for (const auto& s : scored) text += s.id + "," + num(s.score) + "\n";
      emit(c.out, text, io);
    } else if (*train_cmd) {
      const auto records = load_corpus(c.in, io);
      const auto t = features::parse_target(target);
      auto params = resolve_signal(preset, signal_path);
      std::string signal_source = params ? params->provenance : "fitted-on-input";
      if (t == features::Target::kEngagement && !params) {
        std::vector<ingest::EngagementVector> responses;
        for (const auto& r : records) responses.push_back(r.response);
        params = signal::fit_signal(responses);
      }
      gcfg.seed = c.seed;
      gcfg.threads = threads;
      const auto fm = features::extract_features(records, features::FeatureSchema::standard(), threads);
      const auto labels = features::label_vector(records, t, params);
      const auto model = gbrt::train(fm, labels, gcfg);
      auto j = gbrt::to_json(model);
      auto p = provenance("train", c);
      p["target"] = target;
      if (t == features::Target::kEngagement) {
        p["signal_source"] = signal_source;
        p["signal"] = signal::to_json(*params);
      }
      p["gbrt"] = gcfg.to_json();
      j["provenance"] = std::move(p);
      emit(c.out, j.dump() + "\n", io);
    } else if (*evaluate) {
      const auto records = load_corpus(c.in, io);
      eval::ExperimentConfig cfg;
      gcfg.seed = c.seed;
      gcfg.threads = threads;
      cfg.gbrt = gcfg;
      cfg.folds = folds;
      cfg.seed = c.seed;
      cfg.fixed_signal = resolve_signal(preset, signal_path);
      if (protocol == "holdout") {
        cfg.protocol = eval::Protocol::kHoldout;
      } else if (protocol != "kfold") {
        throw Error(ErrorKind::kInvalidArgument, "protocol must be kfold or holdout");
      }
      std::vector<features::Target> targets;
      if (target == "all") {
        targets.assign(std::begin(features::kAllTargets), std::end(features::kAllTargets));
      } else {
        targets.push_back(features::parse_target(target));
      }
      std::vector<eval::EvalReport> reports;
      for (auto t : targets) {
        cfg.target = t;
        reports.push_back(eval::run_experiment(records, cfg));
      }
      ordered_json j;
      if (reports.size() == 1) {
        j = eval::to_json(reports.front());
      } else {
        j["reports"] = ordered_json::array();
        for (const auto& r : reports) j["reports"].push_back(eval::to_json(r));
        j["comparison"] = eval::comparison_to_json(eval::compare_reports(reports, eval::Metric::kR2), eval::Metric::kR2);
      }
      j["provenance"] = provenance("evaluate", c);
      j["provenance"]["target"] = target;
      emit(c.out, j.dump(2) + "\n", io);
    } else if (*importance) {
      const auto model = gbrt::load_model(model_path);
      auto rows_out = gbrt::feature_importance(model);
      if (top > 0 && rows_out.size() > top) rows_out.resize(top);
      std::string text = "feature,importance\n";
      for (const auto& r : rows_out) text += r.name + "," + num(r.importance) + "\n";
      emit(c.out, text, io);
    } else if (*rank) {
      std::vector<eval::EvalReport> reports;
      for (const auto& path : report_paths) {
        const auto j = read_json(path);
        if (j.contains("reports")) {
          for (const auto& r : j["reports"]) reports.push_back(eval::report_from_json(r));
        } else {
          reports.push_back(eval::report_from_json(j));
        }
      }
      const auto m = eval::parse_metric(metric);
      const auto table = eval::compare_reports(reports, m);
      const bool as_json = c.out.size() > 5 && c.out.substr(c.out.size() - 5) == ".json";
      emit(c.out, as_json ? eval::comparison_to_json(table, m).dump(2) + "\n" : eval::comparison_to_csv(table), io);
    }
  } catch (const Error& e) {
    err << "engage: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "engage: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace engage::cli
