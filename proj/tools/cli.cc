// Copyright 2026 The embsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "embsim/agreement.h"
#include "embsim/analogy.h"
#include "embsim/compare.h"
#include "embsim/csv.h"
#include "embsim/embedding.h"
#include "embsim/error.h"
#include "embsim/json_io.h"
#include "embsim/synth.h"

namespace embsim::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kToolName = "embsim";

// Settings that determine a comparison's numbers; echoed in every report.
struct CompareConfig {
  std::string left, right;
  std::string format = "auto";
  bool abs_correlation = false;
  std::optional<double> regularization;
  int bins = kDefaultHistogramBins;
  bool kde = false;
  std::string questions;  // empty: no analogy agreement
  bool lowercase = false;
};

Json config_json(const CompareConfig& c) {
  Json j;
  j["left"] = c.left;
  j["right"] = c.right;
  j["format"] = c.format;
  j["abs_correlation"] = c.abs_correlation;
  j["regularization"] = c.regularization ? Json(*c.regularization) : Json(nullptr);
  j["bins"] = c.bins;
  j["kde"] = c.kde;
  j["questions"] = c.questions.empty() ? Json(nullptr) : Json(c.questions);
  j["lowercase"] = c.lowercase;
  return j;
}

CompareConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("config file '" + path.string() + "': " + e.what());
  }
  if (j.contains("config")) j = j["config"];
  CompareConfig c;
  try {
    c.left = j.value("left", "");
    c.right = j.value("right", "");
    c.format = j.value("format", "auto");
    c.abs_correlation = j.value("abs_correlation", false);
    if (j.contains("regularization") && !j["regularization"].is_null()) {
      c.regularization = j["regularization"].get<double>();
    }
    c.bins = j.value("bins", kDefaultHistogramBins);
    c.kde = j.value("kde", false);
    if (j.contains("questions") && !j["questions"].is_null()) {
      c.questions = j["questions"].get<std::string>();
    }
    c.lowercase = j.value("lowercase", false);
  } catch (const Json::exception& e) {
    throw InputError("config file '" + path.string() + "': " + e.what());
  }
  return c;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

Json tool_json() {
  return Json{{"name", kToolName}, {"version", EMBSIM_VERSION}};
}

void emit_json(const Json& j, const std::string& out_path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + out_path + "'");
  file << text;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path.string() + "'");
  return file;
}

std::vector<AnalogyQuestion> load_questions(const std::string& path, bool lowercase) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open questions file '" + path + "'");
  std::vector<AnalogyQuestion> questions;
  try {
    questions = parse_analogy_file(in, {.lowercase = lowercase});
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
  if (questions.empty()) throw InputError("questions file '" + path + "' has no questions");
  return questions;
}

void write_plots(const fs::path& dir, const Comparison& c, bool kde) {
  fs::create_directories(dir);
  auto hist = [&](const std::string& stem, const HistogramSummary& h) {
    auto file = open_output(dir / (stem + "_histogram.csv"));
    write_histogram_csv(file, h);
    if (kde && !h.kde_points.empty()) {
      auto kfile = open_output(dir / (stem + "_kde.csv"));
      write_kde_csv(kfile, h);
    }
  };
  hist("kappa", c.kappa_histogram);
  hist("matched", c.matched_histogram);
  hist("cca", c.cca_histogram);
  {
    auto file = open_output(dir / "matched_sorted.csv");
    const std::vector<double> sorted = c.matching.sorted_descending();
    write_series_csv(file, "correlation", sorted);
  }
  {
    auto file = open_output(dir / "cca_sorted.csv");
    write_series_csv(file, "correlation", c.cca.correlations);
  }
}

void print_compare_summary(std::ostream& err, const Comparison& c) {
  err << std::fixed << std::setprecision(4);
  err << "left        " << c.left_name << " (" << c.left_dims << " dims)\n"
      << "right       " << c.right_name << " (" << c.right_dims << " dims)\n"
      << "shared      " << c.shared_count << " words (dropped " << c.dropped_left
      << " / " << c.dropped_right << ")\n"
      << "kappa       median " << c.kappa_histogram.median << ", mean |k| "
      << c.kappa_mean_abs << "\n"
      << "zeta_1to1   " << c.matching.zeta_1to1;
  if (c.matching.absolute) err << " (abs " << c.matching.zeta_1to1_abs << ")";
  err << "\nzeta_cca    " << c.cca.zeta_cca << " over k=" << c.cca.k() << "\n";
  for (const std::string& w : c.cca.warnings) err << "warning: " << w << "\n";
  err.unsetf(std::ios::floatfield);
}

struct CompareFlags {
  CompareConfig config;
  std::string config_path;
  std::string out_path;
  std::string plots_dir;
  std::string directions_prefix;
  bool no_timestamp = false;
};

int cmd_compare(const CompareFlags& flags, const CLI::App& sub, unsigned threads,
                std::ostream& out, std::ostream& err) {
  CompareConfig config = flags.config;
  if (!flags.config_path.empty()) {
    config = load_config(flags.config_path);
    // Flags given on the command line override the file.
    if (sub.count("left")) config.left = flags.config.left;
    if (sub.count("right")) config.right = flags.config.right;
    if (sub.count("--format")) config.format = flags.config.format;
    if (sub.count("--abs-correlation")) config.abs_correlation = flags.config.abs_correlation;
    if (sub.count("--regularization")) config.regularization = flags.config.regularization;
    if (sub.count("--bins")) config.bins = flags.config.bins;
    if (sub.count("--kde")) config.kde = flags.config.kde;
    if (sub.count("--questions")) config.questions = flags.config.questions;
    if (sub.count("--lowercase")) config.lowercase = flags.config.lowercase;
  }
  if (config.left.empty() || config.right.empty()) {
    throw InputError("compare needs two embedding files");
  }
  if (config.bins < 1) throw InputError("--bins must be >= 1");
  if (config.regularization && *config.regularization < 0.0) {
    throw InputError("--regularization must be >= 0");
  }

  const EmbeddingFormat format = parse_format_name(config.format);
  EmbeddingMatrix left = load_embedding(config.left, format);
  EmbeddingMatrix right = load_embedding(config.right, format);
  std::optional<EmbeddingMatrix> left_copy, right_copy;
  if (!config.questions.empty()) {
    left_copy = left;
    right_copy = right;
  }
  const AlignedPair pair = align_vocabularies(std::move(left), std::move(right));

  const Comparison c = compare_pair(pair, {.abs_correlation = config.abs_correlation,
                                           .regularization = config.regularization,
                                           .bins = config.bins,
                                           .kde = config.kde,
                                           .threads = threads});

  Json report;
  report["tool"] = tool_json();
  report["config"] = config_json(config);
  const Json body = serialize(c);
  for (const auto& [key, value] : body.items()) report[key] = value;
  report["inputs"]["left"]["path"] = config.left;
  report["inputs"]["right"]["path"] = config.right;

  if (!config.questions.empty()) {
    const auto questions = load_questions(config.questions, config.lowercase);
    AgreementReport agreement =
        agreement_report(*left_copy, *right_copy, questions, threads);
    agreement.zeta_1to1 = c.matching.zeta_1to1;
    agreement.zeta_cca = c.cca.zeta_cca;
    report["analogy"] = serialize(agreement);
    err << "alpha       " << agreement.agreement.alpha << " over "
        << agreement.agreement.n_items << " questions\n";
  }
  if (!flags.no_timestamp) report["generated_at"] = utc_timestamp();

  if (!flags.plots_dir.empty()) write_plots(flags.plots_dir, c, config.kde);
  if (!flags.directions_prefix.empty()) {
    auto l = open_output(flags.directions_prefix + ".left.txt");
    write_directions(l, c.cca.left_directions);
    auto r = open_output(flags.directions_prefix + ".right.txt");
    write_directions(r, c.cca.right_directions);
  }
  print_compare_summary(err, c);
  emit_json(report, flags.out_path, out);
  return kExitOk;
}

struct AnalogyFlags {
  std::string embedding, questions, format = "auto";
  bool lowercase = false;
  bool count_oov_wrong = false;
  std::string answers_path, out_path;
};

int cmd_analogy(const AnalogyFlags& flags, unsigned threads, std::ostream& out,
                std::ostream& err) {
  const EmbeddingMatrix e = load_embedding(flags.embedding, parse_format_name(flags.format));
  const auto questions = load_questions(flags.questions, flags.lowercase);
  const AccuracyReport report = evaluate(e, questions, threads);

  Json j;
  j["tool"] = tool_json();
  j["oov_convention"] = flags.count_oov_wrong ? "count_wrong" : "skip";
  const auto headline = [&](const AccuracyCounts& c) {
    return flags.count_oov_wrong ? c.accuracy_oov_wrong() : c.accuracy();
  };
  j["accuracy"] = {{"semantic", headline(report.semantic)},
                   {"syntactic", headline(report.syntactic)},
                   {"total", headline(report.total)}};
  const Json body = serialize(report);
  for (const auto& [key, value] : body.items()) j[key] = value;

  if (!flags.answers_path.empty()) {
    auto file = open_output(flags.answers_path);
    write_answers_csv(file, questions, report.answers);
  }
  err << std::fixed << std::setprecision(2) << "accuracy    sem "
      << 100 * headline(report.semantic) << "  syn " << 100 * headline(report.syntactic)
      << "  tot " << 100 * headline(report.total) << "  (" << report.total.answered
      << " answered, " << report.total.skipped << " skipped)\n";
  err.unsetf(std::ios::floatfield);
  emit_json(j, flags.out_path, out);
  return kExitOk;
}

struct AgreementFlags {
  std::string first, second, out_path;
  std::optional<double> zeta_1to1, zeta_cca;
};

std::vector<AnswerRow> load_answers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open answers file '" + path + "'");
  try {
    return read_answers_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

int cmd_agreement(const AgreementFlags& flags, std::ostream& out, std::ostream& err) {
  const auto a = load_answers(flags.first);
  const auto b = load_answers(flags.second);
  if (a.size() != b.size()) {
    throw InputError("answer files have different lengths (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<Label> la, lb;
  AgreementReport report;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].question_index != b[i].question_index) {
      throw InputError("answer files disagree on question order at row " +
                       std::to_string(i + 1));
    }
    la.push_back(a[i].predicted);
    lb.push_back(b[i].predicted);
    if (a[i].predicted && b[i].predicted && *a[i].predicted != *b[i].predicted) {
      report.disagreements.push_back({a[i].question_index, a[i].a, a[i].b, a[i].c,
                                      a[i].d, a[i].predicted, b[i].predicted});
    }
  }
  report.agreement = krippendorff_alpha(la, lb);
  report.zeta_1to1 = flags.zeta_1to1;
  report.zeta_cca = flags.zeta_cca;

  Json j;
  j["tool"] = tool_json();
  Json body = serialize(report);
  body.erase("first");
  body.erase("second");
  for (const auto& [key, value] : body.items()) j[key] = value;
  err << "alpha       " << report.agreement.alpha << " over " << report.agreement.n_items
      << " items (" << report.agreement.n_excluded << " excluded)\n";
  emit_json(j, flags.out_path, out);
  return kExitOk;
}

struct SynthFlags {
  Index rows = 1000;
  Index dims = 50;
  std::uint64_t seed = 1;
  std::vector<std::string> transforms;
  double sigma = 0.0;
  std::string out_dir = ".";
  std::string prefix = "synth";
  int digits = 6;
};

int cmd_synth(const SynthFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.digits < 1 || flags.digits > 17) throw InputError("--digits must be in [1, 17]");
  SynthSpec spec;
  spec.n_rows = flags.rows;
  spec.n_dims = flags.dims;
  spec.noise_sigma = flags.sigma;
  spec.seed = flags.seed + 1;
  for (const std::string& name : flags.transforms) {
    spec.transforms.push_back({parse_transform_kind(name), {}, {}, {}});
  }
  const EmbeddingMatrix base = random_embedding(flags.rows, flags.dims, flags.seed,
                                                flags.prefix + "_left");
  const SynthPair synth = derive_pair(base, spec);

  const fs::path dir(flags.out_dir);
  fs::create_directories(dir);
  const fs::path left_path = dir / (flags.prefix + "_left.txt");
  const fs::path right_path = dir / (flags.prefix + "_right.txt");
  const fs::path truth_path = dir / (flags.prefix + "_truth.json");
  {
    auto file = open_output(left_path);
    write_glove_text(file, synth.pair.left(), flags.digits);
  }
  {
    auto file = open_output(right_path);
    write_glove_text(file, synth.pair.right(), flags.digits);
  }
  Json truth;
  truth["tool"] = tool_json();
  truth["base_seed"] = flags.seed;
  truth["rows"] = flags.rows;
  truth["dims"] = flags.dims;
  truth["left"] = left_path.string();
  truth["right"] = right_path.string();
  const Json body = serialize(synth.truth);
  for (const auto& [key, value] : body.items()) truth[key] = value;
  emit_json(truth, truth_path.string(), out);
  err << "wrote " << left_path.string() << ", " << right_path.string() << ", "
      << truth_path.string() << "\n";
  out << Json{{"left", left_path.string()},
              {"right", right_path.string()},
              {"truth", truth_path.string()}}
             .dump(2)
      << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consistency measures between two word-embedding spaces", kToolName};
  app.set_version_flag("--version", std::string(EMBSIM_VERSION));
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads (default: $EMBSIM_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);

  CompareFlags compare_flags;
  double regularization = 0.0;
  CLI::App* compare = app.add_subcommand(
      "compare", "Correlation matrix, one-to-one matching and CCA for two embeddings");
  compare->add_option("left", compare_flags.config.left, "Left embedding file");
  compare->add_option("right", compare_flags.config.right, "Right embedding file");
  compare->add_option("--config", compare_flags.config_path,
                      "Re-run with the config echoed in an earlier report");
  compare->add_option("--format", compare_flags.config.format, "auto, word2vec or glove");
  compare->add_flag("--abs-correlation", compare_flags.config.abs_correlation,
                    "Match dimensions on |correlation|");
  auto* reg_opt = compare->add_option("--regularization", regularization,
                                      "Absolute CCA ridge (default: 1e-8 * trace/D per side)");
  compare->add_option("--bins", compare_flags.config.bins, "Histogram bins")
      ->capture_default_str();
  compare->add_flag("--kde", compare_flags.config.kde, "Add kernel density estimates");
  compare->add_option("--plots-dir", compare_flags.plots_dir, "Write plot-ready CSVs here");
  compare->add_option("--directions-out", compare_flags.directions_prefix,
                      "Write CCA directions to <prefix>.left.txt / .right.txt");
  compare->add_option("--questions", compare_flags.config.questions,
                      "Analogy questions for an agreement section");
  compare->add_flag("--lowercase", compare_flags.config.lowercase,
                    "Lowercase analogy words");
  compare->add_option("--out", compare_flags.out_path, "Write the JSON report here");
  compare->add_flag("--no-timestamp", compare_flags.no_timestamp,
                    "Omit generated_at for byte-identical reports");

  AnalogyFlags analogy_flags;
  CLI::App* analogy = app.add_subcommand("analogy", "Word-analogy accuracy (3CosAdd)");
  analogy->add_option("embedding", analogy_flags.embedding, "Embedding file")->required();
  analogy->add_option("questions", analogy_flags.questions, "Analogy questions file")
      ->required();
  analogy->add_option("--format", analogy_flags.format, "auto, word2vec or glove");
  analogy->add_flag("--lowercase", analogy_flags.lowercase, "Lowercase analogy words");
  analogy->add_flag("--count-oov-wrong", analogy_flags.count_oov_wrong,
                    "Headline accuracy counts out-of-vocabulary questions as wrong");
  analogy->add_option("--answers", analogy_flags.answers_path, "Write the answers CSV here");
  analogy->add_option("--out", analogy_flags.out_path, "Write the JSON report here");

  AgreementFlags agreement_flags;
  double zeta_1to1 = 0.0, zeta_cca = 0.0;
  CLI::App* agreement = app.add_subcommand(
      "agreement", "Krippendorff's alpha between two answers CSVs");
  agreement->add_option("first", agreement_flags.first, "Answers CSV")->required();
  agreement->add_option("second", agreement_flags.second, "Answers CSV")->required();
  auto* z1_opt = agreement->add_option("--zeta-1to1", zeta_1to1,
                                       "Add zeta_1to1 to the combined record");
  auto* zc_opt = agreement->add_option("--zeta-cca", zeta_cca,
                                       "Add zeta_cca to the combined record");
  agreement->add_option("--out", agreement_flags.out_path, "Write the JSON report here");

  SynthFlags synth_flags;
  CLI::App* synth = app.add_subcommand(
      "synth", "Random base embedding plus a transformed copy with ground truth");
  synth->add_option("--rows", synth_flags.rows, "Vocabulary size")->capture_default_str();
  synth->add_option("--dims", synth_flags.dims, "Dimensions")->capture_default_str();
  synth->add_option("--seed", synth_flags.seed,
                    "Base seed; the transform stream uses seed + 1")
      ->capture_default_str();
  synth->add_option("--transform", synth_flags.transforms,
                    "identity, permutation, sign_flip or linear (repeatable, in order)");
  synth->add_option("--sigma", synth_flags.sigma, "Gaussian noise added last")
      ->capture_default_str();
  synth->add_option("--out-dir", synth_flags.out_dir, "Output directory")
      ->capture_default_str();
  synth->add_option("--prefix", synth_flags.prefix, "Output file prefix")
      ->capture_default_str();
  synth->add_option("--digits", synth_flags.digits, "Significant digits per value")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*compare) {
      if (reg_opt->count() > 0) compare_flags.config.regularization = regularization;
      return cmd_compare(compare_flags, *compare, threads, out, err);
    }
    if (*analogy) return cmd_analogy(analogy_flags, threads, out, err);
    if (*agreement) {
      if (z1_opt->count() > 0) agreement_flags.zeta_1to1 = zeta_1to1;
      if (zc_opt->count() > 0) agreement_flags.zeta_cca = zeta_cca;
      return cmd_agreement(agreement_flags, out, err);
    }
    if (*synth) return cmd_synth(synth_flags, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumericalError;
  }
  return kExitInputError;
}

}  // namespace embsim::cli
