// Copyright 2026 The TRScore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Kept in a header so the test suites can drive the
// exact same code path in-process.

#ifndef TRSCORE_TOOLS_CLI_HPP_
#define TRSCORE_TOOLS_CLI_HPP_

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trscore/trscore.hpp"

namespace trscore::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBackend = 3;

struct Options {
  std::string backend = "ngram";
  std::string endpoint;
  std::string model;
  std::string token_env = "TRSCORE_API_TOKEN";
  int logprobs = 0;
  int order = 2;
  double smoothing_k = 1.0;
  std::size_t max_parallel = 4;
  long timeout_ms = 30000;
  std::string ngram_model;
  std::string train_corpus;
  std::string mode = "sum";
  std::string pairwise_mode = "nll_ratio";
  std::vector<double> percentiles = default_percentiles();
  std::string format = "json";
  std::string input_format = "one-per-line";
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string csv_output;
  std::string curve_csv;
  bool strict_exclamation = false;
};

namespace detail {

inline void emit(const Options& opt, std::ostream& out, const std::string& content) {
  if (opt.output.empty()) {
    out << content;
  } else {
    write_file_atomic(opt.output, content);
  }
}

inline nlohmann::json backend_config_json(const Options& opt) {
  nlohmann::json cfg = {{"backend", opt.backend}, {"max_parallel", opt.max_parallel}};
  if (opt.backend == "remote") {
    cfg["endpoint"] = opt.endpoint;
    cfg["model"] = opt.model;
    cfg["token_env"] = opt.token_env;
    cfg["logprobs"] = opt.logprobs;
    cfg["timeout_ms"] = opt.timeout_ms;
  } else {
    cfg["order"] = opt.order;
    cfg["smoothing_k"] = opt.smoothing_k;
    if (!opt.ngram_model.empty()) cfg["ngram_model"] = opt.ngram_model;
    if (!opt.train_corpus.empty()) cfg["train_corpus"] = opt.train_corpus;
  }
  return cfg;
}

inline BackendConfig backend_config(const Options& opt) {
  BackendConfig c;
  c.kind = parse_backend_kind(opt.backend);
  c.endpoint = opt.endpoint;
  c.model_name = opt.model;
  c.token_env = opt.token_env;
  c.logprobs = opt.logprobs;
  c.order = opt.order;
  c.smoothing_k = opt.smoothing_k;
  c.max_parallel = opt.max_parallel;
  c.timeout = std::chrono::milliseconds(opt.timeout_ms);
  return c;
}

// For the n-gram backend the model comes from --ngram-model, else is trained
// on --train-corpus, else on `fallback_training`.
inline std::shared_ptr<const LikelihoodBackend> build_backend(const Options& opt,
                                                              const Corpus& fallback_training,
                                                              RunManifest& manifest) {
  const BackendConfig cfg = backend_config(opt);
  cfg.validate();
  if (cfg.kind == BackendKind::kRemote) return make_backend(cfg);
  std::shared_ptr<const NgramModel> model;
  if (!opt.ngram_model.empty()) {
    manifest.add_input(opt.ngram_model);
    model = std::make_shared<NgramModel>(load_ngram(opt.ngram_model));
  } else if (!opt.train_corpus.empty()) {
    manifest.add_input(opt.train_corpus);
    model = std::make_shared<NgramModel>(train_ngram(
        load_corpus(opt.train_corpus, parse_input_format(opt.input_format)), cfg.order,
        cfg.smoothing_k));
  } else {
    manifest.config["model_trained_on"] = "reference";
    model = std::make_shared<NgramModel>(train_ngram(fallback_training, cfg.order, cfg.smoothing_k));
  }
  return make_backend(cfg, std::move(model));
}

inline std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

inline int cmd_score(const Options& opt, const std::string& reference,
                     const std::vector<std::string>& candidates, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "score";
  const auto fmt = parse_input_format(opt.input_format);
  const auto mode = parse_score_mode(opt.mode);
  manifest.add_input(reference);
  for (const auto& c : candidates) manifest.add_input(c);

  const Corpus ref = load_corpus(reference, fmt);
  if (ref.empty()) throw InputError(reference + ": no sentences");
  std::vector<Corpus> cands;
  for (const auto& c : candidates) {
    cands.push_back(load_corpus(c, fmt));
    if (cands.back().empty()) throw InputError(c + ": no sentences");
  }
  manifest.config = backend_config_json(opt);
  auto backend = build_backend(opt, ref, manifest);
  manifest.config["mode"] = opt.mode;
  manifest.config["percentiles"] = opt.percentiles;
  manifest.config["input_format"] = to_string(fmt);

  const auto ref_scores = score_corpus(*backend, ref);
  const ScoreDistribution ref_dist = build_distribution(ref_scores, mode, ref.id);

  std::vector<std::pair<std::string, TRScoreReport>> reports;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto cand_scores = score_corpus(*backend, cands[i]);
    auto report = trscore(ref_dist, build_distribution(cand_scores, mode, cands[i].id),
                          opt.percentiles);
    report.metadata.backend = backend->id();
    report.metadata.first_token_policy = to_string(backend->first_token_policy());
    for (const auto& d : ref.diagnostics) report.metadata.warnings.push_back("reference: " + d);
    for (const auto& d : cands[i].diagnostics) {
      report.metadata.warnings.push_back("candidate: " + d);
    }
    reports.emplace_back(candidates[i], std::move(report));
  }

  nlohmann::json doc;
  if (reports.size() == 1) {
    doc = to_json(reports.front().second);
  } else {
    doc["reports"] = nlohmann::json::array();
    for (const auto& [label, r] : reports) {
      auto j = to_json(r);
      j["candidate"] = label;
      doc["reports"].push_back(std::move(j));
    }
    std::vector<TRScoreReport> plain;
    for (const auto& [label, r] : reports) plain.push_back(r);
    doc["mean_curve"] = nlohmann::json::array();
    for (const auto& [x, v] : mean_curve(plain)) {
      doc["mean_curve"].push_back({{"x", x}, {"trscore", v}, {"aggregation", "unweighted_mean"}});
    }
  }
  doc["segmentation"] = ref.segmentation;
  doc["manifest"] = to_json(manifest);

  if (!opt.csv_output.empty()) write_file_atomic(opt.csv_output, to_csv(reports));
  if (!opt.curve_csv.empty()) {
    std::vector<TRScoreReport> plain;
    for (const auto& [label, r] : reports) plain.push_back(r);
    const auto mean = mean_curve(plain);
    std::ostringstream csv;
    csv << "x";
    for (const auto& [label, r] : reports) csv << ',' << label;
    csv << ",mean\n";
    for (const auto& [x, m] : mean) {
      csv << x;
      for (const auto& [label, r] : reports) csv << ',' << r.trscore_at(x);
      csv << ',' << m << '\n';
    }
    write_file_atomic(opt.curve_csv, csv.str());
  }
  emit(opt, out, opt.format == "csv" ? to_csv(reports) : dump(doc));
  return kExitOk;
}

inline int cmd_pairwise(const Options& opt, const std::string& reference,
                        const std::string& hypothesis, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "pairwise";
  manifest.add_input(reference);
  manifest.add_input(hypothesis);
  const auto fmt = parse_input_format(opt.input_format);
  const auto pmode = parse_pairwise_mode(opt.pairwise_mode);
  const Corpus ref = load_corpus(reference, fmt);
  const Corpus hyp = load_corpus(hypothesis, fmt);
  if (ref.size() != hyp.size()) {
    throw InputError("unpaired sentences: reference has " + std::to_string(ref.size()) +
                     ", hypothesis has " + std::to_string(hyp.size()));
  }
  std::map<std::string, std::size_t> hyp_index;
  for (std::size_t i = 0; i < hyp.size(); ++i) hyp_index[hyp.sentences[i].id] = i;
  Corpus ordered_hyp = hyp;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    auto it = hyp_index.find(ref.sentences[i].id);
    if (it == hyp_index.end()) {
      throw InputError("unpaired sentence id '" + ref.sentences[i].id + "'");
    }
    ordered_hyp.sentences[i] = hyp.sentences[it->second];
  }
  manifest.config = backend_config_json(opt);
  auto backend = build_backend(opt, ref, manifest);
  manifest.config["pairwise_mode"] = opt.pairwise_mode;
  manifest.config["input_format"] = to_string(fmt);

  const auto rs = score_corpus(*backend, ref);
  const auto hs = score_corpus(*backend, ordered_hyp);
  nlohmann::json pairs = nlohmann::json::array();
  std::ostringstream csv;
  csv << "id,reference_nll,hypothesis_nll,trscore\n";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double score = pairwise_from_nll(rs[i].total_nll, hs[i].total_nll, pmode);
    pairs.push_back({{"id", ref.sentences[i].id},
                     {"reference", ref.sentences[i].text},
                     {"hypothesis", ordered_hyp.sentences[i].text},
                     {"reference_nll", rs[i].total_nll},
                     {"hypothesis_nll", hs[i].total_nll},
                     {"trscore", score}});
    csv << ref.sentences[i].id << ',' << format_number(rs[i].total_nll, 4) << ','
        << format_number(hs[i].total_nll, 4) << ',' << format_number(score, 1) << '\n';
  }
  nlohmann::json doc = {{"mode", opt.pairwise_mode},
                        {"pairs", pairs},
                        {"metadata",
                         {{"backend", backend->id()},
                          {"first_token_policy", to_string(backend->first_token_policy())}}},
                        {"manifest", to_json(manifest)}};
  if (!opt.csv_output.empty()) write_file_atomic(opt.csv_output, csv.str());
  emit(opt, out, opt.format == "csv" ? csv.str() : dump(doc));
  return kExitOk;
}

inline int cmd_punct_f1(const Options& opt, const std::string& reference,
                        const std::string& hypothesis, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "punct-f1";
  manifest.add_input(reference);
  manifest.add_input(hypothesis);
  const auto fmt = parse_input_format(opt.input_format);
  manifest.config = {{"input_format", to_string(fmt)},
                     {"exclamation_as_period", opt.strict_exclamation}};
  PunctOptions popt;
  popt.exclamation_as_period = opt.strict_exclamation;
  const auto result =
      corpus_punct_f1(load_documents(reference, fmt), load_documents(hypothesis, fmt), popt);
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "P,R,F1\n"
        << format_number(100.0 * result.precision, 1) << ','
        << format_number(100.0 * result.recall, 1) << ',' << format_number(100.0 * result.f1, 1)
        << '\n';
    emit(opt, out, csv.str());
  } else {
    auto doc = to_json(result);
    doc["manifest"] = to_json(manifest);
    emit(opt, out, dump(doc));
  }
  return kExitOk;
}

// Two-column CSV of label,value. A first row whose value is not numeric is
// taken as a header.
inline std::vector<std::pair<std::string, double>> read_series(const std::string& path) {
  std::istringstream in(text::normalize_newlines(trscore::detail::read_file(path)));
  std::vector<std::pair<std::string, double>> out;
  std::set<std::string> labels;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (text::collapse_whitespace(line).empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected label,value");
    }
    const std::string label = text::collapse_whitespace(line.substr(0, comma));
    const std::string value = text::collapse_whitespace(line.substr(comma + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument("value");
    } catch (const std::logic_error&) {
      if (out.empty() && labels.empty()) {
        labels.insert("");  // header consumed
        continue;
      }
      throw InputError(path + ":" + std::to_string(line_no) + ": value '" + value +
                       "' is not a number");
    }
    if (!labels.insert(label).second) {
      throw InputError(path + ":" + std::to_string(line_no) + ": duplicate label '" + label + "'");
    }
    out.emplace_back(label, v);
  }
  return out;
}

inline int cmd_correlate(const Options& opt, const std::string& series_a,
                         const std::string& series_b, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "correlate";
  manifest.add_input(series_a);
  manifest.add_input(series_b);
  const auto a = read_series(series_a);
  const auto b = read_series(series_b);
  std::map<std::string, double> b_by_label(b.begin(), b.end());
  if (a.size() != b.size()) throw InputError("series have different labels");
  std::vector<double> xs, ys;
  nlohmann::json points = nlohmann::json::array();
  std::ostringstream csv;
  csv << "label,a,b\n";
  for (const auto& [label, v] : a) {
    auto it = b_by_label.find(label);
    if (it == b_by_label.end()) throw InputError("label '" + label + "' missing from " + series_b);
    xs.push_back(v);
    ys.push_back(it->second);
    points.push_back({{"label", label}, {"a", v}, {"b", it->second}});
    csv << label << ',' << v << ',' << it->second << '\n';
  }
  const double r = stats::pearson_r(xs, ys);
  nlohmann::json doc = {{"pearson_r", r},
                        {"n", xs.size()},
                        {"points", points},
                        {"manifest", to_json(manifest)}};
  if (!opt.csv_output.empty()) write_file_atomic(opt.csv_output, csv.str());
  emit(opt, out, opt.format == "csv" ? csv.str() : dump(doc));
  return kExitOk;
}

inline int cmd_hrs(const Options& opt, const std::string& ratings, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "hrs";
  manifest.add_input(ratings);
  const auto summary = hrs_summary(load_ratings(ratings));
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "HRS,mean_percent,stddev_percent,n_ratings,n_judges\n"
        << format_hrs(summary) << ',' << summary.mean_percent << ',' << summary.stddev_percent
        << ',' << summary.n_ratings << ',' << summary.n_judges << '\n';
    emit(opt, out, csv.str());
  } else {
    auto doc = to_json(summary);
    doc["manifest"] = to_json(manifest);
    emit(opt, out, dump(doc));
  }
  return kExitOk;
}

inline std::vector<PerturbSpec> read_manifest(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(trscore::detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": malformed manifest (" + e.what() + ")");
  }
  const nlohmann::json& list = doc.is_object() && doc.contains("specs") ? doc["specs"] : doc;
  if (!list.is_array()) throw InputError(path + ": manifest must be a list of specs");
  std::vector<PerturbSpec> specs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& s = list[i];
    try {
      PerturbSpec spec;
      spec.kind = parse_perturb_kind(s.at("kind").get<std::string>());
      spec.rate = s.at("rate").get<double>();
      spec.seed = s.value("seed", std::uint64_t{0});
      spec.validate();
      specs.push_back(spec);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ": spec " + std::to_string(i) + ": " + e.what());
    }
  }
  return specs;
}

inline std::string render_corpus(const Corpus& corpus, InputFormat fmt) {
  std::ostringstream os;
  for (const auto& s : corpus.sentences) {
    if (fmt == InputFormat::kJsonl) {
      os << nlohmann::json{{"id", s.id}, {"text", s.text}}.dump() << '\n';
    } else {
      os << s.text << '\n';
    }
  }
  return os.str();
}

inline std::string rate_label(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rate);
  return buf;
}

inline int cmd_perturb(const Options& opt, const std::string& input, const std::string& manifest_path,
                       const std::string& kind, double rate, const std::string& out_dir,
                       std::ostream& out) {
  RunManifest manifest;
  manifest.command = "perturb";
  manifest.add_input(input);
  std::vector<PerturbSpec> specs;
  if (!manifest_path.empty()) {
    manifest.add_input(manifest_path);
    specs = read_manifest(manifest_path);
    if (opt.seed) {
      for (auto& s : specs) s.seed = *opt.seed;
    }
  } else {
    if (kind.empty()) throw InputError("perturb needs a manifest or --kind");
    PerturbSpec s{parse_perturb_kind(kind), rate, opt.seed.value_or(0)};
    s.validate();
    specs.push_back(s);
  }
  const auto fmt = parse_input_format(opt.input_format);
  const Corpus corpus = load_corpus(input, fmt);
  manifest.config = {{"input_format", to_string(fmt)},
                     {"spellout_table_version", kSpelloutTableVersion}};

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory '" + out_dir + "'");

  const std::string stem = std::filesystem::path(input).stem().string();
  const std::string ext = fmt == InputFormat::kJsonl ? ".jsonl" : ".txt";
  std::ostringstream summary;
  summary << "index,kind,rate,seed,file,sentences,modified,no_eligible\n";
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    auto result = perturb_corpus(corpus, spec);
    if (fmt != InputFormat::kJsonl) {
      for (auto& s : result.corpus.sentences) s.id = original_id(s.id);
    }
    const std::string file = stem + "." + std::to_string(i) + "." + to_string(spec.kind) + "-r" +
                             rate_label(spec.rate) + ext;
    const std::string content = render_corpus(result.corpus, fmt);
    write_file_atomic(std::filesystem::path(out_dir) / file, content);
    summary << i << ',' << to_string(spec.kind) << ',' << rate_label(spec.rate) << ','
            << spec.seed << ',' << file << ',' << corpus.size() << ',' << result.modified << ','
            << result.no_eligible << '\n';
    rows.push_back({{"index", i},
                    {"kind", to_string(spec.kind)},
                    {"rate", spec.rate},
                    {"seed", spec.seed},
                    {"file", file},
                    {"sha256", sha256_hex(content)},
                    {"sentences", corpus.size()},
                    {"modified", result.modified},
                    {"no_eligible", result.no_eligible}});
  }
  write_file_atomic(std::filesystem::path(out_dir) / "sweep_summary.csv", summary.str());
  nlohmann::json doc = {{"outputs", rows}, {"manifest", to_json(manifest)}};
  const std::string report = dump(doc);
  write_file_atomic(std::filesystem::path(out_dir) / "sweep_report.json", report);
  emit(opt, out, opt.format == "csv" ? summary.str() : report);
  return kExitOk;
}

inline int cmd_train(const Options& opt, const std::string& corpus_path, std::ostream& out) {
  const auto model = train_ngram(load_corpus(corpus_path, parse_input_format(opt.input_format)),
                                 opt.order, opt.smoothing_k);
  std::ostringstream os;
  model.save(os);
  emit(opt, out, os.str());
  return kExitOk;
}

}  // namespace detail

// Runs one CLI invocation. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transcript readability scoring and companion metrics", "trscore"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key-value config file mirroring the flags (flags win)");
  app.set_version_flag("--version", std::string(kToolVersion));

  Options opt;
  std::uint64_t seed = 0;
  app.add_option("--backend", opt.backend, "Likelihood backend")
      ->check(CLI::IsMember({"remote", "ngram"}));
  app.add_option("--endpoint", opt.endpoint, "Completion endpoint URL (remote)");
  app.add_option("--model", opt.model, "Model name sent to the endpoint (remote)");
  app.add_option("--token-env", opt.token_env, "Environment variable holding the bearer token");
  app.add_option("--logprobs", opt.logprobs, "logprobs value sent to the endpoint");
  app.add_option("--order", opt.order, "n-gram order")->check(CLI::IsMember({2, 3}));
  app.add_option("--smoothing-k", opt.smoothing_k, "add-k smoothing constant")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-parallel", opt.max_parallel, "Concurrent scoring requests")
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout-ms", opt.timeout_ms, "Remote request timeout")
      ->check(CLI::PositiveNumber);
  app.add_option("--ngram-model", opt.ngram_model, "Saved n-gram count file");
  app.add_option("--train-corpus", opt.train_corpus, "Corpus to train the n-gram model on");
  app.add_option("--mode", opt.mode, "Sentence score aggregation")
      ->check(CLI::IsMember({"sum", "mean"}));
  app.add_option("--pairwise-mode", opt.pairwise_mode, "Pairwise ratio mode")
      ->check(CLI::IsMember({"nll_ratio", "prob_ratio"}));
  app.add_option("--percentiles", opt.percentiles, "Comma-separated percentiles in (0,100)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 100.0));
  app.add_option("--format", opt.format, "Primary output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--input-format", opt.input_format, "Input corpus format")
      ->check(CLI::IsMember({"plain", "one-per-line", "lines", "jsonl"}));
  auto* seed_opt = app.add_option("--seed", seed, "Perturbation seed (overrides manifest seeds)");
  app.add_option("-o,--output", opt.output, "Write the primary output here instead of stdout");
  app.add_option("--csv", opt.csv_output, "Also write a CSV table here");

  std::string a, b;
  std::vector<std::string> candidates;

  auto* score = app.add_subcommand("score", "TRScore of candidate corpora against a reference");
  score->add_option("reference", a, "Reference corpus")->required();
  score->add_option("candidates", candidates, "Candidate corpora")->required();
  score->add_option("--curve-csv", opt.curve_csv, "Write percentile curves (per candidate + mean)");

  auto* pairwise = app.add_subcommand("pairwise", "Sentence-by-sentence TRScore against references");
  pairwise->add_option("reference", a)->required();
  pairwise->add_option("hypothesis", b)->required();

  auto* punct = app.add_subcommand("punct-f1", "Punctuation P/R/F1 against a written reference");
  punct->add_option("reference", a)->required();
  punct->add_option("hypothesis", b)->required();
  punct->add_flag("--strict-exclamation", opt.strict_exclamation, "Score '!' as a period");

  auto* correlate = app.add_subcommand("correlate", "Pearson r between two label,value series");
  correlate->add_option("series_a", a)->required();
  correlate->add_option("series_b", b)->required();

  auto* hrs = app.add_subcommand("hrs", "Human readability score from judge ratings");
  hrs->add_option("ratings", a)->required();

  std::string kind, out_dir = ".";
  double rate = 0.0;
  auto* perturb = app.add_subcommand("perturb", "Apply seeded perturbations to a corpus");
  perturb->add_option("input", a)->required();
  perturb->add_option("manifest", b, "JSON list of {kind, rate, seed}");
  perturb->add_option("--kind", kind, "Single perturbation kind (instead of a manifest)");
  perturb->add_option("--rate", rate, "Rate for --kind")->check(CLI::Range(0.0, 1.0));
  perturb->add_option("--out-dir", out_dir, "Directory for perturbed corpora");

  auto* train = app.add_subcommand("train", "Train and save an n-gram count file");
  train->add_option("corpus", a)->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "trscore: " << e.what() << '\n';
    return kExitInput;
  }
  if (seed_opt->count() > 0) opt.seed = seed;

  try {
    if (score->parsed()) return detail::cmd_score(opt, a, candidates, out);
    if (pairwise->parsed()) return detail::cmd_pairwise(opt, a, b, out);
    if (punct->parsed()) return detail::cmd_punct_f1(opt, a, b, out);
    if (correlate->parsed()) return detail::cmd_correlate(opt, a, b, out);
    if (hrs->parsed()) return detail::cmd_hrs(opt, a, out);
    if (perturb->parsed()) return detail::cmd_perturb(opt, a, b, kind, rate, out_dir, out);
    if (train->parsed()) return detail::cmd_train(opt, a, out);
  } catch (const Error& e) {
    err << "trscore: " << e.what() << '\n';
    return e.kind() == ErrorKind::kBackend ? kExitBackend : kExitInput;
  } catch (const std::exception& e) {
    err << "trscore: " << e.what() << '\n';
    return kExitInput;
  }
  err << "trscore: no subcommand\n";
  return kExitInput;
}

}  // namespace trscore::cli

#endif  // TRSCORE_TOOLS_CLI_HPP_
