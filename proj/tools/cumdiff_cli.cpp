// Command-line front end: analyze, reliability, hilbert-score, synth and
// coverage.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cumdiff/cumdiff.hpp"

namespace fs = std::filesystem;
using namespace cumdiff;

namespace {

struct InputOptions {
  std::string input;
  std::vector<std::string> covariates;
  std::string q;
  std::string r;
  std::string weight;
  std::string tie_mode = "aggregate";
  std::uint64_t seed = 0;
  unsigned bits = 0;
  std::vector<std::size_t> bins = {10, 100};
  std::string bin_strategy = "both";
  std::string format = "both";
  std::string out = ".";
};

void add_input_options(CLI::App* cmd, InputOptions& o, bool responses) {
  cmd->add_option("input", o.input, "CSV file with a header row")->required()->check(CLI::ExistingFile);
  cmd->add_option("--covariates", o.covariates, "covariate columns, in order")
      ->required()
      ->delimiter(',');
  if (responses) {
    cmd->add_option("--q", o.q, "response column of the first population")->required();
    cmd->add_option("--r", o.r, "response column of the second population")->required();
    cmd->add_option("--weight", o.weight, "weight column (default: unit weights)");
  }
  cmd->add_option("--tie-mode", o.tie_mode, "aggregate or perturb")
      ->check(CLI::IsMember({"aggregate", "perturb"}));
  cmd->add_option("--seed", o.seed, "seed for perturb mode");
  cmd->add_option("--bits", o.bits, "Hilbert bits per covariate (default 64 / p)");
  cmd->add_option("--out", o.out, "output directory");
}

void add_bin_options(CLI::App* cmd, InputOptions& o) {
  cmd->add_option("--bins", o.bins, "bin counts, e.g. 10,100")->delimiter(',');
  cmd->add_option("--bin-strategy", o.bin_strategy, "equispaced, equivariance or both")
      ->check(CLI::IsMember({"equispaced", "equivariance", "both"}));
  cmd->add_option("--format", o.format, "svg, json or both")
      ->check(CLI::IsMember({"svg", "json", "both"}));
}

AnalysisConfig analysis_config(const InputOptions& o) {
  AnalysisConfig c;
  c.covariate_names = o.covariates;
  c.tie_mode = o.tie_mode == "perturb" ? hilbert::TieMode::perturb : hilbert::TieMode::aggregate;
  c.seed = o.seed;
  c.bits_per_dim = o.bits;
  c.bins = o.bins;
  c.strategies.clear();
  if (o.bin_strategy != "equivariance") c.strategies.push_back(BinStrategy::equispaced);
  if (o.bin_strategy != "equispaced") c.strategies.push_back(BinStrategy::equivariance);
  return c;
}

IngestResult ingest(const InputOptions& o) {
  ColumnMap map;
  map.covariates = o.covariates;
  map.q = o.q;
  map.r = o.r;
  if (!o.weight.empty()) map.weight = o.weight;
  return ingest_csv(fs::path(o.input), map);
}

void report_written(const std::vector<fs::path>& paths) {
  for (const auto& p : paths) std::cerr << "wrote " << p.string() << '\n';
}

int run_analyze(const InputOptions& o) {
  const auto in = ingest(o);
  const auto bundle = analyze(in.dataset, in.covariates, analysis_config(o), in.dropped);
  report_written(emit_plots(bundle, parse_format(o.format), o.out));
  const auto& m = bundle.metrics;
  std::cout << "records " << bundle.provenance.records << " (dropped " << in.dropped
            << "), unique scores " << bundle.provenance.unique_scores << '\n'
            << "kuiper " << format_double(m.kuiper) << '\n'
            << "ks " << format_double(m.kolmogorov_smirnov) << '\n'
            << "avg_diff " << format_double(m.average_difference) << '\n'
            << "sigma " << format_double(m.sigma) << '\n';
  if (m.kuiper_over_sigma) {
    std::cout << "kuiper/sigma " << format_double(*m.kuiper_over_sigma) << '\n'
              << "ks/sigma " << format_double(*m.ks_over_sigma) << '\n';
  } else {
    std::cout << "kuiper/sigma undefined\nks/sigma undefined\n";
  }
  return 0;
}

int run_reliability(const InputOptions& o) {
  const auto in = ingest(o);
  auto config = analysis_config(o);
  const auto bundle = analyze(in.dataset, in.covariates, config, in.dropped);
  const auto format = parse_format(o.format);

  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create '" + o.out + "'");
  std::vector<fs::path> written;
  if (format != OutputFormat::svg) {
    written.push_back(fs::path(o.out) / "reliability.json");
    write_text(written.back(), diagrams_json(bundle.diagrams, bundle.provenance));
  }
  if (format != OutputFormat::json) {
    for (const auto& entry : bundle.diagrams) {
      written.push_back(fs::path(o.out) / ("reliability_" + std::string(to_string(entry.diagram.strategy)) +
                                           "_" + std::to_string(entry.requested_bins) + ".svg"));
      write_text(written.back(), reliability_svg(entry));
    }
  }
  report_written(written);
  return 0;
}

int run_hilbert_score(const InputOptions& o, bool to_stdout) {
  const auto table = read_covariates(fs::path(o.input), o.covariates);
  const auto config = analysis_config(o);
  auto scores = covariate_scores(table.covariates, config);
  hilbert::Config h = hilbert::Config::for_dims(table.covariates.cols);
  h.tie_mode = config.tie_mode;
  h.seed = config.seed;
  scores = hilbert::break_ties(scores, h);

  std::ostringstream os;
  os << "row,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    os << table.rows[i] << ',' << format_double(scores[i]) << '\n';
  }
  if (to_stdout) {
    std::cout << os.str();
  } else {
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create '" + o.out + "'");
    const fs::path path = fs::path(o.out) / "scores.csv";
    write_text(path, os.str());
    report_written({path});
  }
  return 0;
}

struct SynthOptions {
  std::string profile = "jump";
  std::string noise = "gaussian";
  std::size_t n = 4000;
  std::size_t m = 1000;
  double sigma_noise = 0.1;
  std::uint64_t seed = 0;
  std::string out = ".";
};

synth::Spec synth_spec(const SynthOptions& o) {
  synth::Spec spec;
  spec.n = o.n;
  spec.m = o.m;
  spec.profile = synth::parse_profile(o.profile);
  spec.noise = synth::parse_noise(o.noise);
  spec.sigma_noise = o.sigma_noise;
  spec.seed = o.seed;
  spec.validate();
  return spec;
}

void print_metrics(const char* label, const CurveMetrics& m) {
  std::cout << "  \"" << label << "\": {\"kuiper\": " << format_double(m.kuiper)
            << ", \"ks\": " << format_double(m.kolmogorov_smirnov)
            << ", \"avg_diff\": " << format_double(m.average_difference)
            << ", \"sigma\": " << format_double(m.sigma) << "}";
}

int run_synth(const SynthOptions& o) {
  const auto spec = synth_spec(o);
  const auto sample = synth::generate(spec);

  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create '" + o.out + "'");

  std::ostringstream data;
  data << "score,q,r,weight\n";
  for (const auto& rec : sample.dataset.records) {
    data << format_double(rec.score) << ',' << format_double(rec.q) << ','
         << format_double(rec.r) << ',' << format_double(rec.weight) << '\n';
  }
  std::ostringstream expected;
  expected << "score,q,r,weight\n";
  const auto& e = sample.expected;
  for (std::size_t j = 0; j < e.size(); ++j) {
    expected << format_double(e.scores()[j]) << ',' << format_double(e.q_mean()[j]) << ','
             << format_double(e.r_mean()[j]) << ',' << format_double(e.weight_total()[j]) << '\n';
  }
  const fs::path data_path = fs::path(o.out) / "synth.csv";
  const fs::path expected_path = fs::path(o.out) / "expected.csv";
  write_text(data_path, data.str());
  write_text(expected_path, expected.str());
  report_written({data_path, expected_path});

  std::cout << "{\n";
  print_metrics("observed", metrics(aggregate(sample.dataset)));
  std::cout << ",\n";
  print_metrics("expected", metrics(e));
  std::cout << "\n}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cumulative differences between paired populations"};
  app.require_subcommand(1);

  InputOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "cumulative curve, metrics and reliability diagrams");
  add_input_options(analyze_cmd, analyze_opts, true);
  add_bin_options(analyze_cmd, analyze_opts);

  InputOptions rel_opts;
  auto* rel_cmd = app.add_subcommand("reliability", "reliability diagrams only");
  add_input_options(rel_cmd, rel_opts, true);
  add_bin_options(rel_cmd, rel_opts);

  InputOptions score_opts;
  auto* score_cmd = app.add_subcommand("hilbert-score", "scalar scores from covariates");
  add_input_options(score_cmd, score_opts, false);

  SynthOptions synth_opts;
  auto* synth_cmd = app.add_subcommand("synth", "synthetic paired data with known expectations");
  synth_cmd->add_option("--profile", synth_opts.profile, "null, flat_middle, jump or oscillating")
      ->check(CLI::IsMember({"null", "flat_middle", "jump", "oscillating"}));
  synth_cmd->add_option("--noise", synth_opts.noise, "gaussian or bernoulli")
      ->check(CLI::IsMember({"gaussian", "bernoulli"}));
  synth_cmd->add_option("--n", synth_opts.n, "number of records");
  synth_cmd->add_option("--m", synth_opts.m, "number of distinct scores");
  synth_cmd->add_option("--sigma-noise", synth_opts.sigma_noise, "gaussian noise level");
  synth_cmd->add_option("--seed", synth_opts.seed, "random seed");
  synth_cmd->add_option("--out", synth_opts.out, "output directory");

  SynthOptions cov_opts;
  cov_opts.profile = "null";
  cov_opts.n = 1000;
  cov_opts.m = 100;
  std::size_t trials = 20000;
  unsigned threads = 0;
  auto* cov_cmd = app.add_subcommand("coverage", "null coverage of the 2 sigma band");
  cov_cmd->add_option("--trials", trials, "number of Monte-Carlo trials");
  cov_cmd->add_option("--noise", cov_opts.noise, "gaussian or bernoulli")
      ->check(CLI::IsMember({"gaussian", "bernoulli"}));
  cov_cmd->add_option("--n", cov_opts.n, "records per trial");
  cov_cmd->add_option("--m", cov_opts.m, "distinct scores per trial");
  cov_cmd->add_option("--sigma-noise", cov_opts.sigma_noise, "gaussian noise level");
  cov_cmd->add_option("--seed", cov_opts.seed, "master seed");
  cov_cmd->add_option("--threads", threads, "worker threads (0: all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) return run_analyze(analyze_opts);
    if (rel_cmd->parsed()) return run_reliability(rel_opts);
    if (score_cmd->parsed()) return run_hilbert_score(score_opts, score_cmd->count("--out") == 0);
    if (synth_cmd->parsed()) return run_synth(synth_opts);
    if (cov_cmd->parsed()) {
      const auto spec = synth_spec(cov_opts);
      const auto result = coverage(trials, spec, cov_opts.seed, threads);
      std::cout << "{\"trials\": " << result.trials << ", \"covered\": " << result.covered
                << ", \"fraction\": " << format_double(result.fraction) << "}\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
