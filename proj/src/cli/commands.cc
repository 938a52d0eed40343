// Copyright 2026 The photothin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "photothin/cli/commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "photothin/approximation.h"
#include "photothin/cli/csv.h"
#include "photothin/cli/scenarios.h"
#include "photothin/cli/source_spec.h"
#include "photothin/montecarlo.h"
#include "photothin/thinning.h"

namespace photothin::cli {
namespace {

using nlohmann::json;

// Usage problems that are not library validation errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kFigureNote =
    "fig1-fig3 use a substitute wide input, 0.5*Binomial(600,0.55) + "
    "0.5*Binomial(1000,0.647) with mean 488.5: the lambda values match the "
    "published figures but the input silhouette is not the original.";

struct Options {
  std::string spec;
  double eta = 0.0;
  double target_lambda = 0.0;
  std::uint64_t n_report = kDefaultReportLength;
  double tail_eps = kDefaultTailEps;
  std::uint64_t seed = 42;
  std::string trials = "1000000";
  std::uint64_t chunk_size = McConfig{}.chunk_size;
  unsigned threads = 0;
  std::string out;

  CLI::App* active = nullptr;  // the subcommand that was parsed
};

std::string read_spec_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw UsageError("cannot read spec file '" + arg + "'");
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

Pmf load_source(const Options& opt) {
  SourceSpec spec = parse_source_spec(read_spec_text(opt.spec));
  if (opt.active->count("--tail-eps") > 0) {
    spec.tail_eps = opt.tail_eps;
  }
  return to_pmf(spec);
}

AttenuationCoefficient resolve_eta(const Options& opt, const Pmf& p) {
  const bool has_eta = opt.active->count("--eta") > 0;
  const bool has_lambda = opt.active->count("--target-lambda") > 0;
  if (has_eta == has_lambda) {
    throw UsageError("exactly one of --eta and --target-lambda is required");
  }
  if (has_eta) return AttenuationCoefficient(opt.eta);
  return eta_for_target_lambda(p, opt.target_lambda);
}

std::uint64_t parse_count(const std::string& text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc() && ptr == end && value > 0) return value;
  double approx = 0.0;
  auto [dptr, dec] = std::from_chars(text.data(), end, approx);
  if (dec == std::errc() && dptr == end && approx >= 1.0 && approx < 0x1.0p63 &&
      std::floor(approx) == approx) {
    return static_cast<std::uint64_t>(approx);
  }
  throw UsageError("--trials must be a positive integer, got '" + text + "'");
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

void cmd_moments(const Options& opt, std::ostream& out) {
  const MomentSummary m = moments(load_source(opt));
  emit(out, {{"mean", m.mean}, {"var", m.variance}, {"m3", m.m3}, {"c", m.c}, {"d", m.d}});
}

void cmd_thin(const Options& opt, std::ostream& out) {
  const Pmf p = load_source(opt);
  const AttenuationCoefficient eta = resolve_eta(opt, p);
  const double lambda = eta.value() * mean(p);
  const Pmf q = thin_direct(p, eta);
  const Pmf reference = lambda > 0.0 ? poisson_family(lambda, kReferencePoissonTail)
                                     : Pmf::from_sorted({{0, 1.0}});
  CsvTable table{{"n", "p_eta", "p_poisson", "delta"}, {}};
  for (std::uint64_t n = 0; n <= opt.n_report; ++n) {
    table.rows.push_back({static_cast<double>(n), q(n), reference(n),
                          q(n) - reference(n)});
  }
  write_csv_file(opt.out, table);
  emit(out, {{"eta", eta.value()}, {"lambda", lambda}, {"out", opt.out}});
}

void cmd_report(const Options& opt, std::ostream& out) {
  const Pmf p = load_source(opt);
  const ApproxReport r = build_report(p, resolve_eta(opt, p), opt.n_report);
  emit(out, {{"eta", r.eta},
             {"lambda", r.lambda},
             {"c", r.input_moments.c},
             {"d", r.input_moments.d},
             {"delta", r.delta},
             {"predicted", r.predicted},
             {"bound", r.bound},
             {"residuals", r.residuals},
             {"tail3", r.tail3},
             {"risk_exact", r.risk_exact},
             {"risk_approx", r.risk_approx}});
}

void cmd_mc(const Options& opt, std::ostream& out) {
  const Pmf p = load_source(opt);
  const AttenuationCoefficient eta = resolve_eta(opt, p);
  McConfig cfg;
  cfg.seed = opt.seed;
  cfg.trials = parse_count(opt.trials);
  cfg.chunk_size = opt.chunk_size;
  const McResult r = simulate_thinned(p, eta, cfg, opt.threads);
  emit(out, {{"trials", r.trials},
             {"seed", r.seed},
             {"eta", eta.value()},
             {"tv_to_analytic", r.tv_to_analytic},
             {"empirical_mean", mean(r.empirical)},
             {"analytic_mean", eta.value() * mean(p)},
             {"max_count_observed", r.max_count_observed}});
}

void cmd_table1(const Options& opt, std::ostream& out) {
  const std::vector<LadderRow> rows = table1_ladder();
  CsvTable table{{"lambda2C", "delta0", "delta1", "delta2", "delta3", "delta4"}, {}};
  bool all_within = true;
  for (const LadderRow& row : rows) {
    table.rows.push_back({row.lambda2c, row.delta[0], row.delta[1], row.delta[2],
                          row.delta[3], row.delta[4]});
    all_within = all_within && within_envelope(row);
  }
  write_csv_file(opt.out, table);
  emit(out, {{"out", opt.out}, {"rows", rows.size()}, {"within_envelope", all_within}});
}

void cmd_figures(const Options& opt, std::ostream& out) {
  std::filesystem::create_directories(opt.out);
  json figures = json::array();
  for (const FigureSeries& s : figure_series()) {
    CsvTable table{{"n", "p_eta", "p_poisson"}, {}};
    double max_gap = 0.0;
    for (std::size_t i = 0; i < s.n.size(); ++i) {
      table.rows.push_back({static_cast<double>(s.n[i]), s.p_eta[i], s.p_poisson[i]});
      max_gap = std::max(max_gap, std::abs(s.p_eta[i] - s.p_poisson[i]));
    }
    const std::string path = (std::filesystem::path(opt.out) / s.file).string();
    write_csv_file(path, table);
    figures.push_back({{"file", path},
                       {"eta", s.eta},
                       {"lambda", s.lambda},
                       {"max_gap", max_gap}});
  }
  emit(out, {{"figures", figures}, {"note", kFigureNote}});
}

void add_source_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("spec", opt.spec,
                  "JSON source spec: a file path, or inline JSON starting with '{'")
      ->required();
  cmd->add_option("--tail-eps", opt.tail_eps,
                  "Truncation tail for Poisson sources (default 1e-12)");
}

void add_eta_options(CLI::App* cmd, Options& opt) {
  CLI::Option* eta = cmd->add_option("--eta", opt.eta, "Attenuation coefficient in [0, 1]");
  CLI::Option* lambda = cmd->add_option("--target-lambda", opt.target_lambda,
                                        "Choose eta so that eta * E(X) equals this");
  eta->excludes(lambda);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Binomial thinning and Poisson-approximation diagnostics for "
               "attenuated photon sources"};
  app.name("photothin");
  app.require_subcommand(1);
  Options opt;

  CLI::App* moments_cmd = app.add_subcommand("moments", "Print E, Var, M, C, D as JSON");
  add_source_options(moments_cmd, opt);

  CLI::App* thin_cmd = app.add_subcommand(
      "thin", "Write n,p_eta,p_poisson,delta for n = 0..n-report to CSV");
  add_source_options(thin_cmd, opt);
  add_eta_options(thin_cmd, opt);
  thin_cmd->add_option("--n-report", opt.n_report, "Last n reported (default 10)");
  thin_cmd->add_option("--out", opt.out, "Output CSV path")->required();

  CLI::App* report_cmd = app.add_subcommand(
      "report", "Print the Poisson-approximation report as JSON");
  add_source_options(report_cmd, opt);
  add_eta_options(report_cmd, opt);
  report_cmd->add_option("--n-report", opt.n_report, "Last n reported (default 10)");

  CLI::App* mc_cmd = app.add_subcommand(
      "mc", "Monte Carlo check of the thinned distribution");
  add_source_options(mc_cmd, opt);
  add_eta_options(mc_cmd, opt);
  mc_cmd->add_option("--seed", opt.seed, "RNG seed (default 42)");
  mc_cmd->add_option("--trials", opt.trials, "Simulated pulses (default 1e6)");
  mc_cmd->add_option("--chunk-size", opt.chunk_size, "Trials per RNG substream");
  mc_cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  CLI::App* table1_cmd = app.add_subcommand(
      "table1", "Write the C-ladder error table (lambda = 0.1) to CSV");
  table1_cmd->add_option("--out", opt.out, "Output CSV path")->required();

  CLI::App* figures_cmd = app.add_subcommand(
      "figures", std::string("Write fig1.csv..fig4.csv into a directory. ") + kFigureNote);
  figures_cmd->add_option("--out", opt.out, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  opt.active = app.get_subcommands().front();
  try {
    if (*moments_cmd) cmd_moments(opt, out);
    else if (*thin_cmd) cmd_thin(opt, out);
    else if (*report_cmd) cmd_report(opt, out);
    else if (*mc_cmd) cmd_mc(opt, out);
    else if (*table1_cmd) cmd_table1(opt, out);
    else if (*figures_cmd) cmd_figures(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace photothin::cli
