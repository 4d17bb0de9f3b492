// Copyright 2026 the gtorus authors
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
//
// Command-line laboratory for the critical geometric random graph on the
// 2-dimensional torus. Exit codes: 0 all checks pass, 1 a numeric check
// failed, 2 usage or parameter error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "gtorus/branching.hpp"
#include "gtorus/calibration.hpp"
#include "gtorus/explore.hpp"
#include "gtorus/graph.hpp"
#include "gtorus/io.hpp"
#include "gtorus/limit.hpp"
#include "gtorus/markov.hpp"
#include "gtorus/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gtorus;

namespace {

struct Options {
  std::int64_t N = 101;
  double c = -1.0;  // negative means "use the critical coupling"
  bool critical = false;
  double alpha = 1.0;
  double T = 10.0;
  std::int64_t runs = 2000;
  std::uint64_t seed = 1;
  std::int64_t threads = 1;
  std::string out;
  double dt = 1e-4;
  std::int64_t limit_runs = 5000;
  std::int64_t top = 3;
  std::int64_t kmax = 40;
  std::string config;
};

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
  std::string note;
};

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%FT%TZ", &tm_utc);
  return buf;
}

class Report {
 public:
  Report(std::string verb, const Options& opt, std::string command)
      : verb_(std::move(verb)), command_(std::move(command)),
        started_(iso_now()) {
    params_["N"] = opt.N;
    params_["c"] = opt.c;
    params_["critical"] = opt.critical;
    params_["alpha"] = opt.alpha;
    params_["T"] = opt.T;
    params_["runs"] = opt.runs;
    params_["seed"] = opt.seed;
    params_["threads"] = opt.threads;
    params_["dt"] = opt.dt;
    params_["limit-runs"] = opt.limit_runs;
    params_["top"] = opt.top;
    params_["kmax"] = opt.kmax;
  }

  void check(const std::string& name, bool pass, double value, double bound,
             const std::string& note = "") {
    checks_.push_back({name, pass, value, bound, note});
    std::cout << (pass ? "PASS  " : "FAIL  ") << name << "  value="
              << format_double(value) << "  bound=" << format_double(bound);
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << "\n";
  }

  void note_tolerance(const std::string& name, double value,
                      const std::string& provenance) {
    tolerances_.push_back({{"name", name},
                           {"value", value},
                           {"provenance", provenance}});
  }

  void artifact(const fs::path& p) { artifacts_.push_back(p.string()); }

  bool all_pass() const {
    for (const auto& c : checks_) {
      if (!c.pass) return false;
    }
    return true;
  }

  int finish(const fs::path& out_dir) {
    json m;
    m["tool"] = "gtorus";
    m["version"] = calibration::kVersion;
    m["verb"] = verb_;
    m["command"] = command_;
    m["parameters"] = params_;
    m["started"] = started_;
    m["finished"] = iso_now();
    json checks = json::array();
    for (const auto& c : checks_) {
      checks.push_back({{"name", c.name},
                        {"pass", c.pass},
                        {"value", c.value},
                        {"bound", c.bound},
                        {"note", c.note}});
    }
    m["checks"] = checks;
    m["tolerance_provenance"] = tolerances_;
    m["artifacts"] = artifacts_;
    m["all_pass"] = all_pass();
    atomic_write(out_dir / "manifest.json", m.dump(2) + "\n");
    return all_pass() ? 0 : 1;
  }

 private:
  std::string verb_, command_, started_;
  json params_;
  std::vector<Check> checks_;
  json tolerances_ = json::array();
  std::vector<std::string> artifacts_;
};

double resolve_coupling(Options& opt) {
  if (opt.c < 0.0) {
    opt.critical = true;
    opt.c = critical_coupling();
  } else if (opt.critical) {
    opt.c = critical_coupling();
  }
  return opt.c;
}

GraphParams make_params(Options& opt) {
  resolve_coupling(opt);
  GraphParams p(static_cast<int>(opt.N), opt.c, opt.alpha);
  p.critical = opt.critical;
  return p;
}

fs::path resolve_out_dir(const Options& opt, const std::string& verb) {
  fs::path dir;
  if (!opt.out.empty()) {
    dir = opt.out;
  } else if (const char* env = std::getenv("CTL_OUT"); env && *env) {
    dir = env;
  } else {
    dir = fs::path("gtorus-out") / verb;
  }
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------
// config file overlay: values apply only where the command line is silent.

using OptionMap = std::vector<std::pair<std::string, CLI::Option*>>;

void apply_config(const Options& opt, const OptionMap& options) {
  if (opt.config.empty()) return;
  const auto entries = parse_config(opt.config);
  for (const auto& entry : entries) {
    const CLI::Option* match = nullptr;
    for (const auto& [key, option] : options) {
      if (key == entry.key) {
        match = option;
        break;
      }
    }
    if (match == nullptr) {
      throw CLI::ValidationError("config", opt.config + ":" +
                                               std::to_string(entry.line) +
                                               ": unknown key '" + entry.key +
                                               "'");
    }
    if (match->count() > 0) continue;  // explicit flag wins
    try {
      const_cast<CLI::Option*>(match)->add_result(entry.value);
      const_cast<CLI::Option*>(match)->run_callback();
    } catch (const CLI::Error&) {
      throw CLI::ValidationError(
          "config", opt.config + ":" + std::to_string(entry.line) +
                        ": cannot parse value '" + entry.value +
                        "' for key '" + entry.key + "'");
    }
  }
}

OptionMap add_common_options(CLI::App* cmd, Options& opt) {
  OptionMap map;
  auto track = [&map](const std::string& key, CLI::Option* o) {
    map.emplace_back(key, o);
    return o;
  };
  track("N", cmd->add_option("--N", opt.N, "torus side length"));
  track("c", cmd->add_option("--c", opt.c, "coupling constant"));
  track("critical",
        cmd->add_flag("--critical", opt.critical,
                      "use the critical coupling 1/(4 log 2)"));
  track("alpha", cmd->add_option("--alpha", opt.alpha, "decay exponent"));
  track("T", cmd->add_option("--T", opt.T, "time horizon"));
  track("runs", cmd->add_option("--runs", opt.runs, "Monte Carlo runs"));
  track("seed", cmd->add_option("--seed", opt.seed, "master seed"));
  track("threads", cmd->add_option("--threads", opt.threads, "worker threads"));
  track("out", cmd->add_option("--out", opt.out, "output directory"));
  track("dt", cmd->add_option("--dt", opt.dt, "limit-path grid step"));
  track("limit-runs",
        cmd->add_option("--limit-runs", opt.limit_runs, "limit sample paths"));
  track("top", cmd->add_option("--top", opt.top, "top components/excursions"));
  track("kmax", cmd->add_option("--kmax", opt.kmax, "step cap / threshold"));
  cmd->add_option("--config", opt.config,
                  "flat key = value config file (flags win)");
  return map;
}

// ---------------------------------------------------------------------------
// verbs

int run_verify(Options& opt, const std::string& command) {
  const GraphParams params = make_params(opt);
  const fs::path out_dir = resolve_out_dir(opt, "verify");
  Report report("verify", opt, command);
  const int N1 = params.N;
  const int N2 = N1 % 2 == 1 ? 2 * N1 - 1 : 2 * N1 - 2;

  auto residual = [&](int N) {
    GraphParams p(N, params.c, params.alpha);
    const double s = expected_degree_sum(p);
    const double even_factor = N % 2 == 0 ? 2.0 : 1.0;
    const double target = 4.0 * p.c * std::log(2.0) - 2.0 * p.c / N -
                          even_factor * p.c / (static_cast<double>(N) * N);
    return s - target;
  };

  const double r1 = residual(N1);
  const double r2 = residual(N2);
  std::cout << "expected-degree residual at N=" << N1 << ": " << format_double(r1)
            << "\n";
  report.check("degree-identity-residual-N4",
               std::abs(r1) * std::pow(N1, 4.0) <=
                   calibration::kDegreeResidualN4Cap,
               std::abs(r1) * std::pow(N1, 4.0),
               calibration::kDegreeResidualN4Cap);
  const double ratio = r1 / r2;
  const double expected_ratio = std::pow(double(N2) / N1, 4.0);
  report.check("degree-identity-residual-ratio",
               std::abs(ratio / expected_ratio - 1.0) <=
                   calibration::kDegreeRatioTol,
               ratio, expected_ratio, "vs (N2/N1)^4, +-25%");
  report.note_tolerance("degree-residual-N4-cap",
                        calibration::kDegreeResidualN4Cap,
                        "pilot at N=101/201, exact summation");

  const double sm = second_moment_sum(params);
  const double sm_resid =
      sm * params.n() - 4.0 * params.c * params.c * std::log(double(params.N));
  report.check("second-moment-residual",
               sm_resid >= calibration::kSecondMomentResidLo &&
                   sm_resid <= calibration::kSecondMomentResidHi,
               sm_resid, calibration::kSecondMomentResidHi,
               "N^2 sum - 4c^2 log N");

  // Neighbour mass bounds on random (v, A) pairs.
  {
    Rng rng = derive_stream(opt.seed, 0, StreamTag::kScratch);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      const TorusPoint v{static_cast<std::int32_t>(rng.below(params.N)),
                         static_cast<std::int32_t>(rng.below(params.N))};
      const auto size = 1 + rng.below(static_cast<std::uint32_t>(
                                std::min<std::int64_t>(params.n() - 1, 4000)));
      std::vector<TorusPoint> A;
      std::set<std::pair<int, int>> seen;
      while (A.size() < size) {
        const TorusPoint u{static_cast<std::int32_t>(rng.below(params.N)),
                           static_cast<std::int32_t>(rng.below(params.N))};
        if (u == v || !seen.insert({u.x, u.y}).second) continue;
        A.push_back(u);
      }
      const double mass = neighbor_prob_mass(v, A, params);
      const double lo = params.c * double(A.size()) / double(params.n());
      const double hi =
          4.0 * params.c * std::sqrt(double(A.size())) / double(params.N);
      ok = mass >= lo - 1e-12 && mass <= hi + 1e-12;
      worst = std::max(worst, mass / hi);
    }
    report.check("neighbor-mass-bounds", ok, worst, 1.0,
                 "mass within [c|A|/N^2, 4c sqrt(|A|)/N]");
  }

  {
    const KernelSpec spec(params);
    const double rp = return_probability(spec);
    const double z = expected_degree_sum(params);
    const double identity = second_moment_sum(params) / (z * z);
    report.check("return-probability-identity",
                 std::abs(rp - identity) <= 1e-15 * std::max(rp, identity),
                 rp, identity, "P^2(u,u) = second moment / Z^2");
    const double band_value =
        rp * params.n() - 4.0 * params.c * params.c * std::log(double(params.N));
    report.check("return-probability-band",
                 band_value >= calibration::kReturnProbBandLo &&
                     band_value <= calibration::kReturnProbBandHi,
                 band_value, calibration::kReturnProbBandHi,
                 "N^2 P^2(u,u) - 4c^2 log N");
  }

  {
    Rng rng = derive_stream(opt.seed, 1, StreamTag::kScratch);
    const KernelSpec spec(GraphParams(9, params.c, params.alpha));
    const auto dom = two_step_dominance_check(spec, 8, 0, rng);
    report.check("two-step-dominance-N9", dom.all_pass(),
                 double(dom.violations), 0.0, "exhaustive, k <= 8");
  }

  return report.finish(out_dir);
}

int run_mixing(Options& opt, const std::string& command) {
  const GraphParams params = make_params(opt);
  const fs::path out_dir = resolve_out_dir(opt, "mixing");
  Report report("mixing", opt, command);
  Rng rng = derive_stream(opt.seed, 0, StreamTag::kMixing);
  const KernelSpec spec(params);
  const auto profile =
      mixing_profile(spec, static_cast<int>(opt.kmax), 16, rng);

  CsvWriter csv(out_dir / "mixing.csv", {"k", "max_tv", "bound"});
  for (std::size_t i = 0; i < profile.k.size(); ++i) {
    csv.row({CsvWriter::cell(profile.k[i]), CsvWriter::cell(profile.max_tv[i]),
             CsvWriter::cell(profile.bound[i])});
  }
  report.artifact(out_dir / "mixing.csv");

  double worst = 0.0;
  for (std::size_t i = 0; i < profile.k.size(); ++i) {
    if (profile.k[i] >= 2) {
      worst = std::max(worst, profile.max_tv[i] - profile.bound[i]);
    }
  }
  report.check("mixing-bound", profile.within_bound(2), worst, 0.0,
               "max TV - (1-c1)^{k/2-1} over k in [2, kmax]");
  return report.finish(out_dir);
}

int run_explore(Options& opt, const std::string& command) {
  const GraphParams params = make_params(opt);
  const fs::path out_dir = resolve_out_dir(opt, "explore");
  Report report("explore", opt, command);

  const std::int64_t n = params.n();
  std::int64_t budget = n;
  if (opt.T > 0.0) {
    const double n13 = std::cbrt(double(n));
    budget = std::min<std::int64_t>(
        n, static_cast<std::int64_t>(std::ceil(n13 * n13 * opt.T)));
  }
  auto tables = std::make_shared<const GraphTables>(params);
  RevealOracle oracle(tables);
  Rng rng = derive_stream(opt.seed, 0, StreamTag::kExplore);
  const ExplorationTrace trace = explore(oracle, rng, budget);

  CsvWriter csv(out_dir / "trace.csv", {"k", "z", "revealed", "I_size"});
  for (std::int64_t k = 1; k <= trace.steps; ++k) {
    csv.row({CsvWriter::cell(k), CsvWriter::cell(trace.z[k]),
             CsvWriter::cell(static_cast<std::int64_t>(trace.revealed[k - 1])),
             CsvWriter::cell(trace.i_size[k - 1])});
  }
  report.artifact(out_dir / "trace.csv");

  const ComponentSizes comps = component_sizes(trace);
  CsvWriter ccsv(out_dir / "components.csv", {"rank", "size", "completed_flag"});
  for (std::size_t i = 0; i < comps.sizes.size(); ++i) {
    ccsv.row({CsvWriter::cell(static_cast<std::int64_t>(i + 1)),
              CsvWriter::cell(comps.sizes[i]), CsvWriter::cell(1)});
  }
  if (comps.has_incomplete) {
    ccsv.row({CsvWriter::cell(static_cast<std::int64_t>(comps.sizes.size() + 1)),
              CsvWriter::cell(comps.incomplete_processed),
              CsvWriter::cell(0)});
  }
  report.artifact(out_dir / "components.csv");

  // Walk identity z(k) = -(k-1) + sum revealed, verified on the dumped trace.
  bool identity = true;
  std::int64_t acc = 0;
  for (std::int64_t k = 1; k <= trace.steps; ++k) {
    acc += trace.revealed[k - 1];
    if (trace.z[k] != -k + acc) identity = false;
  }
  report.check("walk-identity", identity, identity ? 0.0 : 1.0, 0.0);
  return report.finish(out_dir);
}

int run_campaign(Options& opt, const std::string& command) {
  const GraphParams params = make_params(opt);
  const fs::path out_dir = resolve_out_dir(opt, "campaign");
  Report report("campaign", opt, command);
  const std::vector<double> s_grid{0.5, 1.0, 1.5, 2.0};

  const CampaignResult result = run_campaign(
      params, opt.T, s_grid, opt.runs, opt.limit_runs,
      static_cast<int>(opt.top), opt.dt, opt.seed,
      static_cast<int>(opt.threads));

  CsvWriter mcsv(out_dir / "moments.csv",
                 {"s", "mean", "mean_ci_lo", "mean_ci_hi", "variance",
                  "var_ci_lo", "var_ci_hi"});
  for (const auto& row : result.moments) {
    mcsv.row({CsvWriter::cell(row.s), CsvWriter::cell(row.mean),
              CsvWriter::cell(row.mean_lo), CsvWriter::cell(row.mean_hi),
              CsvWriter::cell(row.variance), CsvWriter::cell(row.var_lo),
              CsvWriter::cell(row.var_hi)});
  }
  report.artifact(out_dir / "moments.csv");

  CsvWriter ccsv(out_dir / "components.csv", {"run", "rank", "rescaled_size"});
  const auto& gs = result.comparison.graph_samples;
  for (std::int64_t run = 0; run < gs.rows(); ++run) {
    for (std::int64_t j = 0; j < gs.cols(); ++j) {
      if (!std::isnan(gs(run, j))) {
        ccsv.row({CsvWriter::cell(run), CsvWriter::cell(j + 1),
                  CsvWriter::cell(gs(run, j))});
      }
    }
  }
  report.artifact(out_dir / "components.csv");

  CsvWriter kcsv(out_dir / "ks.csv",
                 {"coord", "ks", "n_graph", "n_limit", "shortfall"});
  for (std::size_t j = 0; j < result.comparison.ks.size(); ++j) {
    kcsv.row({CsvWriter::cell(static_cast<std::int64_t>(j + 1)),
              CsvWriter::cell(result.comparison.ks[j]),
              CsvWriter::cell(result.runs - result.comparison.shortfall[j]),
              CsvWriter::cell(result.limit_runs),
              CsvWriter::cell(result.comparison.shortfall[j])});
  }
  report.artifact(out_dir / "ks.csv");

  json jr;
  jr["moments"] = json::array();
  for (const auto& row : result.moments) {
    jr["moments"].push_back({{"s", row.s},
                             {"mean", row.mean},
                             {"variance", row.variance}});
  }
  jr["ks"] = result.comparison.ks;
  atomic_write(out_dir / "campaign.json", jr.dump(2) + "\n");
  report.artifact(out_dir / "campaign.json");

  for (const auto& row : result.moments) {
    const double mean_tol = std::max(
        calibration::kMeanTolAbs * row.s * row.s,
        4.0 * std::sqrt(row.s / static_cast<double>(opt.runs)));
    report.check("moment-mean-s" + format_double(row.s),
                 std::abs(row.mean + 0.5 * row.s * row.s) <= mean_tol,
                 row.mean, -0.5 * row.s * row.s,
                 "tolerance " + format_double(mean_tol));
    report.check("moment-var-s" + format_double(row.s),
                 std::abs(row.variance - row.s) <=
                     calibration::kVarTolRel * row.s,
                 row.variance, row.s, "tolerance 15%");
  }
  report.check("component-excursion-ks-coord1",
               result.comparison.ks[0] <= calibration::kComponentKsMax,
               result.comparison.ks[0], calibration::kComponentKsMax,
               "pilot-frozen surrogate threshold");
  report.note_tolerance("component-excursion-ks-max", calibration::kComponentKsMax,
                        "pilot at N=150; the paper gives no finite-N rate");
  return report.finish(out_dir);
}

int run_limit(Options& opt, const std::string& command) {
  const fs::path out_dir = resolve_out_dir(opt, "limit");
  Report report("limit", opt, command);
  const auto sample = sample_limit_components(
      opt.T, opt.dt, opt.limit_runs, static_cast<int>(opt.top), opt.seed,
      static_cast<int>(opt.threads));

  std::vector<std::string> cols;
  for (std::int64_t j = 1; j <= opt.top; ++j) {
    cols.push_back("gamma_" + std::to_string(j));
  }
  cols.push_back("truncated_rank");
  CsvWriter csv(out_dir / "excursions.csv", cols);
  bool sorted = true;
  for (std::int64_t i = 0; i < sample.lengths.rows(); ++i) {
    std::vector<std::string> cells;
    std::int64_t trunc_rank = 0;
    for (std::int64_t j = 0; j < sample.lengths.cols(); ++j) {
      cells.push_back(CsvWriter::cell(sample.lengths(i, j)));
      if (sample.truncated(i, j)) trunc_rank = j + 1;
      if (j > 0 && sample.lengths(i, j) > sample.lengths(i, j - 1)) {
        sorted = false;
      }
    }
    cells.push_back(CsvWriter::cell(trunc_rank));
    csv.row(cells);
  }
  report.artifact(out_dir / "excursions.csv");
  report.check("excursions-ordered", sorted, sorted ? 0.0 : 1.0, 0.0);
  return report.finish(out_dir);
}

int run_branching(Options& opt, const std::string& command) {
  const GraphParams params = make_params(opt);
  const fs::path out_dir = resolve_out_dir(opt, "branching");
  Report report("branching", opt, command);

  const OffspringLaw law(params);
  const std::int64_t k_top = opt.kmax;
  std::vector<std::int64_t> ladder;
  for (std::int64_t k : {std::int64_t{5}, std::int64_t{10}, std::int64_t{20}}) {
    if (k < k_top) ladder.push_back(k);
  }
  ladder.push_back(k_top);

  // One pass: stop each tree once a generation exceeds the top threshold.
  std::vector<std::int64_t> exceed(ladder.size(), 0);
  Rng rng = derive_stream(opt.seed, 0, StreamTag::kBranching);
  for (std::int64_t s = 0; s < opt.runs; ++s) {
    std::int64_t current = 1;
    std::int64_t best = 1;
    while (current > 0) {
      std::int64_t next = 0;
      for (std::int64_t i = 0; i < current; ++i) next += law.sample(rng);
      best = std::max(best, next);
      if (next > k_top) break;
      current = next;
    }
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      if (best > ladder[i]) ++exceed[i];
    }
  }

  CsvWriter csv(out_dir / "branching.csv",
                {"K", "value", "ci_lo", "ci_hi", "exceed", "samples"});
  std::vector<double> values(ladder.size()), ci(ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double phat = double(exceed[i]) / double(opt.runs);
    const double se = std::sqrt(phat * (1.0 - phat) / double(opt.runs));
    values[i] = double(ladder[i]) * phat;
    ci[i] = double(ladder[i]) * 2.5758 * se;
    csv.row({CsvWriter::cell(ladder[i]), CsvWriter::cell(values[i]),
             CsvWriter::cell(values[i] - ci[i]),
             CsvWriter::cell(values[i] + ci[i]), CsvWriter::cell(exceed[i]),
             CsvWriter::cell(opt.runs)});
  }
  report.artifact(out_dir / "branching.csv");

  bool monotone = true;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (values[i] < values[i - 1] - (ci[i] + ci[i - 1])) monotone = false;
  }
  report.check("tail-trend-monotone", monotone, monotone ? 0.0 : 1.0, 0.0,
               "K P(max > K) non-decreasing within CIs");
  if (params.critical && k_top >= 50 && opt.runs >= 100000) {
    const double v = values.back();
    report.check("tail-bracket",
                 v >= calibration::kTailBracketLo &&
                     v <= calibration::kTailBracketHi,
                 v, calibration::kTailBracketHi,
                 "K P(max > K) in [0.75, 1.25]");
  }
  return report.finish(out_dir);
}

int run_uniformity(Options& opt, const std::string& command) {
  const GraphParams params = make_params(opt);
  const fs::path out_dir = resolve_out_dir(opt, "uniformity");
  Report report("uniformity", opt, command);
  const std::int64_t n = params.n();
  const auto separation = static_cast<std::int64_t>(
      std::ceil(std::pow(double(n), 1.0 / 6.0)));
  const std::int64_t i = 5;
  const std::int64_t j = i + separation;

  const auto at_j = walker_uniformity(params, i, j, opt.runs, opt.seed,
                                      static_cast<int>(opt.threads));
  const auto at_1 = walker_uniformity(params, 0, 1, opt.runs, opt.seed + 1,
                                      static_cast<int>(opt.threads));

  CsvWriter csv(out_dir / "uniformity.csv",
                {"step", "tv", "tv_ci_lo", "tv_ci_hi", "noise_floor", "ratio",
                 "runs"});
  csv.row({CsvWriter::cell(std::int64_t{1}), CsvWriter::cell(at_1.tv),
           CsvWriter::cell(at_1.tv_lo), CsvWriter::cell(at_1.tv_hi),
           CsvWriter::cell(at_1.noise_floor), CsvWriter::cell(at_1.ratio),
           CsvWriter::cell(at_1.runs)});
  csv.row({CsvWriter::cell(j), CsvWriter::cell(at_j.tv),
           CsvWriter::cell(at_j.tv_lo), CsvWriter::cell(at_j.tv_hi),
           CsvWriter::cell(at_j.noise_floor), CsvWriter::cell(at_j.ratio),
           CsvWriter::cell(at_j.runs)});
  report.artifact(out_dir / "uniformity.csv");

  report.check("uniformity-vj-ratio",
               at_j.ratio <= calibration::kUniformityRatioMax, at_j.ratio,
               calibration::kUniformityRatioMax,
               "TV(v_j) vs paired uniform noise floor, j=" + std::to_string(j));
  report.check("uniformity-v1-ratio",
               at_1.ratio <= calibration::kUniformityRatioMax, at_1.ratio,
               calibration::kUniformityRatioMax, "v_1 is drawn uniformly");
  if (params.N == 15 && opt.runs >= 1000000) {
    report.check("uniformity-v1-abs", at_1.tv <= 0.02, at_1.tv, 0.02);
  }
  return report.finish(out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  std::string command;
  for (int i = 0; i < argc; ++i) {
    if (i) command += ' ';
    command += argv[i];
  }

  CLI::App app{"simulation and verification lab for critical geometric "
               "random graphs on the 2-d torus"};
  app.require_subcommand(1);

  struct Verb {
    CLI::App* cmd;
    Options opt;
    OptionMap map;
    int (*run)(Options&, const std::string&);
  };
  std::vector<std::unique_ptr<Verb>> verbs;

  auto add_verb = [&](const std::string& name, const std::string& help,
                      int (*fn)(Options&, const std::string&),
                      auto&& defaults) {
    auto verb = std::make_unique<Verb>();
    verb->cmd = app.add_subcommand(name, help);
    defaults(verb->opt);
    verb->map = add_common_options(verb->cmd, verb->opt);
    verb->run = fn;
    verbs.push_back(std::move(verb));
  };

  add_verb("verify", "exact analytic identities", run_verify,
           [](Options& o) { o.N = 101; });
  add_verb("mixing", "total-variation mixing profile", run_mixing,
           [](Options& o) {
             o.N = 25;
             o.kmax = 40;
           });
  add_verb("explore", "dump one exploration trace", run_explore,
           [](Options& o) {
             o.N = 50;
             o.T = 1.0;
           });
  add_verb("campaign", "walk moments + component vs excursion", run_campaign,
           [](Options& o) {
             o.N = 150;
             o.T = 10.0;
           });
  add_verb("limit", "sample limit excursion lengths", run_limit,
           [](Options&) {});
  add_verb("branching", "dominating branching tail law", run_branching,
           [](Options& o) {
             o.N = 10000;
             o.kmax = 50;
             o.runs = 2000000;
           });
  add_verb("uniformity", "walker uniformity against noise floor",
           run_uniformity, [](Options& o) {
             o.N = 15;
             o.runs = 1000000;
           });

  try {
    app.parse(argc, argv);
    for (auto& verb : verbs) {
      if (verb->cmd->parsed()) {
        apply_config(verb->opt, verb->map);
        if (verb->opt.threads < 1) {
          throw CLI::ValidationError("threads", "must be >= 1");
        }
        return verb->run(verb->opt, command);
      }
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
