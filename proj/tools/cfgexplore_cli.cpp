// Command-line front end: subcommands over the library, deterministic
// seeding, atomic file outputs, and a one-line JSON summary on stdout.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfgexplore/ctmc.hpp"
#include "cfgexplore/degree_ld.hpp"
#include "cfgexplore/degree_model.hpp"
#include "cfgexplore/eea.hpp"
#include "cfgexplore/graph_gen.hpp"
#include "cfgexplore/io.hpp"
#include "cfgexplore/lln.hpp"
#include "cfgexplore/mc.hpp"
#include "cfgexplore/rate_fn.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string degrees_file;
  std::string table_file;
  std::uint64_t seed = 0;
  bool seed_set = false;
  long long replicas = 10000;
  int threads = 0;
  int grid = 1001;
  double horizon = 0;
  double eps = 0.02;
  double eps_p = 1.0;
  std::string out_dir;
  double tilt = 1.0;
  std::string tilt_k;
  long long stride = 1;
  std::string target_file;
  std::string path_file;
  std::string sizes = "50,100,200,400";
  bool use_ode = false;
  int schema_version = 1;
};

void add_model_options(CLI::App* cmd, CommonOpts& opts, bool need_input = true) {
  auto* deg = cmd->add_option("--degrees", opts.degrees_file,
                              "degree sequence file (one positive integer per line)");
  auto* tab = cmd->add_option("--table", opts.table_file,
                              "probability table file (records \"k probability\")");
  deg->check(CLI::ExistingFile);
  tab->check(CLI::ExistingFile);
  if (need_input) {
    deg->excludes(tab);
  }
}

void add_seed_option(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "base seed (stochastic runs require it)")
      ->envname("CFGX_SEED")
      ->required();
  opts.seed_set = true;
}

void apply_threads(const CommonOpts& opts) {
#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#else
  (void)opts;
#endif
}

cfgx::DegreeModel load_model(const CommonOpts& opts) {
  if (!opts.degrees_file.empty())
    return cfgx::build_model(cfgx::read_degree_file(opts.degrees_file), 1e-12,
                             opts.eps_p);
  if (!opts.table_file.empty())
    return cfgx::build_model(cfgx::read_pair_table(opts.table_file), 1e-12,
                             opts.eps_p);
  throw CLI::ValidationError("--degrees or --table is required");
}

cfgx::DegreeSequence load_sequence(const CommonOpts& opts) {
  if (opts.degrees_file.empty())
    throw CLI::ValidationError("--degrees is required");
  return cfgx::read_degree_file(opts.degrees_file);
}

cfgx::BandControl parse_control(const CommonOpts& opts, int max_degree) {
  if (opts.tilt_k.empty())
    return cfgx::BandControl::constant(opts.tilt, max_degree);
  std::vector<double> values(max_degree + 1, opts.tilt);
  std::stringstream ss(opts.tilt_k);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--tilt-k entries look like k:value");
    const int k = std::stoi(item.substr(0, colon));
    const double v = std::stod(item.substr(colon + 1));
    if (k < 0 || k > max_degree)
      throw CLI::ValidationError("--tilt-k degree out of range");
    values[k] = v;
  }
  return cfgx::BandControl::per_type(values);
}

fs::path out_path(const CommonOpts& opts, const std::string& name) {
  return opts.out_dir.empty() ? fs::path(name) : fs::path(opts.out_dir) / name;
}

void emit(const json& summary) { std::cout << summary.dump() << "\n"; }

json model_json(const cfgx::DegreeModel& m) {
  json j;
  j["n"] = m.n;
  j["mu"] = m.mu;
  j["nu"] = m.nu;
  j["drift"] = m.drift;
  j["max_degree"] = m.max_degree();
  j["eps_p"] = m.eps_p;
  j["moment_1p"] = m.moment_report;
  j["tail_mass"] = m.tail_mass;
  j["step_bound"] = m.step_bound;
  return j;
}

json components_json(const std::vector<cfgx::ComponentRecord>& comps) {
  json arr = json::array();
  for (const auto& comp : comps) {
    json c;
    c["vertices"] = comp.vertices.size();
    c["edges"] = comp.edge_count;
    json cfg = json::object();
    for (const auto& [k, cnt] : comp.degree_config) cfg[std::to_string(k)] = cnt;
    c["degree_config"] = cfg;
    arr.push_back(c);
  }
  return arr;
}

json report_json(const cfgx::EstimateReport& r) {
  json j;
  j["n"] = r.n;
  j["replicas"] = r.replicas;
  j["hits"] = r.hits;
  j["p_hat"] = r.p_hat;
  j["ci_lo"] = r.ci_lo;
  j["ci_hi"] = r.ci_hi;
  if (std::isfinite(r.rate_hat)) j["rate_hat"] = r.rate_hat;
  else j["rate_hat"] = nullptr;
  j["seed"] = r.seed;
  return j;
}

cfgx::EventSpec load_event_spec(const CommonOpts& opts, const cfgx::DegreeModel& model,
                                int max_degree) {
  if (opts.target_file.empty())
    throw CLI::ValidationError("--target is required");
  const auto entries = cfgx::read_pair_table(opts.target_file);
  const auto target = cfgx::make_target(model, entries, opts.eps);
  return cfgx::EventSpec::from_target(target, max_degree);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cfgexplore: configuration-model exploration, fluid limits, decay rates,\n"
      "and rare-event estimation.\n\n"
      "File formats: degree file = one positive integer per line; tables and\n"
      "targets = \"k value\" records; '#' starts a comment. Options may come\n"
      "from a key=value config file (--config) holding schema_version=1; flags\n"
      "override file values. Environment overrides use the CFGX_ prefix\n"
      "(e.g. CFGX_SEED)."};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file (schema_version=1)");

  CommonOpts opts;
  app.add_option("--schema-version", opts.schema_version,
                 "config schema version (must be 1)")
      ->check(CLI::IsMember({1}));
  app.add_option("--threads", opts.threads, "worker thread count (0 = library default)")
      ->envname("CFGX_THREADS");
  app.add_option("--out", opts.out_dir, "output directory")->envname("CFGX_OUT");

  // degseq check
  auto* degseq = app.add_subcommand("degseq", "degree-sequence utilities");
  auto* check = degseq->add_subcommand("check", "validate input and report moments");
  add_model_options(check, opts);
  check->add_option("--eps-p", opts.eps_p, "moment exponent for the report")
      ->default_val(1.0);
  check->callback([&]() {
    cfgx::DegreeModel m = load_model(opts);
    json j = model_json(m);
    j["cmd"] = "degseq-check";
    emit(j);
  });

  // generate
  auto* generate = app.add_subcommand("generate", "sample a uniform multigraph");
  add_model_options(generate, opts);
  add_seed_option(generate, opts);
  generate->callback([&]() {
    const auto seq = load_sequence(opts);
    cfgx::Rng rng(opts.seed);
    const auto g = cfgx::uniform_matching(seq, rng);
    const auto comps = cfgx::components_of(g);
    cfgx::atomic_write(out_path(opts, "graph.txt"), cfgx::graph_to_edge_list(g));
    cfgx::atomic_write(out_path(opts, "components.json"),
                       components_json(comps).dump(2) + "\n");
    json j;
    j["cmd"] = "generate";
    j["n"] = g.n;
    j["m"] = g.edges.size();
    j["components"] = comps.size();
    j["seed"] = opts.seed;
    emit(j);
  });

  // explore
  auto* explore = app.add_subcommand("explore", "run the edge exploration");
  add_model_options(explore, opts);
  add_seed_option(explore, opts);
  explore->callback([&]() {
    const auto seq = load_sequence(opts);
    cfgx::Rng rng(opts.seed);
    const auto result = cfgx::eea_run(seq, rng);
    cfgx::atomic_write(out_path(opts, "steps.txt"), cfgx::log_to_text(result.log));
    cfgx::atomic_write(out_path(opts, "graph.txt"),
                       cfgx::graph_to_edge_list(result.graph));
    cfgx::atomic_write(out_path(opts, "components.json"),
                       components_json(result.components).dump(2) + "\n");
    long long largest = 0;
    for (const auto& comp : result.components)
      largest = std::max(largest, comp.edge_count);
    json j;
    j["cmd"] = "explore";
    j["n"] = result.log.n;
    j["m"] = result.log.m;
    j["steps"] = result.log.steps.size();
    j["components"] = result.components.size();
    j["largest_component_edges"] = largest;
    j["seed"] = opts.seed;
    emit(j);
  });

  // simulate-ct
  auto* simct = app.add_subcommand("simulate-ct", "continuous-time exploration run");
  add_model_options(simct, opts);
  add_seed_option(simct, opts);
  simct->add_option("--horizon", opts.horizon, "time horizon (0 = run to absorption)")
      ->default_val(0.0);
  simct->add_option("--tilt", opts.tilt, "constant intensity tilt on all bands")
      ->default_val(1.0);
  simct->add_option("--tilt-k", opts.tilt_k, "per-degree tilts, e.g. 1:2.0,3:0.5");
  simct->add_option("--stride", opts.stride, "export every stride-th jump")
      ->default_val(1);
  simct->callback([&]() {
    const auto seq = load_sequence(opts);
    const auto control = parse_control(opts, seq.max_degree());
    cfgx::Rng rng(opts.seed);
    const double horizon = opts.horizon > 0
                               ? opts.horizon
                               : std::numeric_limits<double>::max();
    const auto path = cfgx::simulate(seq, horizon, control, rng);
    const double weight = cfgx::importance_weight(
        path, control, static_cast<long long>(seq.degrees.size()));
    cfgx::atomic_write(out_path(opts, "ct_path.txt"),
                       cfgx::ct_path_to_text(path, opts.stride));
    json j;
    j["cmd"] = "simulate-ct";
    j["n"] = path.n;
    j["jumps"] = path.jumps.size();
    j["stop_time"] = path.stop_time;
    if (path.absorption_time) j["absorption_time"] = *path.absorption_time;
    else j["absorption_time"] = nullptr;
    j["weight"] = weight;
    j["seed"] = opts.seed;
    emit(j);
  });

  // lln
  auto* lln_cmd = app.add_subcommand("lln", "fluid-limit trajectory");
  add_model_options(lln_cmd, opts);
  lln_cmd->add_option("--horizon", opts.horizon, "horizon T (0 = mu/2 + 1)")
      ->default_val(0.0);
  lln_cmd->add_option("--grid", opts.grid, "grid points")->default_val(1001)
      ->envname("CFGX_GRID");
  lln_cmd->add_flag("--oracle", opts.use_ode, "integrate the ODE instead of the closed form");
  lln_cmd->callback([&]() {
    const auto model = load_model(opts);
    const double T = opts.horizon > 0 ? opts.horizon : 0.5 * model.mu + 1.0;
    const auto path = opts.use_ode ? cfgx::lln_ode_oracle(model, T, opts.grid)
                                   : cfgx::lln_path(model, T, opts.grid);
    cfgx::atomic_write(out_path(opts, "lln.csv"),
                       cfgx::path_to_csv(cfgx::to_path_pair(path)));
    const auto phase = cfgx::phase_and_rho(model);
    json j;
    j["cmd"] = "lln";
    j["regime"] = phase.supercritical ? "supercritical" : "subcritical-or-critical";
    j["drift"] = phase.drift;
    if (phase.supercritical) {
      j["rho"] = phase.rho;
      j["tau"] = phase.tau;
    }
    j["tau_zeta"] = path.tau_zeta;
    j["horizon"] = T;
    j["grid"] = opts.grid;
    emit(j);
  });

  // rate
  auto* rate_cmd = app.add_subcommand("rate", "action of a trajectory file");
  rate_cmd->add_option("--path", opts.path_file, "trajectory CSV (t,psi,zeta_0,...)")
      ->required()
      ->check(CLI::ExistingFile);
  add_model_options(rate_cmd, opts, false);
  rate_cmd->callback([&]() {
    const auto path = cfgx::read_path_csv(opts.path_file);
    cfgx::RateResult result = cfgx::rate_integral(path);
    if (!opts.degrees_file.empty() || !opts.table_file.empty()) {
      const auto model = load_model(opts);
      const auto report = cfgx::feasibility(path, &model.p);
      if (!report.feasible) {
        result.feasible = false;
        result.value = std::numeric_limits<double>::infinity();
        result.report = report;
      }
    }
    json j;
    j["cmd"] = "rate";
    j["feasible"] = result.feasible;
    if (std::isfinite(result.value)) j["value"] = result.value;
    else j["value"] = "inf";
    j["tau_zeta"] = result.tau_zeta;
    j["max_phi"] = result.max_phi;
    if (!result.feasible) j["reason"] = result.report.reason;
    emit(j);
  });

  // degree-ld
  auto* dld = app.add_subcommand("degree-ld", "degree-configuration decay rate");
  add_model_options(dld, opts);
  dld->add_option("--target", opts.target_file, "target file (records \"k q_k\")")
      ->required()
      ->check(CLI::ExistingFile);
  dld->add_option("--eps", opts.eps, "event half-width")->default_val(0.02)
      ->envname("CFGX_EPS");
  dld->callback([&]() {
    const auto model = load_model(opts);
    const auto target =
        cfgx::make_target(model, cfgx::read_pair_table(opts.target_file), opts.eps);
    const auto report = cfgx::rate_I1(target);
    json j;
    j["cmd"] = "degree-ld";
    j["beta"] = report.beta;
    j["K"] = report.K;
    j["H_q"] = report.H_q;
    j["H_pq"] = report.H_pq;
    j["H_p"] = report.H_p;
    j["I1"] = report.I1;
    j["bounds_match"] = report.bounds_match;
    emit(j);
  });

  // mc
  auto* mc_cmd = app.add_subcommand("mc", "plain Monte Carlo event probability");
  add_model_options(mc_cmd, opts);
  add_seed_option(mc_cmd, opts);
  mc_cmd->add_option("--target", opts.target_file, "target file")->required()
      ->check(CLI::ExistingFile);
  mc_cmd->add_option("--eps", opts.eps, "event half-width")->default_val(0.02);
  mc_cmd->add_option("--replicas", opts.replicas, "replica count")
      ->default_val(10000)
      ->envname("CFGX_REPLICAS");
  mc_cmd->callback([&]() {
    apply_threads(opts);
    const auto seq = load_sequence(opts);
    const auto model = cfgx::build_model(seq);
    const auto spec = load_event_spec(opts, model, seq.max_degree());
    const auto report = cfgx::mc_probability(seq, spec, opts.replicas, opts.seed);
    cfgx::atomic_write(out_path(opts, "mc_report.json"),
                       report_json(report).dump(2) + "\n");
    json j = report_json(report);
    j["cmd"] = "mc";
    j["wall_s"] = report.wall_seconds;
    emit(j);
  });

  // mc-sweep
  auto* sweep = app.add_subcommand("mc-sweep", "decay curve over instance sizes");
  add_model_options(sweep, opts);
  add_seed_option(sweep, opts);
  sweep->add_option("--target", opts.target_file, "target file")->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--eps", opts.eps, "event half-width")->default_val(0.02);
  sweep->add_option("--replicas", opts.replicas, "replicas per size")
      ->default_val(100000);
  sweep->add_option("--sizes", opts.sizes, "comma-separated instance sizes")
      ->default_val("50,100,200,400");
  sweep->callback([&]() {
    apply_threads(opts);
    const auto model = load_model(opts);
    const auto target =
        cfgx::make_target(model, cfgx::read_pair_table(opts.target_file), opts.eps);
    const auto report = cfgx::rate_I1(target);
    const auto spec = cfgx::EventSpec::from_target(target, model.max_degree());
    std::vector<long long> sizes;
    std::stringstream ss(opts.sizes);
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(std::stoll(item));
    const auto rows = cfgx::mc_sweep(model, spec, sizes, opts.replicas, opts.seed);
    std::string csv = "n,p_hat,ci_lo,ci_hi,rate_hat\n";
    for (const auto& row : rows) {
      csv += std::to_string(row.n) + "," + cfgx::format_double(row.p_hat) + "," +
             cfgx::format_double(row.ci_lo) + "," + cfgx::format_double(row.ci_hi) +
             "," + cfgx::format_double(row.rate_hat) + "\n";
    }
    cfgx::atomic_write(out_path(opts, "sweep.csv"), csv);
    json j;
    j["cmd"] = "mc-sweep";
    j["sizes"] = sizes;
    j["replicas"] = opts.replicas;
    j["I1_reference"] = report.I1;
    j["seed"] = opts.seed;
    emit(j);
  });

  // is
  auto* is_cmd = app.add_subcommand("is", "importance-sampled event probability");
  add_model_options(is_cmd, opts);
  add_seed_option(is_cmd, opts);
  is_cmd->add_option("--target", opts.target_file, "target file")->required()
      ->check(CLI::ExistingFile);
  is_cmd->add_option("--eps", opts.eps, "event half-width")->default_val(0.02);
  is_cmd->add_option("--replicas", opts.replicas, "replica count")
      ->default_val(10000);
  is_cmd->add_option("--tilt", opts.tilt, "constant intensity tilt")->default_val(1.0);
  is_cmd->add_option("--tilt-k", opts.tilt_k, "per-degree tilts, e.g. 1:2.0,3:0.5");
  is_cmd->callback([&]() {
    apply_threads(opts);
    const auto seq = load_sequence(opts);
    const auto model = cfgx::build_model(seq);
    const auto spec = load_event_spec(opts, model, seq.max_degree());
    const auto control = parse_control(opts, seq.max_degree());
    const auto report =
        cfgx::is_probability(seq, spec, control, opts.replicas, opts.seed);
    cfgx::atomic_write(out_path(opts, "is_report.json"),
                       report_json(report).dump(2) + "\n");
    json j = report_json(report);
    j["cmd"] = "is";
    j["wall_s"] = report.wall_seconds;
    emit(j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const cfgx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_numerical(e.code()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
