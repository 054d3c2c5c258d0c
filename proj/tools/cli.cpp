#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "triple_couple/coupling.hpp"
#include "triple_couple/cycle_coupler.hpp"
#include "triple_couple/errors.hpp"
#include "triple_couple/factor.hpp"
#include "triple_couple/motifs.hpp"
#include "triple_couple/parallel.hpp"
#include "triple_couple/sampling.hpp"
#include "triple_couple/serialization.hpp"
#include "triple_couple/sweep.hpp"

namespace triple_couple::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kToolName = "triple-couple";
constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Metadata echoed into every output file.
struct Meta {
  ojson fields = ojson::object();

  explicit Meta(const std::string& subcommand) {
    fields["tool"] = kToolName;
    fields["version"] = kToolVersion;
    fields["subcommand"] = subcommand;
  }

  std::string comment_header() const {
    std::string out;
    for (auto it = fields.begin(); it != fields.end(); ++it)
      out += "# " + it.key() + ": " + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) + "\n";
    return out;
  }

  std::string jsonl_header() const { return ojson{{"meta", fields}}.dump() + "\n"; }
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
  } else {
    write_atomic(path, content);
  }
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("TRIPLE_COUPLE_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used, 0);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(std::string("TRIPLE_COUPLE_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

// Model parameters shared by several subcommands. p may be given directly or
// as a multiple of the triangle-factor threshold p*(n); pi defaults to
// p^3 (1 - n^-delta) capped at n^(-2 + eps_cap).
struct ModelFlags {
  std::size_t n = 0;
  double p = -1.0;
  double p_factor = -1.0;
  double pi = -1.0;
  double delta = 0.1;
  double eps_cap = 0.1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;

  void add(CLI::App* sub, bool need_n = true) {
    auto* n_opt = sub->add_option("--n", n, "Number of vertices");
    if (need_n) n_opt->required();
    sub->add_option("--p", p, "Edge probability");
    sub->add_option("--p-factor", p_factor, "Edge probability as a multiple of (2 ln n)^(1/3) n^(-2/3)");
    sub->add_option("--pi", pi, "Hyperedge probability (default p^3 (1 - n^-delta), capped)");
    sub->add_option("--delta", delta, "Exponent in the default hyperedge probability");
    sub->add_option("--eps-cap", eps_cap, "Cap exponent: pi <= n^(-2 + eps-cap)");
    seed_opt = sub->add_option("--seed", seed, "Master seed (falls back to TRIPLE_COUPLE_SEED, then 0)");
  }

  std::uint64_t master_seed() const { return resolve_seed(seed_opt, seed); }

  double resolve_p() const {
    if (p >= 0.0 && p_factor >= 0.0) throw ConfigError("give either --p or --p-factor, not both");
    if (p_factor >= 0.0) return p_factor * theoretical_thresholds(n).p_star;
    if (p >= 0.0) return p;
    throw ConfigError("missing --p or --p-factor");
  }

  ModelParams resolve(bool need_p = true) const {
    ModelParams mp;
    mp.n = n;
    mp.delta = delta;
    mp.epsilon = eps_cap;
    if (need_p || p >= 0.0 || p_factor >= 0.0) mp.p = resolve_p();
    mp.pi = pi >= 0.0 ? pi : default_pi(n, mp.p, delta, eps_cap);
    try {
      mp.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return mp;
  }

  void describe(Meta& meta, const ModelParams& mp) const {
    meta.fields["n"] = mp.n;
    meta.fields["p"] = mp.p;
    meta.fields["pi"] = mp.pi;
    meta.fields["delta"] = mp.delta;
    meta.fields["eps_cap"] = eps_cap;
  }
};

// ---- gen

struct GenCommand {
  ModelFlags model;
  std::string kind = "graph";
  std::string output;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("gen", "Sample G(n,p) or H_3(n,pi) in the text format");
    model.add(sub);
    sub->add_option("--model", kind, "graph or hypergraph")->check(CLI::IsMember({"graph", "hypergraph"}));
    sub->add_option("--output,-o", output, "Output path (default stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    const bool graph = kind == "graph";
    const ModelParams mp = model.resolve(graph);
    const std::uint64_t seed = model.master_seed();
    Meta meta("gen");
    meta.fields["model"] = kind;
    model.describe(meta, mp);
    meta.fields["seed"] = seed;
    const RngSpec spec{seed, 0};
    const std::string body = graph ? to_text(sample_gnp(mp.n, mp.p, spec)) : to_text(sample_h3(mp.n, mp.pi, spec));
    emit(output, meta.comment_header() + body);
  }
};

// ---- motifs

struct MotifsCommand {
  std::string input;
  std::string output;
  int max_edges = 6;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("motifs", "Count triangles and clean 3-cycles in a structure file");
    sub->add_option("--input,-i", input, "Graph or hypergraph file")->required();
    sub->add_option("--max-edges", max_edges, "Largest avoidable configuration searched");
    sub->add_option("--output,-o", output, "Output path (default stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    std::variant<Graph, Hypergraph3> s;
    try {
      s = read_structure_file(input);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("cannot read ") + input + ": " + e.what());
    }
    std::size_t triangles = 0, cycles = 0;
    int max_degree = 0;
    bool avoidable = false;
    std::string kind;
    if (const Graph* g = std::get_if<Graph>(&s)) {
      kind = "graph";
      auto tris = enumerate_triangles(*g);
      triangles = tris.size();
      cycles = clean_cycles_in_graph(*g).size();
      for (Vertex v = 0; v < g->num_vertices(); ++v) max_degree = std::max<int>(max_degree, static_cast<int>(g->degree(v)));
      avoidable = find_avoidable(Hypergraph3(g->num_vertices(), std::move(tris)), max_edges).has_value();
    } else {
      const Hypergraph3& h = std::get<Hypergraph3>(s);
      kind = "hypergraph";
      triangles = enumerate_triangles(shadow(h)).size();
      cycles = count_clean_cycles(h);
      max_degree = max_hyperdegree(h);
      avoidable = find_avoidable(h, max_edges).has_value();
    }
    Meta meta("motifs");
    meta.fields["input"] = input;
    meta.fields["kind"] = kind;
    meta.fields["max_edges"] = max_edges;
    std::ostringstream body;
    body << "triangles,clean_cycles,max_degree,avoidable_found\n"
         << triangles << ',' << cycles << ',' << max_degree << ',' << (avoidable ? "true" : "false") << '\n';
    emit(output, meta.comment_header() + body.str());
  }
};

// ---- tv

struct TvCommand {
  ModelFlags model;
  std::uint64_t trials = 10'000;
  std::string mode = "poisson";
  double lambda_budget = 20.0;
  std::uint64_t tabulation_samples = 100'000;
  std::string output;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("tv", "Poisson TV distance and empirical count-coupling mismatch");
    model.add(sub);
    sub->add_option("--trials", trials, "Coupled count draws");
    sub->add_option("--mode", mode, "Count laws: poisson or exact (tabulated)")->check(CLI::IsMember({"poisson", "exact"}));
    sub->add_option("--lambda-budget", lambda_budget, "Largest expected count accepted");
    sub->add_option("--tabulation-samples", tabulation_samples, "Samples per law in exact mode");
    sub->add_option("--output,-o", output, "Output path (default stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    const ModelParams mp = model.resolve();
    const std::uint64_t seed = model.master_seed();
    CouplerOptions co;
    co.mode = mode == "exact" ? CountLawMode::kExact : CountLawMode::kPoisson;
    co.lambda_budget = lambda_budget;
    co.tabulation_samples = tabulation_samples;
    const CycleCoupler coupler(mp, co, RngSpec{seed, 1});
    Rng rng(RngSpec{seed, 0});
    std::uint64_t mismatches = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const auto [x1, x2] = sample_maximal_coupling(coupler.law1(), coupler.law2(), rng);
      mismatches += x1 != x2;
    }
    const CycleCountModel lam = coupler.model();
    Meta meta("tv");
    model.describe(meta, mp);
    meta.fields["mode"] = mode;
    meta.fields["trials"] = trials;
    meta.fields["seed"] = seed;
    std::string body = "lambda1,lambda2,tv_poisson,empirical_mismatch_rate\n";
    body += fmt(lam.lambda1) + "," + fmt(lam.lambda2) + "," + fmt(tv_distance_poisson(lam.lambda1, lam.lambda2)) + "," +
            fmt(trials ? static_cast<double>(mismatches) / static_cast<double>(trials) : 0.0) + "\n";
    emit(output, meta.comment_header() + body);
  }
};

// ---- couple / certificate

struct CoupleCommand {
  std::string name;
  ModelFlags model;
  std::string mode;
  std::uint64_t trials = 1;
  unsigned jobs = 1;
  std::uint64_t oracle_samples = 20'000;
  std::string pi_oracle = "auto";
  std::string pi_prime_oracle = "product";
  std::string count_law = "exact";
  double lambda_budget = 20.0;
  std::uint64_t rejection_budget = 1'000'000;
  std::uint64_t tabulation_samples = 100'000;
  std::optional<int> degree_cap;
  std::string output;
  int exit_code = kExitOk;

  CoupleCommand(std::string n, std::string default_mode) : name(std::move(n)), mode(std::move(default_mode)) {}

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        name, name == "couple" ? "Run the sequential coupling (exact or certificate mode)"
                               : "Run the coupling in certificate (bound) mode");
    model.add(sub);
    sub->add_option("--mode", mode, "exact or certificate")->check(CLI::IsMember({"exact", "certificate"}));
    sub->add_option("--trials", trials, "Independent runs");
    sub->add_option("--jobs,-j", jobs, "Worker threads");
    sub->add_option("--oracle-samples", oracle_samples, "Monte Carlo samples per oracle call");
    sub->add_option("--pi-oracle", pi_oracle, "auto, enumeration or mc")->check(CLI::IsMember({"auto", "enumeration", "mc"}));
    sub->add_option("--pi-prime-oracle", pi_prime_oracle, "product or mc")->check(CLI::IsMember({"product", "mc"}));
    sub->add_option("--count-law", count_law, "Seeding count laws: exact (tabulated) or poisson")
        ->check(CLI::IsMember({"exact", "poisson"}));
    sub->add_option("--lambda-budget", lambda_budget, "Largest expected cycle count seeded");
    sub->add_option("--rejection-budget", rejection_budget, "Rejection attempts before giving up");
    sub->add_option("--tabulation-samples", tabulation_samples, "Samples per count law");
    sub->add_option("--degree-cap", degree_cap, "Degree cap (default max(ceil((ln n)^2), 3))");
    sub->add_option("--output,-o", output, "JSONL output path (default stdout)");
    sub->callback([this] { run(); });
  }

  ojson record(const ModelParams& mp, const CouplingOutcome& o, std::uint64_t trial, std::uint64_t seed) const {
    ojson r;
    r["mode"] = mode;
    r["n"] = mp.n;
    r["p"] = mp.p;
    r["pi"] = mp.pi;
    r["failed"] = o.failed;
    r["fail_reason"] = std::string(to_string(o.fail_reason));
    r["b1"] = o.bad.b1;
    r["b2"] = o.bad.b2;
    r["max_q"] = o.stats.max_q;
    r["dangerous_steps"] = o.stats.dangerous_steps;
    r["embedding_ok"] = o.embedding_ok;
    r["seed"] = derive_stream_seed(seed, trial);
    r["trial"] = trial;
    r["seeding_failed"] = o.seeding_failed;
    r["bound_violations"] = o.stats.bound_violations;
    r["hyperedges"] = o.h.num_hyperedges();
    r["edges"] = o.g.num_edges();
    r["usable"] = o.usable;
    if (mode == "certificate") r["certificate"] = o.certificate;
    return r;
  }

  void run() {
    const ModelParams mp = model.resolve();
    const std::uint64_t seed = model.master_seed();
    Meta meta(name);
    model.describe(meta, mp);
    meta.fields["mode"] = mode;
    meta.fields["trials"] = trials;
    meta.fields["seed"] = seed;
    meta.fields["lambda_budget"] = lambda_budget;
    meta.fields["degree_cap"] = degree_cap ? *degree_cap : default_degree_cap(mp.n).cap;

    std::vector<std::string> lines(trials);
    std::vector<char> usable(trials, 1);
    if (mode == "exact") {
      EngineOptions opt;
      opt.coupler.mode = count_law == "exact" ? CountLawMode::kExact : CountLawMode::kPoisson;
      opt.coupler.lambda_budget = lambda_budget;
      opt.coupler.rejection_budget = rejection_budget;
      opt.coupler.tabulation_samples = tabulation_samples;
      opt.pi_oracle = pi_oracle == "enumeration" ? PiOracle::kEnumeration
                      : pi_oracle == "mc"        ? PiOracle::kMonteCarlo
                                                 : PiOracle::kAuto;
      opt.pi_prime_oracle = pi_prime_oracle == "mc" ? PiPrimeOracle::kMonteCarlo : PiPrimeOracle::kProductForm;
      opt.oracle_samples = oracle_samples;
      opt.rejection_budget = rejection_budget;
      opt.degree_cap = degree_cap;
      meta.fields["count_law"] = count_law;
      meta.fields["pi_oracle"] = pi_oracle;
      meta.fields["pi_prime_oracle"] = pi_prime_oracle;
      meta.fields["oracle_samples"] = oracle_samples;
      std::unique_ptr<ExactContext> ctx;
      try {
        ctx = std::make_unique<ExactContext>(mp, opt, seed);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      parallel_for(trials, jobs, [&](std::size_t t) {
        const CouplingOutcome o = run_exact_coupling(*ctx, RngSpec{seed, t});
        usable[t] = o.usable;
        lines[t] = record(mp, o, t, seed).dump();
      });
    } else {
      CertificateOptions opt;
      opt.lambda_budget = lambda_budget;
      opt.rejection_budget = rejection_budget;
      opt.degree_cap = degree_cap;
      parallel_for(trials, jobs, [&](std::size_t t) {
        const CouplingOutcome o = run_certificate(mp, RngSpec{seed, t}, opt);
        usable[t] = o.usable;
        lines[t] = record(mp, o, t, seed).dump();
      });
    }

    std::string body = meta.jsonl_header();
    for (const std::string& l : lines) body += l + "\n";
    emit(output, body);
    const auto unusable = std::count(usable.begin(), usable.end(), 0);
    if (unusable > 0) {
      std::cerr << name << ": " << unusable << " of " << trials << " runs exhausted a rejection budget\n";
      exit_code = kExitBudget;
    }
  }
};

// ---- sweep

struct SweepCommand {
  std::string kind = "graph";
  std::vector<std::size_t> n_values;
  std::vector<double> grid;
  std::vector<double> grid_factors;
  std::uint64_t trials = 100;
  std::int64_t timeout_ms = kDefaultDecisionTimeout.count();
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string output;
  std::string summary;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("sweep", "Triangle-factor / perfect-matching threshold sweep");
    sub->add_option("--model", kind, "graph (triangle factor) or hypergraph (perfect matching)")
        ->check(CLI::IsMember({"graph", "hypergraph"}));
    sub->add_option("--n", n_values, "Vertex counts, multiples of 3")->delimiter(',')->required();
    auto* g = sub->add_option("--grid", grid, "Absolute probabilities, increasing")->delimiter(',');
    auto* f = sub->add_option("--grid-factors", grid_factors, "lo,hi,count: log-spaced multiples of the threshold")
                  ->delimiter(',')
                  ->expected(3);
    g->excludes(f);
    sub->add_option("--trials", trials, "Trials per grid point");
    sub->add_option("--timeout-ms", timeout_ms, "Per-decision timeout in milliseconds");
    sub->add_option("--jobs,-j", jobs, "Worker threads");
    seed_opt = sub->add_option("--seed", seed, "Master seed (falls back to TRIPLE_COUPLE_SEED, then 0)");
    sub->add_option("--output,-o", output, "CSV output path (default stdout)");
    sub->add_option("--summary", summary, "Summary JSON path (default stderr)");
    sub->callback([this] { run(); });
  }

  static std::vector<double> log_grid(double lo, double hi, int count, double scale) {
    if (count < 2 || !(lo > 0) || !(hi > lo)) throw ConfigError("--grid-factors needs 0 < lo < hi and count >= 2");
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
      out.push_back(std::min(1.0, scale * std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1))));
    return out;
  }

  void run() {
    if (grid.empty() && grid_factors.empty()) throw ConfigError("sweep needs --grid or --grid-factors");
    const std::uint64_t master = resolve_seed(seed_opt, seed);
    const bool graph = kind == "graph";
    Meta meta("sweep");
    meta.fields["model"] = kind;
    meta.fields["n"] = n_values;
    if (!grid.empty()) meta.fields["grid"] = grid;
    if (!grid_factors.empty()) meta.fields["grid_factors"] = grid_factors;
    meta.fields["trials"] = trials;
    meta.fields["timeout_ms"] = timeout_ms;
    meta.fields["seed"] = master;

    std::string csv = meta.comment_header() + "n," + (graph ? "p" : "pi") + ",trials,successes,timeouts\n";
    ojson fits = ojson::array();
    for (std::size_t n : n_values) {
      SweepSpec spec;
      spec.model = graph ? SweepModel::kGraph : SweepModel::kHypergraph;
      spec.n_values = {n};
      spec.trials = trials;
      spec.timeout = std::chrono::milliseconds(timeout_ms);
      spec.jobs = jobs;
      spec.master_seed = derive_stream_seed(master, n);
      if (grid.empty()) {
        const Thresholds th = theoretical_thresholds(n);
        spec.grid = log_grid(grid_factors[0], grid_factors[1], static_cast<int>(grid_factors[2]),
                             graph ? th.p_star : th.pi_star);
        spec.grid.erase(std::unique(spec.grid.begin(), spec.grid.end()), spec.grid.end());
      } else {
        spec.grid = grid;
      }
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const SweepResult res = run_sweep(spec);
      for (const SweepPoint& pt : res.points)
        csv += std::to_string(pt.n) + "," + fmt(pt.x) + "," + std::to_string(pt.trials) + "," +
               std::to_string(pt.successes) + "," + std::to_string(pt.timeouts) + "\n";
      for (const CrossingFit& fit : res.fits) {
        ojson j;
        j["n"] = fit.n;
        j["usable"] = fit.usable;
        j["crossing"] = fit.crossing;
        j["theoretical"] = fit.theoretical;
        j["ratio"] = fit.ratio;
        j["slope"] = std::isfinite(fit.slope) ? ojson(fit.slope) : ojson("inf");
        j["hull_low"] = fit.hull_low;
        j["hull_high"] = fit.hull_high;
        j["monotone_3sigma"] = monotone_within(res.points);
        j["warnings"] = fit.warnings;
        fits.push_back(j);
      }
    }
    emit(output, csv);
    const std::string summary_text = ojson{{"meta", meta.fields}, {"fits", fits}}.dump(2) + "\n";
    if (summary.empty()) {
      std::cerr << summary_text;
    } else {
      write_atomic(summary, summary_text);
    }
  }
};

// ---- verify

struct VerifyCommand {
  std::string graph_path;
  std::string hyper_path;
  std::string output;
  int exit_code = kExitOk;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("verify", "Check that every hyperedge spans a triangle of the graph");
    sub->add_option("--graph,-g", graph_path, "Graph file")->required();
    sub->add_option("--hypergraph,-H", hyper_path, "Hypergraph file")->required();
    sub->add_option("--output,-o", output, "Output path (default stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    Graph g;
    Hypergraph3 h;
    try {
      std::ifstream gin(graph_path), hin(hyper_path);
      if (!gin) throw std::runtime_error("cannot open " + graph_path);
      if (!hin) throw std::runtime_error("cannot open " + hyper_path);
      g = read_graph(gin);
      h = read_hypergraph(hin);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    std::size_t missing = 0;
    if (g.num_vertices() == h.num_vertices())
      for (const Triple& t : h.hyperedges()) missing += !g.contains_triangle(t);
    const bool ok = verify_embedding(g, h);
    Meta meta("verify");
    meta.fields["graph"] = graph_path;
    meta.fields["hypergraph"] = hyper_path;
    std::string body = "embedding_ok,hyperedges,missing_triangles\n";
    body += std::string(ok ? "true" : "false") + "," + std::to_string(h.num_hyperedges()) + "," +
            std::to_string(ok ? 0 : (missing ? missing : h.num_hyperedges())) + "\n";
    emit(output, meta.comment_header() + body);
    if (!ok) exit_code = kExitCheckFailed;
  }
};

std::string find_subcommand(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i)
    if (!args[i].empty() && args[i][0] != '-') return args[i];
  return {};
}

}  // namespace

int cli_main(const std::vector<std::string>& raw) {
  std::vector<std::string> args = raw.empty() ? std::vector<std::string>{kToolName} : raw;

  // Splice config tokens right after the subcommand so explicit flags, which
  // come later, win under the take-last policy.
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!config_path.empty()) {
    const std::string sub = find_subcommand(args);
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return kExitConfig;
    }
    std::stringstream text;
    text << in.rdbuf();
    try {
      const auto extra = config_to_args(text.str(), sub);
      auto pos = std::find(args.begin() + 1, args.end(), sub);
      args.insert(pos == args.end() ? args.end() : pos + 1, extra.begin(), extra.end());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfig;
    }
  }

  CLI::App app{"Coupling G(n,p) with the random 3-uniform hypergraph: samplers, motif counts, "
               "coupling runs and threshold sweeps"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--config", config_path, "JSON config; flags given on the command line override it");
  app.require_subcommand(1);

  GenCommand gen;
  MotifsCommand motifs;
  TvCommand tv;
  CoupleCommand couple("couple", "exact");
  CoupleCommand certificate("certificate", "certificate");
  SweepCommand sweep;
  VerifyCommand verify;
  gen.add(app);
  motifs.add(app);
  tv.add(app);
  couple.add(app);
  certificate.add(app);
  sweep.add(app);
  verify.add(app);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return std::max({couple.exit_code, certificate.exit_code, verify.exit_code});
}

int cli_main(int argc, char** argv) {
  return cli_main(std::vector<std::string>(argv, argv + argc));
}

}  // namespace triple_couple::cli
