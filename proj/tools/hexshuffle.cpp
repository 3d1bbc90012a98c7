// hexshuffle: uniform lozenge tilings of a,b,c hexagons and their dynamics.
//
// Subcommands: sample, dynamics, render, correlate, bulk-kernel, enumerate.
// Exit codes: 0 success, 2 usage/config error, 3 numeric or unsupported
// configuration, 4 capacity refusal (enumeration cap).
// HEXSHUFFLE_SEED overrides --seed.  Identical config + seed produce
// byte-identical JSON; wall-clock timings go to stderr only.

#include <CLI11.hpp>
#include <json.hpp>

#include "hexshuffle/bulk.hpp"
#include "hexshuffle/enumerate.hpp"
#include "hexshuffle/json_io.hpp"
#include "hexshuffle/lozenge.hpp"
#include "hexshuffle/shuffle.hpp"
#include "hexshuffle/spectral.hpp"
#include "hexshuffle/svg.hpp"
#include "hexshuffle/version.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::json;
using namespace hexshuffle;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCapacity = 4;

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
  if (const char* env = std::getenv("HEXSHUFFLE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw std::invalid_argument("HEXSHUFFLE_SEED is not an unsigned integer");
    return (std::uint64_t)v;
  }
  if (seed_given) return seed_flag;
  std::random_device rd;
  return ((std::uint64_t)rd() << 32) ^ (std::uint64_t)rd();
}

// output stream that is either stdout ("-") or a file
struct OutStream {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit OutStream(const std::string& path) {
    if (path != "-") {
      file.open(path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& get() { return *os; }
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

void stamp(json& j, const std::string& canonical, std::uint64_t seed) {
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  j["config_hash"] = config_hash(canonical);
}

void check_dims(int N, int T, int S) {
  if (S < 0 || S > T) throw std::invalid_argument("S must satisfy 0 <= S <= T");
  BoxDims{N, T, S}.require_valid();
}

std::vector<int> parse_plan(const std::string& plan, int steps, int S0, int T) {
  std::vector<int> eps;
  if (plan == "grow") {
    eps.assign((size_t)steps, 1);
  } else if (plan == "alternate") {
    int first = S0 < T ? 1 : -1;
    for (int i = 0; i < steps; ++i) eps.push_back(i % 2 == 0 ? first : -first);
  } else if (plan.find_first_not_of("+-") == std::string::npos && !plan.empty()) {
    for (char ch : plan) eps.push_back(ch == '+' ? 1 : -1);
  } else {
    std::stringstream ss(plan);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      eps.push_back(std::stoi(tok));
    }
    if (eps.empty()) throw std::invalid_argument("empty step plan");
  }
  return eps;
}

int cmd_sample(int N, int T, int S, bool seed_given, std::uint64_t seed_flag, int count, int jobs,
               const std::string& out_path, const std::string& svg_path, double edge,
               bool overlay) {
  check_dims(N, T, S);
  if (count < 1) throw std::invalid_argument("--count must be at least 1");
  if (count > 1 && !svg_path.empty())
    throw std::invalid_argument("--svg only applies to a single sample");
  const std::uint64_t seed = resolve_seed(seed_given, seed_flag);
  const BoxDims box{N, T, S};
  std::ostringstream cfg;
  cfg << "sample N=" << N << " S=" << S << " T=" << T << " count=" << count << " seed=" << seed;

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> lines((size_t)count);
  std::atomic<int> next{0};
  const int workers = std::min(std::max(jobs, 1), count);
  auto work = [&]() {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      RandomSource rng(seed + (std::uint64_t)i);
      const PathFamily fam = sample_uniform(box, rng);
      json j = json::parse(family_to_json(fam));
      stamp(j, cfg.str(), seed + (std::uint64_t)i);
      if (count > 1) j["index"] = i;
      lines[(size_t)i] = j.dump();
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  OutStream out(out_path);
  for (const auto& line : lines) out.get() << line << "\n";
  std::cerr << "sampled " << count << " tiling" << (count == 1 ? "" : "s") << " of the " << (T - S)
            << "," << S << "," << N << " hexagon in " << secs << " s\n";

  if (!svg_path.empty()) {
    PathFamily fam = family_from_json(lines[0]);
    SvgOptions opt;
    opt.edge = edge;
    opt.draw_paths = overlay;
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw std::invalid_argument("cannot open output file: " + svg_path);
    render_svg(svg, to_lozenges(fam), opt);
  }
  return 0;
}

int cmd_dynamics(int N, int T, int S0, const std::string& plan_text, int steps,
                 const std::string& start, bool seed_given, std::uint64_t seed_flag,
                 const std::string& out_path, const std::vector<int>& snapshots,
                 const std::string& snapshot_prefix, double edge) {
  check_dims(N, T, S0);
  const std::uint64_t seed = resolve_seed(seed_given, seed_flag);
  const std::vector<int> eps = parse_plan(plan_text, steps, S0, T);
  MarkovPlan plan{BoxDims{N, T, S0}, eps};
  plan.require_valid();

  std::ostringstream cfg;
  cfg << "dynamics N=" << N << " S0=" << S0 << " T=" << T << " plan=" << plan_text
      << " seed=" << seed << " start=" << start << " steps=" << eps.size();

  RandomSource rng(seed);
  PathFamily state;
  if (start == "uniform")
    state = sample_uniform(plan.box, rng);
  else if (start == "lowest")
    state = lowest_family(plan.box);
  else if (start == "highest")
    state = highest_family(plan.box);
  else
    throw std::invalid_argument("--start must be uniform, lowest or highest");

  OutStream out(out_path);
  json head;
  head["N"] = N;
  head["T"] = T;
  head["S0"] = S0;
  head["steps"] = (int)eps.size();
  stamp(head, cfg.str(), seed);
  out.get() << head.dump() << "\n";

  const auto observer = [&](int r, const PathFamily& f) {
    write_trajectory_line(out.get(), r, f);
    for (int snap : snapshots) {
      if (snap != r) continue;
      SvgOptions opt;
      opt.edge = edge;
      const std::string path = snapshot_prefix + "-r" + std::to_string(r) + ".svg";
      std::ofstream svg(path, std::ios::binary);
      if (!svg) throw std::invalid_argument("cannot open output file: " + path);
      render_svg(svg, to_lozenges(f), opt);
    }
  };
  run_chain(plan, std::move(state), rng, observer);
  return 0;
}

int cmd_render(const std::string& in_path, const std::string& out_path, double edge, bool overlay,
               bool no_outline, std::size_t max_lozenges) {
  PathFamily fam;
  try {
    fam = family_from_json(read_input(in_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  SvgOptions opt;
  opt.edge = edge;
  opt.draw_paths = overlay;
  opt.draw_outline = !no_outline;
  opt.max_lozenges = max_lozenges;
  OutStream out(out_path);
  render_svg(out.get(), to_lozenges(fam), opt);
  return 0;
}

int cmd_correlate(const std::string& in_path, const std::string& method, int trials,
                  bool seed_given, std::uint64_t seed_flag) {
  const std::uint64_t seed = resolve_seed(seed_given, seed_flag);
  MarkovPlan plan;
  std::vector<SpaceTimePoint> points;
  try {
    const json q = json::parse(read_input(in_path));
    const json& p = q.at("plan");
    plan.box = BoxDims{p.at("N").get<int>(), p.at("T").get<int>(), p.at("S0").get<int>()};
    if (p.contains("eps"))
      for (const auto& e : p.at("eps")) plan.eps.push_back(e.get<int>());
    for (const auto& pt : q.at("points"))
      points.push_back(
          {pt.at("r").get<int>(), pt.at("t").get<int>(), pt.at("x").get<int>()});
    plan.box.require_valid();
    plan.require_valid();
  } catch (const std::exception& e) {
    std::cerr << "error: bad correlation query: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream cfg;
  cfg << "correlate N=" << plan.box.N << " S0=" << plan.box.S << " T=" << plan.box.T
      << " eps=" << plan.eps.size() << " method=" << method << " points=" << points.size()
      << " seed=" << seed << " trials=" << trials;
  json j;
  j["method"] = method;
  j["n_points"] = (int)points.size();
  if (method == "det") {
    SpaceTimeKernel kernel(plan);
    try {
      j["value"] = kernel.correlation(points);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: unsupported configuration: " << e.what() << "\n";
      return kExitNumeric;
    }
  } else if (method == "mc") {
    RandomSource rng(seed);
    const McEstimate est = mc_correlation(plan, points, trials, rng);
    j["value"] = est.value;
    j["std_error"] = est.std_error;
    j["trials"] = est.trials;
  } else {
    throw std::invalid_argument("--method must be det or mc");
  }
  stamp(j, cfg.str(), seed);
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_bulk(double n, double tau, double sigma, double t0, double x0,
             const std::string& eps_text, std::vector<std::string> point_specs, double tol,
             bool seed_given, std::uint64_t seed_flag) {
  const std::uint64_t seed = resolve_seed(seed_given, seed_flag);
  const BulkPosition pos{n, tau, sigma, t0, x0};
  const BulkRegime regime = BulkRegime::at(pos);
  if (!regime.in_bulk) {
    std::cerr << "error: position is outside the bulk (frozen region, limit density "
              << regime.density() << ")\n";
    return kExitNumeric;
  }
  std::vector<int> eps;
  for (char ch : eps_text) {
    if (ch == '+')
      eps.push_back(1);
    else if (ch == '-')
      eps.push_back(-1);
    else
      throw std::invalid_argument("--eps must be a string of + and - characters");
  }
  std::vector<BulkPoint> pts;
  if (point_specs.empty()) point_specs.push_back("0,0,0");
  for (const auto& spec : point_specs) {
    BulkPoint p;
    if (std::sscanf(spec.c_str(), "%d,%d,%d", &p.r, &p.t, &p.x) != 3)
      throw std::invalid_argument("--point expects r,t,x");
    pts.push_back(p);
  }

  std::ostringstream cfg;
  cfg << "bulk-kernel eps=" << eps_text << " n=" << n << " points=" << pts.size()
      << " sigma=" << sigma << " t0=" << t0 << " tau=" << tau << " tol=" << tol << " x0=" << x0;

  BulkKernel kernel(regime, eps);
  kernel.tolerance = tol;
  std::sort(pts.begin(), pts.end(), [](const BulkPoint& a, const BulkPoint& b) {
    if (a.r != b.r) return a.r < b.r;
    if (a.t != b.t) return a.t > b.t;
    return a.x < b.x;
  });
  json j;
  j["phi"] = regime.phi;
  j["c1"] = regime.c1;
  j["c2"] = regime.c2;
  j["density"] = regime.density();
  json entries = json::array();
  json points_json = json::array();
  try {
    for (const auto& p : pts)
      points_json.push_back(json{{"r", p.r}, {"t", p.t}, {"x", p.x}});
    for (const auto& pi : pts) {
      json row = json::array();
      for (const auto& pj : pts) row.push_back(kernel(pi, pj));
      entries.push_back(row);
    }
    j["entries"] = entries;
    j["points"] = points_json;
    j["determinant"] = kernel.correlation(pts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: unsupported configuration: " << e.what() << "\n";
    return kExitNumeric;
  }
  j["quadrature_error"] = tol;
  stamp(j, cfg.str(), seed);
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_enumerate(int N, int T, int S, double cap, bool list, const std::string& out_path) {
  check_dims(N, T, S);
  const BoxDims box{N, T, S};
  std::ostringstream cfg;
  cfg << "enumerate N=" << N << " S=" << S << " T=" << T << " cap=" << cap
      << " list=" << (list ? 1 : 0);
  json j;
  j["N"] = N;
  j["T"] = T;
  j["S"] = S;
  j["count"] = count_families_exact(box).str();
  j["log10_count"] = count_families_log(box) / std::log(10.0);
  stamp(j, cfg.str(), 0);
  OutStream out(out_path);
  out.get() << j.dump() << "\n";
  if (list) {
    const auto families = enumerate_families(box, cap);  // throws CapExceeded -> exit 4
    for (const auto& fam : families) out.get() << family_to_json(fam) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform lozenge tilings of a,b,c hexagons: exact sampling, dynamics, "
               "correlations, bulk kernels"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "draw exact uniform tilings");
  int sN = 2, sT = 4, sS = 2, s_count = 1, s_jobs = 1;
  std::uint64_t s_seed = 0;
  std::string s_out = "-", s_svg;
  double s_edge = 24.0;
  bool s_overlay = false;
  sample->add_option("--N", sN, "number of paths (hexagon side c)")->required();
  sample->add_option("--T", sT, "steps per path (a+b)")->required();
  sample->add_option("--S", sS, "rises per path (hexagon side b)")->required();
  auto* s_seed_opt = sample->add_option("--seed", s_seed, "RNG seed (default: entropy)");
  sample->add_option("--count", s_count, "number of independent samples");
  sample->add_option("--jobs", s_jobs, "parallel chains when --count > 1");
  sample->add_option("--out", s_out, "output path, - for stdout");
  sample->add_option("--svg", s_svg, "also render the sample to this SVG file");
  sample->add_option("--edge", s_edge, "SVG pixels per lattice unit");
  sample->add_flag("--paths", s_overlay, "overlay the lattice paths on the SVG");

  // dynamics
  auto* dynamics = app.add_subcommand("dynamics", "run a chain of rise/lower steps");
  int dN = 2, dT = 4, dS0 = 2, d_steps = 0;
  std::uint64_t d_seed = 0;
  std::string d_plan = "alternate", d_start = "uniform", d_out = "-", d_prefix = "snapshot";
  std::vector<int> d_snapshots;
  double d_edge = 24.0;
  dynamics->add_option("--N", dN)->required();
  dynamics->add_option("--T", dT)->required();
  dynamics->add_option("--S0", dS0, "starting rise count")->required();
  dynamics->add_option("--plan", d_plan, "grow | alternate | explicit signs (e.g. ++-+ or 1,-1)");
  dynamics->add_option("--steps", d_steps, "number of steps for grow/alternate plans");
  dynamics->add_option("--start", d_start, "uniform | lowest | highest");
  auto* d_seed_opt = dynamics->add_option("--seed", d_seed, "RNG seed (default: entropy)");
  dynamics->add_option("--out", d_out, "trajectory output (NDJSON), - for stdout");
  dynamics->add_option("--snapshot", d_snapshots, "chain steps to render as SVG snapshots");
  dynamics->add_option("--snapshot-prefix", d_prefix, "snapshot file prefix");
  dynamics->add_option("--edge", d_edge, "SVG pixels per lattice unit");

  // render
  auto* render = app.add_subcommand("render", "render a family JSON to SVG");
  std::string r_in = "-", r_out = "-";
  double r_edge = 24.0;
  bool r_overlay = false, r_no_outline = false;
  std::size_t r_max = 2'000'000;
  render->add_option("--in", r_in, "family JSON path, - for stdin");
  render->add_option("--out", r_out, "SVG output path, - for stdout");
  render->add_option("--edge", r_edge, "pixels per lattice unit");
  render->add_flag("--paths", r_overlay, "overlay the lattice paths");
  render->add_flag("--no-outline", r_no_outline, "omit the hexagon outline");
  render->add_option("--max-lozenges", r_max, "thin the drawing above this many lozenges");

  // correlate
  auto* correlate = app.add_subcommand("correlate", "evaluate correlation queries");
  std::string c_in = "-", c_method = "det";
  int c_trials = 100000;
  std::uint64_t c_seed = 0;
  correlate->add_option("--in", c_in, "query JSON path, - for stdin");
  correlate->add_option("--method", c_method, "det | mc");
  correlate->add_option("--trials", c_trials, "trajectories for --method mc");
  auto* c_seed_opt = correlate->add_option("--seed", c_seed, "RNG seed (default: entropy)");

  // bulk-kernel
  auto* bulk = app.add_subcommand("bulk-kernel", "evaluate the limiting kernel");
  double b_n = 1.0, b_tau = 2.0, b_sigma = 1.0, b_t0 = 1.0, b_x0 = 1.0, b_tol = 1e-10;
  std::string b_eps;
  std::vector<std::string> b_points;
  std::uint64_t b_seed = 0;
  bulk->add_option("--n", b_n, "scaled path count");
  bulk->add_option("--tau", b_tau, "scaled steps per path");
  bulk->add_option("--sigma", b_sigma, "scaled rise count");
  bulk->add_option("--t0", b_t0, "scaled section position");
  bulk->add_option("--x0", b_x0, "scaled height");
  bulk->add_option("--eps", b_eps, "chain step signs as a +- string");
  bulk->add_option("--point", b_points, "microscopic offset r,t,x (repeatable)");
  bulk->add_option("--tol", b_tol, "quadrature tolerance");
  auto* b_seed_opt = bulk->add_option("--seed", b_seed, "echoed into the output metadata");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "count or list all tilings");
  int eN = 2, eT = 4, eS = 2;
  double e_cap = 1e6;
  bool e_list = false;
  std::string e_out = "-";
  enumerate->add_option("--N", eN)->required();
  enumerate->add_option("--T", eT)->required();
  enumerate->add_option("--S", eS)->required();
  enumerate->add_option("--cap", e_cap, "refuse to list more families than this");
  enumerate->add_flag("--list", e_list, "write every family as NDJSON");
  enumerate->add_option("--out", e_out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sample->parsed())
      return cmd_sample(sN, sT, sS, !s_seed_opt->empty(), s_seed, s_count, s_jobs, s_out, s_svg,
                        s_edge, s_overlay);
    if (dynamics->parsed())
      return cmd_dynamics(dN, dT, dS0, d_plan, d_steps, d_start, !d_seed_opt->empty(), d_seed,
                          d_out, d_snapshots, d_prefix, d_edge);
    if (render->parsed())
      return cmd_render(r_in, r_out, r_edge, r_overlay, r_no_outline, r_max);
    if (correlate->parsed())
      return cmd_correlate(c_in, c_method, c_trials, !c_seed_opt->empty(), c_seed);
    if (bulk->parsed())
      return cmd_bulk(b_n, b_tau, b_sigma, b_t0, b_x0, b_eps, b_points, b_tol,
                      !b_seed_opt->empty(), b_seed);
    if (enumerate->parsed())
      return cmd_enumerate(eN, eT, eS, e_cap, e_list, e_out);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
