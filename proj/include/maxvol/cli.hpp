#pragma once

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxvol/maxvol.hpp"

namespace maxvol::cli {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kInternalError = 2;
inline constexpr int kUsageError = 64;

namespace detail {

inline ojson basis_json(const Basis& b) {
  ojson j;
  j["basisIndices"] = b.indices;
  j["logAbsDet"] = b.logAbsDet;
  if (b.logAbsDet < std::log(1e300)) j["absDet"] = std::exp(b.logAbsDet);
  j["sign"] = b.sign;
  return j;
}

inline ojson factor_json(double logFactor) {
  ojson j;
  j["log"] = logFactor;
  if (logFactor < std::log(1e300)) j["value"] = std::exp(logFactor);
  return j;
}

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, colon)), std::stoul(s.substr(colon + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::Domain, "bad range '" + s + "' (expected A or A:B)");
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

struct Common {
  std::string out;
  std::size_t threads = 1;
  bool timings = false;
};

struct SolveArgs {
  std::string input;
  std::string method = "greedy";
  double eps = 0.25;
  bool noRound = false;
  std::size_t samples = 64;
  std::uint64_t seed = 0;
};

struct MvsArgs {
  std::string input;
  std::string method = "exact";
  double eps = 0.25;
};

struct GenArgs {
  std::string family = "random";
  std::size_t d = 4;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string distribution = "gauss";
  std::size_t eColumns = 0;
};

struct GraphArgs {
  std::string input;
  std::string op = "verify";
  std::string graphOut;
};

struct BenchArgs {
  std::string family = "random";
  std::size_t trials = 200;
  std::string dRange = "2:6";
  std::size_t nMax = 12;
  double eps = 0.25;
  std::uint64_t seed = 1;
  std::string format = "json";
};

inline ojson header(const std::string& command) {
  ojson j;
  j["tool"] = "maxvol";
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

inline ojson greedy_report(const InstanceMatrix& a, double eps, bool round) {
  const GreedyTrace tr = khachiyan_greedy(a, eps, round);
  ojson j = basis_json(tr.basis());
  j["pickOrder"] = tr.pickedIndices;
  j["rho"] = tr.rho;
  j["logDetTransform"] = tr.logDetTransform;
  if (round) {
    const auto f = certify_bounds(tr);
    const auto cert = grouping_certificate(tr);
    ojson c;
    c["khachiyanFactor"] = factor_json(f.logKhachiyan);
    c["improvedFactor"] = factor_json(f.logImproved);
    c["groupCount"] = cert.t();
    c["alpha"] = cert.alpha;
    c["groups"] = cert.groups;
    c["groupingBound"] = factor_json(double(tr.d()) * std::log(cert.alpha));
    j["certificates"] = c;
  }
  return j;
}

inline ojson run_solve(const SolveArgs& args, const Common& common) {
  const InstanceMatrix a = io::parse_matrix(io::read_file(args.input));
  ojson rep = header("solve");
  rep["method"] = args.method;
  ojson cfg;
  cfg["input"] = args.input;
  cfg["method"] = args.method;
  cfg["d"] = a.d();
  cfg["n"] = a.n();
  if (args.method == "greedy") {
    cfg["eps"] = args.eps;
    cfg["round"] = !args.noRound;
  } else if (args.method == "sample") {
    cfg["samples"] = args.samples;
    cfg["seed"] = args.seed;
    cfg["threads"] = common.threads;
  }
  rep["config"] = cfg;
  rep["provenance"] = {{"rounded", args.method == "greedy" && !args.noRound}};

  if (args.method == "greedy") {
    rep["result"] = greedy_report(a, args.eps, !args.noRound);
  } else if (args.method == "exact") {
    EnumerationStats stats;
    Basis best;
    stats = for_each_basis(a, [&](const Basis& b) {
      if (better_basis(b, best)) best = b;
    });
    if (best.singular()) fail(ErrorKind::Rank, "every d-subset of columns is singular");
    ojson r = basis_json(best);
    r["nonsingularBases"] = stats.nonsingular;
    r["singularSubsets"] = stats.singular;
    rep["result"] = r;
  } else if (args.method == "sample") {
    const SampleReport s = best_of_n(a, args.samples, args.seed, common.threads);
    ojson r = basis_json(s.bestBasis);
    r["samples"] = s.samples;
    r["columnRatio"] = s.columnRatio;
    r["guaranteeFactor"] = factor_json(s.logGuaranteeFactor);
    r["logEmpiricalMeanAbsDet"] = s.logEmpiricalMean;
    rep["result"] = r;
  } else {
    fail(ErrorKind::Domain, "unknown method '" + args.method + "' (greedy|exact|sample)");
  }
  return rep;
}

inline ojson run_sample(const SolveArgs& args, const Common& common) {
  SolveArgs s = args;
  s.method = "sample";
  ojson rep = run_solve(s, common);
  rep["command"] = "sample";
  const InstanceMatrix a = io::parse_matrix(io::read_file(args.input));
  try {
    check_basis_guard(a.n(), a.d());
    const double logE = exact_expected_det(a);
    const Basis best = max_subdet_bruteforce(a);
    ojson ex;
    ex["logExpectedAbsDet"] = logE;
    ex["logDeltaMax"] = best.logAbsDet;
    ex["expectationBoundHolds"] = logE + rep["result"]["guaranteeFactor"]["log"].get<double>() >= best.logAbsDet - 1e-9;
    rep["exact"] = ex;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
  }
  return rep;
}

inline ojson run_mvs(const MvsArgs& args) {
  const PointSet pts = io::parse_points(io::read_file(args.input));
  ojson rep = header("mvs");
  rep["method"] = args.method;
  ojson cfg;
  cfg["input"] = args.input;
  cfg["method"] = args.method;
  cfg["d"] = pts.d();
  cfg["n"] = pts.n();
  AnchorOptions opt;
  if (args.method == "exact") {
    opt.solver = SubSolver::Exact;
  } else if (args.method == "greedy") {
    opt.solver = SubSolver::Greedy;
    opt.epsilon = args.eps;
    cfg["eps"] = args.eps;
  } else {
    fail(ErrorKind::Domain, "unknown method '" + args.method + "' (exact|greedy)");
  }
  rep["config"] = cfg;
  rep["provenance"] = {{"rounded", opt.solver == SubSolver::Greedy}};
  const SimplexSolution s = mvs_via_anchors(pts, opt);
  ojson r;
  r["vertexIndices"] = s.vertexIndices;
  r["logVolume"] = s.logVolume;
  r["volume"] = std::exp(s.logVolume);
  if (opt.solver == SubSolver::Greedy) r["guaranteeFactor"] = factor_json(improved_log_factor(pts.d(), args.eps));
  rep["result"] = r;
  return rep;
}

inline ojson run_gen(const GenArgs& args, std::string& payload) {
  ojson doc;
  ojson meta;
  meta["family"] = args.family;
  meta["seed"] = args.seed;
  if (args.family == "random") {
    const std::size_t n = args.n == 0 ? args.d : args.n;
    const auto dist = parse_distribution(args.distribution);
    const InstanceMatrix a = random_instance(args.d, n, dist, args.seed);
    meta["distribution"] = to_string(dist);
    doc = io::matrix_to_json(a.matrix());
  } else if (args.family == "hadamard") {
    const Eigen::MatrixXi h = sylvester_hadamard(args.d);
    doc = io::matrix_to_json(h.cast<double>());
  } else if (args.family == "adversarial") {
    const std::size_t e = args.eColumns == 0 ? 16 * args.d : args.eColumns;
    const AdversarialInstance inst = adversarial_instance(args.d, e, args.seed);
    doc = io::matrix_to_json(inst.matrix.matrix());
    meta["c"] = inst.c;
    meta["eColumnCount"] = inst.eColumnCount;
    meta["blocks"] = {{"D", {0, args.d}}, {"DH", {args.d, 2 * args.d}}, {"E", {2 * args.d, 2 * args.d + e}}};
    meta["predictedRatioLog"] = inst.predictedRatioLog;
    meta["eBallContainment"] = "not certified: E is random directions scaled to norm c";
  } else {
    fail(ErrorKind::Domain, "unknown family '" + args.family + "' (adversarial|random|hadamard)");
  }
  ojson ordered;
  ordered["d"] = doc["d"];
  ordered["n"] = doc["n"];
  ordered["meta"] = meta;
  ordered["columns"] = doc["columns"];
  payload = ordered.dump(1) + "\n";

  ojson rep = header("gen");
  rep["config"] = meta;
  rep["result"] = {{"d", doc["d"]}, {"n", doc["n"]}};
  return rep;
}

inline ojson graph_summary(const Graph& g) {
  ojson j;
  j["vertexCount"] = g.vertex_count();
  j["edgeCount"] = g.edge_count();
  j["maxDegree"] = g.max_degree();
  j["triangleCount"] = enumerate_triangles(g).size();
  return j;
}

inline ojson packing_json(const PackingResult& p) {
  ojson j;
  j["value"] = p.value;
  j["witness"] = p.witness;
  return j;
}

inline ojson run_graph(const GraphArgs& args, std::string& payload) {
  const Graph g = io::parse_graph(io::read_file(args.input));
  ojson rep = header("graph");
  rep["config"] = {{"input", args.input}, {"op", args.op}};
  ojson r;
  if (args.op == "subdivide") {
    const Graph gp = double_subdivide(g);
    r = graph_summary(gp);
    payload = io::format_graph(gp);
  } else if (args.op == "matching-subdivide") {
    const auto ms = matching_subdivide(g);
    r = graph_summary(ms.graph);
    r["matchingSize"] = ms.matching.edgeIndices.size();
    r["matchingExact"] = ms.matching.exact;
    r["matchingEdges"] = ms.matching.edgeIndices;
    payload = io::format_graph(ms.graph);
  } else if (args.op == "gadget") {
    // the file format carries no provenance, so the subdivision is redone here
    const Graph gp = double_subdivide(g);
    const Graph h = gadget_graph(gp);
    r = graph_summary(h);
    r["subdividedVertexCount"] = gp.vertex_count();
    r["subdividedEdgeCount"] = gp.edge_count();
    payload = io::format_graph(h);
  } else if (args.op == "incidence") {
    const InstanceMatrix a = incidence_matrix(g);
    r = {{"d", a.d()}, {"n", a.n()}};
    payload = io::matrix_to_json(a.matrix()).dump(1) + "\n";
  } else if (args.op == "ocp") {
    r = packing_json(ocp_bruteforce(g));
  } else if (args.op == "triangles") {
    r = packing_json(triangle_packing_bruteforce(g));
  } else if (args.op == "verify") {
    const OcpSubdetReport v = verify_ocp_subdet(g);
    r["ocp"] = packing_json(v.packing);
    r["logDeltaMax"] = v.logDeltaMax;
    r["deltaMax"] = std::exp(v.logDeltaMax);
    r["maximizer"] = basis_json(v.maximizer);
    r["equal"] = v.equal;
  } else {
    fail(ErrorKind::Domain, "unknown op '" + args.op + "'");
  }
  rep["result"] = r;
  return rep;
}

inline ojson run_bench(const BenchArgs& args, const Common& common, std::string& table) {
  const auto [dLo, dHi] = parse_range(args.dRange);
  if (dLo < 1 || dHi < dLo) fail(ErrorKind::Domain, "bad --d range");
  ojson rep = header("bench");
  ojson cfg;
  cfg["family"] = args.family;
  cfg["trials"] = args.trials;
  cfg["d"] = {dLo, dHi};
  cfg["nMax"] = args.nMax;
  cfg["eps"] = args.eps;
  cfg["seed"] = args.seed;
  rep["config"] = cfg;
  ojson rows = ojson::array();
  std::ostringstream tab;
  std::size_t passImproved = 0, passKhachiyan = 0, count = 0;
  double worst = -1e300;

  if (args.family == "random") {
    if (args.nMax < dHi) fail(ErrorKind::Domain, "--n-max must be at least the largest d");
    rep["provenance"] = {{"rounded", true}};
    tab << "trial  d   n   ln(exact/greedy)  ln(improved)  ln(khachiyan)\n";
    for (std::size_t t = 0; t < args.trials; ++t) {
      const std::uint64_t key = CounterRng::key(args.seed, t);
      const std::size_t d = dLo + key % (dHi - dLo + 1);
      const std::size_t n = d + (key >> 16) % (args.nMax - d + 1);
      const InstanceMatrix a = random_instance(d, n, Distribution::Gauss, key);
      const GreedyTrace tr = khachiyan_greedy(a, args.eps, true);
      const Basis exact = max_subdet_bruteforce(a);
      const double gap = exact.logAbsDet - tr.logAbsDetOutput;
      const double li = improved_log_factor_closed_form(d, args.eps);
      const double lk = khachiyan_log_factor(d, args.eps);
      const bool okI = gap <= li + 1e-6;
      const bool okK = gap <= lk + 1e-6;
      passImproved += okI;
      passKhachiyan += okK;
      worst = std::max(worst, gap);
      ++count;
      rows.push_back({{"trial", t}, {"d", d}, {"n", n}, {"logRatio", gap}, {"logImproved", li},
                      {"logKhachiyan", lk}, {"improvedHolds", okI}, {"khachiyanHolds", okK}});
      char line[128];
      std::snprintf(line, sizeof line, "%5zu %2zu %3zu %17.6f %13.6f %14.6f\n", t, d, n, gap, li, lk);
      tab << line;
    }
  } else if (args.family == "adversarial") {
    rep["provenance"] = {{"rounded", false}, {"adversarialERelaxed", true}};
    tab << "    d   achieved ln-ratio   predicted ln-ratio  leading-D  final<=c\n";
    for (std::size_t d = std::max<std::size_t>(dLo, 4); d <= dHi; d *= 2) {
      if (!is_power_of_two(d)) continue;
      const AdversarialInstance inst = adversarial_instance(d, 16 * d, args.seed);
      const AdversarialReport r = verify_adversarial_behavior(inst, false);
      passImproved += r.ok;
      passKhachiyan += r.ok;
      worst = std::max(worst, r.achievedRatioLog);
      ++count;
      rows.push_back({{"d", d}, {"achievedRatioLog", r.achievedRatioLog}, {"predictedRatioLog", r.predictedRatioLog},
                      {"leadingDPicks", r.leadingDPicks}, {"finalPickNorm", r.finalPickNorm},
                      {"finalPickFromE", r.finalPickFromE}, {"ok", r.ok}});
      char line[128];
      std::snprintf(line, sizeof line, "%5zu %19.6f %20.6f %10s %9s\n", d, r.achievedRatioLog, r.predictedRatioLog,
                    r.leadingDPicks ? "yes" : "no", r.finalNormBounded ? "yes" : "no");
      tab << line;
    }
  } else {
    fail(ErrorKind::Domain, "unknown bench family '" + args.family + "' (random|adversarial)");
  }
  (void)common;
  rep["rows"] = rows;
  rep["summary"] = {{"trials", count}, {"improvedHolds", passImproved}, {"khachiyanHolds", passKhachiyan},
                    {"worstLogRatio", worst}};
  table = tab.str();
  return rep;
}

inline ojson run_verify(const std::string& input, double eps) {
  const InstanceMatrix a = io::parse_matrix(io::read_file(input));
  ojson rep = header("verify");
  rep["config"] = {{"input", input}, {"eps", eps}, {"d", a.d()}, {"n", a.n()}};
  rep["provenance"] = {{"rounded", true}};
  ojson checks;
  bool all = true;
  auto check = [&](const char* name, bool ok) {
    checks[name] = ok;
    all = all && ok;
  };

  const RoundedInstance r = round_instance(a, eps);
  const double outer = std::sqrt((1.0 + eps) * double(a.d())) + 1e-8;
  check("outerContainment", max_column_norm(r.matrix.matrix()) <= outer);

  const GreedyTrace tr = khachiyan_greedy(a, eps, true);
  const Basis exact = max_subdet_bruteforce(a);
  const double logExactRounded = exact.logAbsDet + tr.logDetTransform;
  check("hadamardFact", double(a.d()) * std::log(tr.rho.front()) >= logExactRounded - 1e-6);
  check("rhoAtLeastOne", *std::min_element(tr.rho.begin(), tr.rho.end()) >= 1.0 - 1e-8);
  const auto cert = grouping_certificate(tr);
  check("groupingBound", logExactRounded <= cert.log_bound(tr.log_rho_product()) + 1e-6);
  const double gap = exact.logAbsDet - tr.logAbsDetOutput;
  check("improvedFactor", gap <= improved_log_factor_closed_form(a.d(), eps) + 1e-6);
  check("khachiyanFactor", gap <= khachiyan_log_factor(a.d(), eps) + 1e-6);
  const double lhs = log_sum_squared_dets(a);
  const double rhs = log_abs_det(gram_matrix(a)).logAbsDet;
  check("cauchyBinet", std::abs(std::expm1(lhs - rhs)) <= 1e-9);
  const double logE = exact_expected_det(a);
  check("expectationBound", logE + double(a.d()) * (1.0 + std::log(double(a.n()) / double(a.d()))) >= exact.logAbsDet - 1e-9);

  rep["result"] = {{"checks", checks},
                   {"allPassed", all},
                   {"logDeltaMax", exact.logAbsDet},
                   {"logGreedy", tr.logAbsDetOutput},
                   {"groupCount", cert.t()}};
  if (!all) fail(ErrorKind::InternalConsistency, "verification failed: " + checks.dump());
  return rep;
}

inline std::size_t env_threads() {
  if (const char* env = std::getenv("MAXDET_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return std::size_t(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. Writes the JSON report
/// to `out` (or --out) and diagnostics to `err`; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Maximum subdeterminant / maximum volume simplex toolkit", "maxvol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  common.threads = env_threads();
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Write the report (or generated file) here instead of stdout");
    sub->add_option("--threads", common.threads, "Worker threads (default MAXDET_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timings", common.timings, "Include wall-clock timings (makes reports non-reproducible)");
  };

  SolveArgs solve;
  auto* solveCmd = app.add_subcommand("solve", "Approximate or exact maximum subdeterminant");
  solveCmd->add_option("--input", solve.input, "Matrix file (JSON or CSV)")->required();
  solveCmd->add_option("--method", solve.method, "greedy|exact|sample")
      ->check(CLI::IsMember({"greedy", "exact", "sample"}));
  solveCmd->add_option("--eps", solve.eps, "Rounding tolerance epsilon")->check(CLI::PositiveNumber);
  solveCmd->add_flag("--no-round", solve.noRound, "Skip the ellipsoidal rounding step");
  solveCmd->add_option("--samples", solve.samples, "Volume samples for --method sample")->check(CLI::PositiveNumber);
  solveCmd->add_option("--seed", solve.seed, "Random seed");
  add_common(solveCmd);

  SolveArgs sample;
  auto* sampleCmd = app.add_subcommand("sample", "Best-of-N volume sampling");
  sampleCmd->add_option("--input", sample.input, "Matrix file (JSON or CSV)")->required();
  sampleCmd->add_option("--samples", sample.samples, "Number of samples")->check(CLI::PositiveNumber);
  sampleCmd->add_option("--seed", sample.seed, "Random seed");
  add_common(sampleCmd);

  MvsArgs mvs;
  auto* mvsCmd = app.add_subcommand("mvs", "Maximum volume simplex through the anchor reduction");
  mvsCmd->add_option("--input", mvs.input, "Points file (JSON with 'points', or CSV d x n)")->required();
  mvsCmd->add_option("--method", mvs.method, "exact|greedy")->check(CLI::IsMember({"exact", "greedy"}));
  mvsCmd->add_option("--eps", mvs.eps, "Rounding tolerance for greedy")->check(CLI::PositiveNumber);
  add_common(mvsCmd);

  GenArgs gen;
  auto* genCmd = app.add_subcommand("gen", "Generate instances");
  genCmd->add_option("--family", gen.family, "adversarial|random|hadamard")
      ->check(CLI::IsMember({"adversarial", "random", "hadamard"}));
  genCmd->add_option("--d", gen.d, "Dimension")->required();
  genCmd->add_option("--n", gen.n, "Columns (random family; default d)");
  genCmd->add_option("--seed", gen.seed, "Random seed");
  genCmd->add_option("--distribution", gen.distribution, "gauss|sign|int (random family)");
  genCmd->add_option("--e-columns", gen.eColumns, "Columns in the E block (adversarial; default 16 d)");
  add_common(genCmd);

  GraphArgs graph;
  auto* graphCmd = app.add_subcommand("graph", "Odd cycle packing reduction tools");
  graphCmd->add_option("--input", graph.input, "Graph file")->required();
  graphCmd->add_option("--op", graph.op, "subdivide|matching-subdivide|gadget|incidence|ocp|triangles|verify")
      ->check(CLI::IsMember({"subdivide", "matching-subdivide", "gadget", "incidence", "ocp", "triangles", "verify"}));
  graphCmd->add_option("--graph-out", graph.graphOut, "Write the constructed graph or matrix here");
  add_common(graphCmd);

  BenchArgs bench;
  auto* benchCmd = app.add_subcommand("bench", "Achieved vs guaranteed ratios over a random corpus");
  benchCmd->add_option("--family", bench.family, "random|adversarial")->check(CLI::IsMember({"random", "adversarial"}));
  benchCmd->add_option("--trials", bench.trials, "Number of random instances");
  benchCmd->add_option("--d", bench.dRange, "Dimension range A:B");
  benchCmd->add_option("--n-max", bench.nMax, "Largest column count");
  benchCmd->add_option("--eps", bench.eps, "Rounding tolerance")->check(CLI::PositiveNumber);
  benchCmd->add_option("--seed", bench.seed, "Corpus seed");
  benchCmd->add_option("--format", bench.format, "json|table")->check(CLI::IsMember({"json", "table"}));
  add_common(benchCmd);

  std::string verifyInput;
  double verifyEps = 0.25;
  auto* verifyCmd = app.add_subcommand("verify", "Check every approximation certificate against the exact oracle");
  verifyCmd->add_option("--input", verifyInput, "Matrix file (JSON or CSV)")->required();
  verifyCmd->add_option("--eps", verifyEps, "Rounding tolerance")->check(CLI::PositiveNumber);
  add_common(verifyCmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsageError;
  }

  try {
    const Timer timer;
    ojson rep;
    std::string payload;  // generated artifact, if any
    std::string table;
    if (solveCmd->parsed()) rep = run_solve(solve, common);
    else if (sampleCmd->parsed()) rep = run_sample(sample, common);
    else if (mvsCmd->parsed()) rep = run_mvs(mvs);
    else if (genCmd->parsed()) rep = run_gen(gen, payload);
    else if (graphCmd->parsed()) rep = run_graph(graph, payload);
    else if (benchCmd->parsed()) rep = run_bench(bench, common, table);
    else if (verifyCmd->parsed()) rep = run_verify(verifyInput, verifyEps);
    if (common.timings) rep["timingsMs"] = {{"total", timer.ms()}};

    if (genCmd->parsed()) {
      // gen writes the instance itself; the report goes to stderr-free stdout only without --out
      if (common.out.empty()) out << payload;
      else io::write_file(common.out, payload);
      return kOk;
    }
    if (graphCmd->parsed() && !graph.graphOut.empty() && !payload.empty()) io::write_file(graph.graphOut, payload);
    std::string text = (benchCmd->parsed() && bench.format == "table") ? table : rep.dump(2) + "\n";
    if (common.out.empty()) out << text;
    else io::write_file(common.out, text);
    return kOk;
  } catch (const Error& e) {
    err << "maxvol: " << e.what() << '\n';
    return is_bug_class(e.kind()) ? kInternalError : kDomainError;
  } catch (const std::exception& e) {
    err << "maxvol: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace maxvol::cli
