// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <path-to-maxvol-binary> <samples-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "maxvol/maxvol.hpp"

using namespace maxvol;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct CorpusItem {
  std::uint64_t seed;
  InstanceMatrix a;
};

std::vector<CorpusItem> build_corpus(std::size_t trials) {
  std::vector<CorpusItem> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = 1000 + t;
    const std::size_t d = 2 + t % 5;
    const std::size_t n = d + (t / 5) % (13 - d);
    out.push_back({seed, random_instance(d, n, Distribution::Gauss, seed)});
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

constexpr double kEps = 0.25;

Outcome greedy_guarantee(const std::vector<CorpusItem>& corpus) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t okImproved = 0, okKhachiyan = 0;
  double worstSlack = 1e300;
  for (const auto& [seed, a] : corpus) {
    const GreedyTrace tr = khachiyan_greedy(a, kEps, true);
    const double exact = max_subdet_bruteforce(a).logAbsDet;
    const double slackI = tr.logAbsDetOutput + improved_log_factor_closed_form(a.d(), kEps) - exact;
    const double slackK = tr.logAbsDetOutput + khachiyan_log_factor(a.d(), kEps) - exact;
    okImproved += slackI >= -1e-6;
    okKhachiyan += slackK >= -1e-6;
    worstSlack = std::min(worstSlack, slackI);
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = okImproved == corpus.size() && okKhachiyan == corpus.size() && secs < 60.0;
  o.detail = std::to_string(okImproved) + "/" + std::to_string(corpus.size()) + " improved, " +
             std::to_string(okKhachiyan) + "/" + std::to_string(corpus.size()) + " khachiyan, min log-slack " +
             fmt("%.4f", worstSlack) + ", " + fmt("%.2fs", secs);
  return o;
}

Outcome rounding_sandwich(const std::vector<CorpusItem>& corpus) {
  std::size_t outerOk = 0, dirFail = 0;
  double worstNorm = 0.0;
  for (const auto& [seed, a] : corpus) {
    const RoundedInstance r = round_instance(a, kEps);
    const double limit = std::sqrt((1 + kEps) * double(a.d()));
    const double top = r.matrix.matrix().colwise().norm().maxCoeff();
    worstNorm = std::max(worstNorm, top - limit);
    outerOk += top <= limit + 1e-8;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (int k = 0; k < 1000; ++k) {
      VectorXd u = VectorXd::NullaryExpr(Eigen::Index(a.d()), [&] { return g(rng); });
      u.normalize();
      const double support = (u.transpose() * a.matrix()).cwiseAbs().maxCoeff();
      if (support < std::sqrt(u.dot(r.design.moment * u)) - 1e-9) ++dirFail;
    }
  }
  Outcome o;
  o.pass = outerOk == corpus.size() && dirFail == 0;
  o.detail = std::to_string(outerOk) + "/" + std::to_string(corpus.size()) + " outer, " + std::to_string(dirFail) +
             " inner direction failures of " + std::to_string(1000 * corpus.size()) + ", max norm excess " +
             fmt("%.2e", worstNorm);
  return o;
}

Outcome hadamard_facts(const std::vector<CorpusItem>& corpus) {
  std::size_t ok = 0;
  for (const auto& [seed, a] : corpus) {
    const GreedyTrace tr = khachiyan_greedy(a, kEps, true);
    const double exactRounded = max_subdet_bruteforce(InstanceMatrix(tr.working)).logAbsDet;
    const bool fact1 = double(a.d()) * std::log(tr.rho.front()) >= exactRounded - 1e-6;
    const bool fact2 = *std::min_element(tr.rho.begin(), tr.rho.end()) >= 1 - 1e-8;
    ok += fact1 && fact2;
  }
  return {ok == corpus.size(), std::to_string(ok) + "/" + std::to_string(corpus.size()) + " traces"};
}

Outcome grouping_check(const std::vector<CorpusItem>& corpus) {
  std::size_t ok = 0;
  std::map<std::size_t, std::size_t> groupHist;
  std::string firstFailure;
  for (const auto& [seed, a] : corpus) {
    const GreedyTrace tr = khachiyan_greedy(a, kEps, true);
    try {
      const GroupingCertificate c = maxvol::grouping_certificate(tr);
      ++groupHist[c.t()];
      const double exact = max_subdet_bruteforce(a).logAbsDet + tr.logDetTransform;
      const bool abc = c.axesAligned && c.picksOutside && c.inputsContained;
      const bool bound = exact <= double(a.d()) * std::log(std::sqrt(std::numbers::e * double(c.t()))) +
                                      tr.log_rho_product() + 1e-6;
      if (abc && bound) ++ok;
      else if (firstFailure.empty()) firstFailure = " first failure seed " + std::to_string(seed);
    } catch (const Error& e) {
      if (firstFailure.empty()) firstFailure = std::string(" ") + e.what();
    }
  }
  std::string hist;
  for (const auto& [t, cnt] : groupHist) hist += " t=" + std::to_string(t) + ":" + std::to_string(cnt);
  return {ok == corpus.size(), std::to_string(ok) + "/" + std::to_string(corpus.size()) + " traces," + hist + firstFailure};
}

Outcome tightness_family() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  for (std::size_t d : {4u, 8u, 16u}) {
    const AdversarialInstance inst = adversarial_instance(d, 16 * d, 0);
    const AdversarialReport r = verify_adversarial_behavior(inst, false);
    o.pass = o.pass && r.ok;
    o.detail += "d=" + std::to_string(d) + (r.ok ? " ok" : " FAILED") + " (ratio " + fmt("%.3f", std::exp(r.achievedRatioLog)) +
                " >= " + fmt("%.3f", std::exp(r.predictedRatioLog)) + "), ";
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 10.0;
  o.detail += fmt("%.2fs", secs);
  return o;
}

Outcome sampling_distribution() {
  Outcome o;
  double worstTv = 0.0, worstLev = 0.0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const std::size_t d = 1 + k % 3;
    const std::size_t n = std::min<std::size_t>(6, d + 1 + k % 4);
    const InstanceMatrix a = random_instance(d, n, Distribution::Gauss, 5000 + k);
    std::map<std::vector<std::size_t>, double> freq;
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i) {
      SamplerDiagnostics diag;
      freq[volume_sample_basis(a, derive_sample_seed(77 + k, i), i < 100 ? &diag : nullptr).indices] += 1.0;
      for (std::size_t r = 0; r < diag.leverageSums.size(); ++r)
        worstLev = std::max(worstLev, std::abs(diag.leverageSums[r] - double(diag.remainingRank[r])));
    }
    double tv = 0.0;
    for (const auto& [idx, p] : volume_distribution(a)) {
      tv += std::abs(p - freq[idx] / double(draws));
      freq.erase(idx);
    }
    for (const auto& [idx, q] : freq) tv += q / double(draws);
    worstTv = std::max(worstTv, tv / 2);
  }
  o.pass = worstTv <= 0.01 && worstLev <= 1e-8;
  o.detail = "10 instances, worst TV " + fmt("%.4f", worstTv) + ", worst leverage-sum error " + fmt("%.1e", worstLev);
  return o;
}

Outcome expectation_bound(const std::vector<CorpusItem>& corpus) {
  std::size_t ok = 0, used = 0;
  for (const auto& [seed, a] : corpus) {
    if (a.n() > 5 * a.d()) continue;
    ++used;
    const double lhs = exact_expected_det(a) + double(a.d()) * (1 + std::log(double(a.n()) / double(a.d())));
    ok += lhs >= max_subdet_bruteforce(a).logAbsDet;
  }
  return {ok == used, std::to_string(ok) + "/" + std::to_string(used) + " instances"};
}

Outcome cauchy_binet(const std::vector<CorpusItem>& corpus) {
  std::size_t ok = 0;
  double worst = 0.0;
  for (const auto& [seed, a] : corpus) {
    const double rel = std::abs(std::expm1(log_sum_squared_dets(a) - log_abs_det(gram_matrix(a)).logAbsDet));
    worst = std::max(worst, rel);
    ok += rel <= 1e-9;
  }
  return {ok == corpus.size(), std::to_string(ok) + "/" + std::to_string(corpus.size()) + ", worst relative error " +
                                   fmt("%.1e", worst)};
}

Outcome graph_correspondence() {
  std::vector<std::pair<std::string, Graph>> graphs{
      {"triangle", cycle_graph(3)},
      {"C5", cycle_graph(5)},
      {"C7", cycle_graph(7)},
      {"two triangles", disjoint_union(cycle_graph(3), cycle_graph(3))},
      {"K4", complete_graph(4)},
      {"Petersen", petersen_graph()},
  };
  std::mt19937_64 rng(2024);
  std::size_t randomCount = 0;
  while (randomCount < 20) {
    const std::size_t v = std::uniform_int_distribution<std::size_t>(4, 12)(rng);
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.25, 0.5)(rng));
    std::vector<Edge> e;
    for (Vertex x = 0; x < v; ++x)
      for (Vertex y = x + 1; y < v; ++y)
        if (coin(rng)) e.emplace_back(x, y);
    Graph g(v, e);
    if (g.edge_count() < v || !bipartite_components(g).empty()) continue;
    try {
      check_basis_guard(g.edge_count(), v);
    } catch (const Error&) {
      continue;
    }
    graphs.emplace_back("random" + std::to_string(randomCount++), std::move(g));
  }
  Outcome o;
  std::size_t ok = 0;
  for (const auto& [name, g] : graphs) {
    try {
      if (verify_ocp_subdet(g).equal) ++ok;
    } catch (const Error& e) {
      o.detail += name + ": " + e.what() + "; ";
    }
  }
  o.pass = ok == graphs.size();
  o.detail += std::to_string(ok) + "/" + std::to_string(graphs.size()) + " graphs (6 named + 20 random)";
  return o;
}

Outcome gadget_pipeline() {
  const Graph g = complete_graph(4);
  const Graph gp = double_subdivide(g);
  const Graph h = gadget_graph(gp);
  const std::size_t alpha = stable_set_bruteforce(gp);
  const PackingResult tri = triangle_packing_bruteforce(h);
  const PackingResult ocp = ocp_bruteforce(h);
  const InstanceMatrix a = incidence_matrix(h);

  // Delta side. Lower bound: the witness cycles extended by a spanning forest
  // give a basis with |det| = 2^ocp. Upper bound: a nonsingular incidence
  // minor has one odd cycle per component and |det| = 2^(#components); the
  // cycles are vertex-disjoint, so the exponent never exceeds ocp. The
  // exponent formula is cross-checked against LU determinants on sampled
  // bases and all of them stay <= 2^ocp.
  const Basis witness = make_basis(a, odd_cycle_basis(h, ocp));
  const bool lower = std::abs(witness.logAbsDet - double(ocp.value) * std::numbers::ln2) <= 1e-9;
  bool upper = true;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 2000; ++i) {
    const Basis b = volume_sample_basis(a, derive_sample_seed(31, i));
    const auto e = incidence_minor_exponent(h, b.indices);
    if (!e || std::abs(b.logAbsDet - double(*e) * std::numbers::ln2) > 1e-9 || *e > ocp.value) upper = false;
    ++checked;
  }
  std::mt19937_64 rng(5);
  std::vector<std::size_t> all(h.edge_count());
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < 20000; ++i) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> pick(all.begin(), all.begin() + Eigen::Index(h.vertex_count()));
    const Basis b = make_basis(a, pick);
    const auto e = incidence_minor_exponent(h, b.indices);
    if (e.has_value() == b.singular()) upper = false;
    if (e && (std::abs(b.logAbsDet - double(*e) * std::numbers::ln2) > 1e-9 || *e > ocp.value)) upper = false;
    ++checked;
  }
  const GreedyTrace greedyTrace = khachiyan_greedy(a, kEps, true);
  if (greedyTrace.logAbsDetOutput > witness.logAbsDet + 1e-9) upper = false;

  Outcome o;
  const bool counts = gp.vertex_count() == 16 && gp.edge_count() == 18 && h.vertex_count() == 30 &&
                      h.edge_count() == 48 && enumerate_triangles(h).size() == 16 && h.max_degree() == 4;
  const bool chain = alpha == 7 && tri.value == 7 && ocp.value == 7;
  o.pass = counts && chain && lower && upper;
  o.detail = "G' " + std::to_string(gp.vertex_count()) + "v/" + std::to_string(gp.edge_count()) + "e, H " +
             std::to_string(h.vertex_count()) + "v/" + std::to_string(h.edge_count()) + "e/" +
             std::to_string(enumerate_triangles(h).size()) + " triangles/maxdeg " + std::to_string(h.max_degree()) +
             ", alpha(G')=" + std::to_string(alpha) + " triangles(H)=" + std::to_string(tri.value) +
             " ocp(H)=" + std::to_string(ocp.value) + ", witness |det|=" + fmt("%.0f", std::exp(witness.logAbsDet)) +
             ", " + std::to_string(checked) + " sampled minors within 2^ocp";
  return o;
}

Outcome mvs_reductions() {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  std::size_t anchorOk = 0, mvdOk = 0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t d = 1 + std::size_t(k) % 4;
    const std::size_t n = d + 1 + std::size_t(k / 4) % (8 - d);
    MatrixXd pts{Eigen::Index(d), Eigen::Index(n)};
    for (Eigen::Index j = 0; j < pts.cols(); ++j)
      for (Eigen::Index i = 0; i < pts.rows(); ++i) pts(i, j) = g(rng);
    const PointSet ps(pts);
    if (std::abs(mvs_via_anchors(ps).logVolume - max_simplex_bruteforce(ps).logVolume) <= 1e-9) ++anchorOk;

    const std::size_t cols = std::max(d, n - 1);
    const InstanceMatrix a = random_instance(d, cols, Distribution::Gauss, 3000 + std::uint64_t(k));
    const Basis b = mvd_via_mvs(a, exact_mvs_solver());
    if (b.logAbsDet >= max_subdet_bruteforce(a).logAbsDet - std::log(double(d + 1)) - 1e-9) ++mvdOk;
  }
  return {anchorOk == 50 && mvdOk == 50,
          "anchors=brute force on " + std::to_string(anchorOk) + "/50, MVD via MVS within d+1 on " +
              std::to_string(mvdOk) + "/50"};
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  const int status = pclose(p);
  return out + "\n<status " + std::to_string(status) + ">";
}

Outcome determinism(const std::string& exe, const std::string& samples) {
  const std::string matrix = samples + "/matrix_small.json";
  const std::vector<std::string> commands{
      "solve --input " + matrix + " --method greedy --eps 0.25",
      "solve --input " + matrix + " --method sample --samples 64 --seed 9 --threads 1",
      "solve --input " + matrix + " --method exact",
      "sample --input " + matrix + " --samples 32 --seed 4",
      "mvs --input " + samples + "/points_square.json --method greedy",
      "gen --family adversarial --d 8 --seed 3",
      "gen --family random --d 3 --n 7 --seed 5",
      "graph --input " + samples + "/k4.txt --op verify",
      "bench --family random --trials 20 --d 2:4 --n-max 8 --eps 0.25 --seed 2",
      "verify --input " + matrix,
  };
  Outcome o;
  std::size_t identical = 0;
  for (const auto& c : commands) {
    const std::string cmd = "MAXDET_THREADS=1 '" + exe + "' " + c + " 2>&1";
    const std::string first = run_capture(cmd);
    const std::string second = run_capture(cmd);
    if (first == second && first.find("<status 0>") != std::string::npos) ++identical;
    else o.detail += "[" + c + "] differs or failed; ";
  }
  o.pass = identical == commands.size();
  o.detail += std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <maxvol-binary> <samples-dir>\n";
    return 64;
  }
  const std::string exe = argv[1];
  const std::string samples = argv[2];

  const std::vector<CorpusItem> corpus = build_corpus(200);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 greedy approximation guarantee", [&] { return greedy_guarantee(corpus); }},
      {"2 rounding sandwich", [&] { return rounding_sandwich(corpus); }},
      {"3 Hadamard facts after rounding", [&] { return hadamard_facts(corpus); }},
      {"4 grouping ellipsoid certificate", [&] { return grouping_check(corpus); }},
      {"5 tightness family", [] { return tightness_family(); }},
      {"6 volume sampling distribution", [] { return sampling_distribution(); }},
      {"7 expected determinant bound", [&] { return expectation_bound(corpus); }},
      {"8 Cauchy-Binet identity", [&] { return cauchy_binet(corpus); }},
      {"9 incidence Delta_max = 2^ocp", [] { return graph_correspondence(); }},
      {"10 gadget pipeline from K4", [] { return gadget_pipeline(); }},
      {"11 MVS reductions", [] { return mvs_reductions(); }},
      {"12 byte-identical CLI reports", [&] { return determinism(exe, samples); }},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " -- " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
