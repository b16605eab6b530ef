// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: macroreal_acceptance [--cli /path/to/macroreal]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "macroreal/bounds.hpp"
#include "macroreal/fragment.hpp"
#include "macroreal/ontic.hpp"
#include "macroreal/overlap.hpp"
#include "macroreal/search.hpp"
#include "macroreal/support.hpp"

using namespace macroreal;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int criterion, const std::string& what, bool pass, double seconds,
            const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL",
              criterion, what.c_str(), seconds, detail.empty() ? "" : " -- ",
              detail.c_str());
  if (!pass) ++g_failures;
}

Density random_sparse_density(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Density f;
  f.mass.assign(n, 0.0);
  double sum = 0.0;
  for (double& x : f.mass) {
    if (unif(rng) < 0.6) {
      x = unif(rng);
      sum += x;
    }
  }
  if (sum == 0.0) {
    f.mass[0] = 1.0;
    return f;
  }
  for (double& x : f.mass) x /= sum;
  return f;
}

void criterion1_theorem1_fragment() {
  Timer timer;
  const PtmTable table = fragment_to_ptm(paper_fragment_theorem1());
  bool pass = std::abs(table.probability(kMeasQ, kPrepP, "q1") - 0.1) <= 1e-12;
  pass &= table.probability(kMeasQ, kPrepTP, "q2") <= 1e-12;
  pass &= table.probability(kMeasA, kPrepTP, "a1") <= 1e-12;
  pass &= theorem1_premises_hold(table, 1e-12);
  const double elapsed = timer.seconds();
  report(1, "theorem-1 fragment reproduces P(q1|Q,P)=1/10 with exact premises",
         pass && elapsed < 1.0, elapsed);
}

void criterion2_theorem2_fragment() {
  Timer timer;
  const QuantumFragment frag = paper_fragment_theorem2();
  const PtmTable table = fragment_to_ptm(frag);
  const double expected = (10.0 * std::sqrt(3.0) - 7.0) / 48.0;
  bool pass = std::abs(gap(table) - expected) <= 1e-12;

  const CVector u_psi = apply_unitary(frag.unitary, frag.psi);
  const double q = std::sqrt(2.0) / 4.0;
  const CVector target = {Complex{q * std::sqrt(3.0), 0}, Complex{q, 0},
                          Complex{2 * q, 0}};
  for (std::size_t i = 0; i < 3; ++i) pass &= std::abs(u_psi[i] - target[i]) <= 1e-12;
  const double elapsed = timer.seconds();
  report(2, "theorem-2 fragment gap equals (10 sqrt3 - 7)/48 and U|psi> matches",
         pass && elapsed < 1.0, elapsed);
}

void criterion3_search() {
  Timer timer;
  const SearchResult result = maximize_gap(64, 0);
  const double elapsed = timer.seconds();
  std::ostringstream detail;
  detail << "best = " << result.best_value;
  report(3, "fragment search (64 restarts, seed 0) lands in [0.231, 0.2365]",
         result.best_value >= 0.231 && result.best_value <= 0.2365 && elapsed < 60.0,
         elapsed, detail.str());
}

void criterion4_epsilon() {
  Timer timer;
  const EpsilonResult res = worst_case_epsilon(fragment_to_ptm(paper_fragment_theorem2()));
  std::ostringstream detail;
  detail << "epsilon = " << res.epsilon;
  report(4, "worst-case epsilon in [0.0501, 0.0511] with residual < 1e-10",
         res.epsilon >= 0.0501 && res.epsilon <= 0.0511 && res.residual < 1e-10,
         timer.seconds(), detail.str());
}

void criterion5_em_exclusion() {
  Timer timer;
  const ExperimentFrequencies exact =
      frequencies_from_table(fragment_to_ptm(paper_fragment_theorem2()));
  const bool pass =
      em_ruled_out(exact) && !em_ruled_out(perturb_worst_case(exact, 0.06));
  report(5, "EM exclusion holds on exact data and fails at 6% adversarial noise",
         pass, timer.seconds());
}

void criterion6_overlap_identities() {
  Timer timer;
  std::mt19937_64 rng(2024);
  bool pass = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const Density f = random_sparse_density(rng, n);
    const Density g = random_sparse_density(rng, n);
    const TvIdentity id = total_variation_identity_check(f, g);
    pass &= std::abs(id.omega - id.one_minus_sup) <= 1e-12;
    pass &= std::abs(id.omega - id.one_minus_half_l1) <= 1e-12;
    pass &= support_curve(f, g).asymptote == asymmetric_overlap(g, f);
  }
  const double elapsed = timer.seconds();
  report(6, "overlap identity and exact asymptote on 1000 random pairs",
         pass && elapsed < 5.0, elapsed);
}

void criterion7_curve_shape() {
  Timer timer;
  std::mt19937_64 rng(2025);
  bool pass = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const SupportCurve curve =
        support_curve(random_sparse_density(rng, n), random_sparse_density(rng, n));
    double prev_slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < curve.breakpoints.size(); ++i) {
      const auto& [a0, v0] = curve.breakpoints[i - 1];
      const auto& [a1, v1] = curve.breakpoints[i];
      pass &= a1 > a0 && v1 >= v0 - 1e-15;
      const double slope = (v1 - v0) / (a1 - a0);
      pass &= slope <= prev_slope + 1e-12;
      prev_slope = slope;
    }
  }

  OnticSpace space;
  space.size = 3;
  space.q_value = {"q1", "q2", "q3"};
  space.outcomes = {"q1", "q2", "q3"};
  Density e1, e2, e3;
  e1.mass = {1, 0, 0};
  e2.mass = {0, 1, 0};
  e3.mass = {0, 0, 1};
  const OnticModel mixing =
      mixing_model(space, {{"q1", e1}, {"q2", e2}, {"q3", e3}},
                   {{"q1", 0.2}, {"q2", 0.3}, {"q3", 0.5}});
  for (const auto& q : {"q1", "q2", "q3"}) {
    pass &= beta_min(mixing, "P", q, 1.0) <= 1e-12;
  }

  OnticModel psi;
  psi.space.size = 4;
  psi.space.q_value = {"q1", "q1", "q2", "q2"};
  psi.space.outcomes = {"q1", "q2"};
  psi.eigen_densities["q1"] = {e1};
  psi.eigen_densities["q1"].front().mass = {1, 0, 0, 0};
  psi.eigen_densities["q2"] = {e1};
  psi.eigen_densities["q2"].front().mass = {0, 0, 1, 0};
  Density f_P;
  f_P.mass = {0.0, 0.4, 0.0, 0.6};
  psi.prep_densities["P"] = {f_P};
  ResponseFunction q_resp;
  q_resp.outcomes = psi.space.outcomes;
  q_resp.rows = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  psi.responses[kMeasQ] = q_resp;
  for (double alpha : {0.0, 1.0, 10.0, 1000.0}) {
    pass &= std::abs(beta_min(psi, "P", "q1", alpha) - 0.4) <= 1e-15;
    pass &= std::abs(beta_min(psi, "P", "q2", alpha) - 0.6) <= 1e-15;
  }
  report(7, "support-curve shape; mixing beta_min(1)=0; psi-ontic beta_min=P(q|Q,P)",
         pass, timer.seconds());
}

void criterion8_theorem2_soundness() {
  Timer timer;
  bool pass = true;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const OnticModel model =
        random_model(seed, 4 + seed % 9, {"q1", "q2", "q3"}, 1, 1);
    const PtmTable table = induced_table(model, "P1", "T");
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double beta = beta_min(model, "P1", "q1", alpha);
      if (gap(table) > theorem2_rhs(table, alpha, beta) + 1e-9) {
        pass = false;
        ++violations;
      }
    }
  }
  const double elapsed = timer.seconds();
  std::ostringstream detail;
  detail << violations << " violations / 6000 checks";
  report(8, "theorem-2 inequality holds at beta_min on 1000 random models",
         pass && elapsed < 30.0, elapsed, detail.str());
}

void criterion9_lemma1_soundness() {
  Timer timer;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool pass = true;
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const OnticModel model = random_model(5000 + trial, 4 + trial % 8,
                                          {"q1", "q2", "q3"}, 1 + trial % 3, 1);
    const double alpha = std::vector<double>{0.0, 0.5, 1.0, 2.0, 5.0}[trial % 5];
    const double beta = beta_min(model, "P1", "q1", alpha);
    std::vector<double> g(model.space.size);
    for (double& x : g) x = unif(rng);
    if (!lemma1_check(model, "P1", "q1", g, alpha, beta)) {
      pass = false;
      ++violations;
    }
  }
  std::ostringstream detail;
  detail << violations << " violations / 1000 trials";
  report(9, "lemma-1 inequality holds at beta_min on 1000 random (model, g) pairs",
         pass, timer.seconds(), detail.str());
}

void criterion10_robustness_demo() {
  Timer timer;
  // eigenpreparation-undermining fixture: inside the q1 cell the preparation
  // occupies a state the eigen density misses
  OnticModel model;
  model.space.size = 4;
  model.space.q_value = {"q1", "q1", "q1", "q2"};
  model.space.outcomes = {"q1", "q2"};
  Density f_q1;
  f_q1.mass = {0.5, 0.5, 0.0, 0.0};
  Density f_q2;
  f_q2.mass = {0.0, 0.0, 0.0, 1.0};
  Density f_P;
  f_P.mass = {0.3, 0.3, 0.3, 0.1};
  model.eigen_densities["q1"] = {f_q1};
  model.eigen_densities["q2"] = {f_q2};
  model.prep_densities["P"] = {f_P};
  ResponseFunction q_resp;
  q_resp.outcomes = model.space.outcomes;
  q_resp.rows = {{1, 0}, {1, 0}, {1, 0}, {0, 1}};
  model.responses[kMeasQ] = q_resp;

  bool pass = !is_eigenpreparation_supported(model);

  const double before = curve_eval(support_curve(f_P, f_q1), 1.0);
  const auto cell = model.space.partition_indicator("q1");
  const Density f_q1_perturbed = perturb_eigen_density(f_q1, f_P, cell, 0.01);
  OnticModel perturbed = model;
  perturbed.eigen_densities["q1"] = {f_q1_perturbed};
  pass &= is_eigenpreparation_supported(perturbed);
  pass &= validate_model(perturbed).empty();

  const double after = curve_eval(support_curve(f_P, f_q1_perturbed), 1.0);
  std::ostringstream detail;
  detail << "curve shift at alpha=1: " << std::abs(after - before);
  pass &= std::abs(after - before) < 0.02;
  report(10, "1% eigen-density perturbation restores support, curve shift < 0.02",
         pass, timer.seconds(), detail.str());
}

void criterion11_reproduce_cli(const std::string& cli) {
  Timer timer;
  if (cli.empty()) {
    report(11, "reproduce command (no --cli path given)", false, 0.0);
    return;
  }
  const std::string cmd = cli + " reproduce > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  const double elapsed = timer.seconds();
  report(11, "`reproduce` exits 0 end-to-end", exit_code == 0 && elapsed < 120.0,
         elapsed);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  criterion1_theorem1_fragment();
  criterion2_theorem2_fragment();
  criterion3_search();
  criterion4_epsilon();
  criterion5_em_exclusion();
  criterion6_overlap_identities();
  criterion7_curve_shape();
  criterion8_theorem2_soundness();
  criterion9_lemma1_soundness();
  criterion10_robustness_demo();
  criterion11_reproduce_cli(cli);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
