#include <doctest.h>

#include <cmath>
#include <random>

#include "macroreal/bounds.hpp"
#include "macroreal/fragment.hpp"
#include "macroreal/support.hpp"
#include "test_helpers.hpp"

using namespace macroreal;

namespace {

const double r3 = std::sqrt(3.0);

// Eigenpreparation-supported random model that satisfies the premises
// exactly: full-support eigen densities, A's a2 response vanishing on the q1
// cell, and a kernel that sends the q1 cell only to states responding a1 (on
// the reachable part of the q1 cell) or lying in the q2 cell with a3 = 0.
OnticModel random_theorem1_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t per_cell = 2 + seed % 3;
  const std::size_t n = 3 * per_cell;

  OnticModel model;
  model.space.size = n;
  model.space.outcomes = {"q1", "q2", "q3"};
  model.space.q_value.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    model.space.q_value[l] = model.space.outcomes[l / per_cell];
  }

  for (std::size_t q = 0; q < 3; ++q) {
    Density f;
    f.mass.assign(n, 0.0);
    const auto on_cell = testutil::random_mass(rng, per_cell);
    for (std::size_t i = 0; i < per_cell; ++i) f.mass[q * per_cell + i] = on_cell[i];
    model.eigen_densities[model.space.outcomes[q]] = {f};
  }
  for (int p = 0; p < 2; ++p) {
    Density f;
    f.mass = testutil::random_mass(rng, n);
    model.prep_densities["P" + std::to_string(p + 1)] = {f};
  }

  // reachable targets for the q1 cell: R1 inside q1, R2 inside q2
  std::vector<std::size_t> reach;
  const std::size_t r1 = 1 + rng() % per_cell;
  const std::size_t r2 = 1 + rng() % per_cell;
  for (std::size_t i = 0; i < r1; ++i) reach.push_back(i);
  for (std::size_t i = 0; i < r2; ++i) reach.push_back(per_cell + i);

  MarkovKernel kernel;
  kernel.rows.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t l = 0; l < n; ++l) {
    if (model.space.q_value[l] == "q1") {
      const auto w = testutil::random_mass(rng, reach.size());
      for (std::size_t i = 0; i < reach.size(); ++i) kernel.rows[l][reach[i]] = w[i];
    } else {
      kernel.rows[l] = testutil::random_mass(rng, n);
    }
  }
  model.kernels["T"] = kernel;

  ResponseFunction q_resp;
  q_resp.outcomes = model.space.outcomes;
  q_resp.rows.assign(n, std::vector<double>(3, 0.0));
  for (std::size_t l = 0; l < n; ++l) q_resp.rows[l][l / per_cell] = 1.0;
  model.responses[kMeasQ] = q_resp;

  ResponseFunction a_resp;
  a_resp.outcomes = {"a1", "a2", "a3"};
  a_resp.rows.assign(n, std::vector<double>(3, 0.0));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t l = 0; l < n; ++l) {
    const bool reachable =
        std::find(reach.begin(), reach.end(), l) != reach.end();
    if (model.space.q_value[l] == "q1") {
      // premise a2 = 0 on the cell; reachable states must not respond a3
      if (reachable) {
        a_resp.rows[l] = {1.0, 0.0, 0.0};
      } else {
        const double x = unif(rng);
        a_resp.rows[l] = {x, 0.0, 1.0 - x};
      }
    } else if (reachable) {
      const double x = unif(rng);
      a_resp.rows[l] = {x, 1.0 - x, 0.0};
    } else {
      a_resp.rows[l] = testutil::random_mass(rng, 3);
    }
  }
  model.responses[kMeasA] = a_resp;
  return model;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("theorem 1 premises") {
  const PtmTable t1 = fragment_to_ptm(paper_fragment_theorem1());
  const PtmTable t2 = fragment_to_ptm(paper_fragment_theorem2());
  CHECK(theorem1_premises_hold(t1, 1e-12));
  CHECK(theorem1_premises_hold(t2, 1e-12));

  PtmTable noisy = t2;
  noisy.rows[kMeasA][kPrepPq1] = {0.59, 0.01, 0.4};
  CHECK(!theorem1_premises_hold(noisy, 1e-6));
  CHECK(premise_sum(noisy) == doctest::Approx(0.01).epsilon(1e-12));

  PtmTable missing;
  missing.outcomes[kMeasQ] = {"q1", "q2", "q3"};
  CHECK_THROWS_AS(theorem1_premises_hold(missing, 1e-12), std::out_of_range);
}

TEST_CASE("gap values") {
  CHECK(std::abs(gap(fragment_to_ptm(paper_fragment_theorem1())) - 0.1) <= 1e-12);
  CHECK(std::abs(gap(fragment_to_ptm(paper_fragment_theorem2())) -
                 (10 * r3 - 7) / 48) <= 1e-12);

  SUBCASE("an eigenpreparation of q2 cannot produce a positive gap") {
    QuantumFragment frag = paper_fragment_theorem1();
    frag.psi = frag.q_basis[1];
    const CMatrix id = {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}},
                        {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}},
                        {Complex{0, 0}, Complex{0, 0}, Complex{1, 0}}};
    frag.unitary = id;
    CHECK(gap(fragment_to_ptm(frag)) <= 0.0);
  }
}

TEST_CASE("theorem2 rhs and violation verdicts") {
  const PtmTable t2 = fragment_to_ptm(paper_fragment_theorem2());
  CHECK(theorem2_rhs(t2, 7.0, 0.0) <= 1e-12);  // premises vanish
  CHECK(theorem2_rhs(t2, 0.0, 0.3) == doctest::Approx(0.3));

  PtmTable noisy = t2;
  noisy.rows[kMeasA][kPrepPq1] = {0.595, 0.01, 0.395};
  CHECK(theorem2_rhs(noisy, 2.0, 0.1) == doctest::Approx(0.12).epsilon(1e-12));

  CHECK(theorem2_violated(t2, 5.0, 0.214));   // beta below the gap
  CHECK(!theorem2_violated(t2, 5.0, 0.216));  // beta above the gap
  CHECK(!theorem2_violated(t2, 0.0, 1.0));    // beta = 1 never violated
  CHECK(theorem2_violated(fragment_to_ptm(paper_fragment_theorem1()), 5.0, 0.0));
}

TEST_CASE("exclusion line from exact fragment-2 frequencies") {
  const PtmTable t2 = fragment_to_ptm(paper_fragment_theorem2());
  const ExperimentFrequencies freqs = frequencies_from_table(t2);
  const ExclusionLine line = exclusion_line(freqs);
  CHECK(std::abs(line.intercept - (0.125 + (13 - 4 * r3) / 48)) <= 1e-12);
  CHECK(line.slope <= 1e-12);
  CHECK(std::abs(line.target - (2 + r3) / 8) <= 1e-12);

  SUBCASE("all-zero frequencies give the zero line") {
    const ExclusionLine zero = exclusion_line(ExperimentFrequencies{});
    CHECK(zero.intercept == 0.0);
    CHECK(zero.slope == 0.0);
    CHECK(zero(3.7) == 0.0);
  }
  SUBCASE("slope accumulates the three premise frequencies") {
    ExperimentFrequencies f{};
    f.fA2_Pq1 = 0.01;
    f.fA3_TPq1 = 0.01;
    f.fQ3_TPq1 = 0.01;
    CHECK(exclusion_line(f).slope == doctest::Approx(0.03).epsilon(1e-12));
  }
}

TEST_CASE("ruled_out crossing verdicts") {
  // mixing-style curve climbing to 0.4665 at the target
  Density f_P, f_q;
  f_P.mass = {0.46650635094610965, 0.53349364905389035};
  f_q.mass = {1.0, 0.0};
  const SupportCurve curve = support_curve(f_P, f_q);

  SUBCASE("line below the curve peak rules the model out") {
    ExclusionLine line;
    line.intercept = 0.25;
    line.slope = 0.0;
    line.target = 0.46650635094610965;
    const ExclusionVerdict v = ruled_out(curve, line);
    CHECK(v.ruled_out);
    REQUIRE(v.witness_alpha.has_value());
    CHECK(*v.witness_alpha == doctest::Approx(0.46650635094610965).epsilon(1e-12));
  }
  SUBCASE("zero curve is never ruled out") {
    Density off;
    off.mass = {0.0, 1.0};
    const SupportCurve zero_curve = support_curve(off, f_q);
    ExclusionLine line;
    line.intercept = 0.0;
    line.slope = 0.0;
    line.target = 1.0;
    CHECK(!ruled_out(zero_curve, line).ruled_out);
  }
  SUBCASE("line above the curve everywhere is not crossed") {
    ExclusionLine high;
    high.intercept = 0.5;
    high.slope = 0.1;
    high.target = 0.46650635094610965;
    CHECK(!ruled_out(curve, high).ruled_out);
  }
  SUBCASE("grid samples variant") {
    const std::vector<std::pair<double, double>> samples = {
        {0.0, 0.0}, {0.5, 0.3}, {1.0, 0.45}};
    ExclusionLine line;
    line.intercept = 0.4;
    line.slope = 0.0;
    const ExclusionVerdict v = ruled_out(samples, line);
    CHECK(v.ruled_out);
    CHECK(*v.witness_alpha == doctest::Approx(1.0));
  }
}

TEST_CASE("excluded region boundary") {
  const PtmTable t2 = fragment_to_ptm(paper_fragment_theorem2());
  const ExclusionLine line = exclusion_line(frequencies_from_table(t2));
  // slope 0: the boundary is flat at the gap
  for (double alpha : {0.0, 1.0, 10.0}) {
    CHECK(std::abs(beta_bound(line, alpha) - (10 * r3 - 7) / 48) <= 1e-12);
  }

  SUBCASE("positive slope hits zero at (target - intercept)/slope") {
    ExclusionLine sloped;
    sloped.intercept = 0.1;
    sloped.slope = 0.05;
    sloped.target = 0.3;
    CHECK(beta_bound(sloped, 0.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(beta_bound(sloped, 4.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(beta_bound(sloped, 10.0) == 0.0);
  }
  SUBCASE("target below intercept excludes nothing") {
    ExclusionLine weak;
    weak.intercept = 0.5;
    weak.slope = 0.0;
    weak.target = 0.3;
    for (double alpha : {0.0, 2.0, 50.0}) CHECK(beta_bound(weak, alpha) == 0.0);
  }
}

TEST_CASE("eigenpreparation-mixing exclusion") {
  const PtmTable t2 = fragment_to_ptm(paper_fragment_theorem2());
  const ExperimentFrequencies exact = frequencies_from_table(t2);
  CHECK(em_ruled_out(exact));

  SUBCASE("uniform frequencies exclude nothing") {
    ExperimentFrequencies uniform;
    uniform.fQ1_P = uniform.fQ2_TP = uniform.fA1_TP = 1.0 / 3.0;
    uniform.fA2_Pq1 = uniform.fA3_TPq1 = uniform.fQ3_TPq1 = 1.0 / 3.0;
    CHECK(!em_ruled_out(uniform));
  }
  SUBCASE("zero slope with intercept above target") {
    ExperimentFrequencies f{};
    f.fQ1_P = 0.3;
    f.fQ2_TP = 0.2;
    f.fA1_TP = 0.15;
    CHECK(!em_ruled_out(f));
  }
  SUBCASE("worst-case perturbation beyond the threshold kills the exclusion") {
    CHECK(em_ruled_out(perturb_worst_case(exact, 0.05)));    // below 5.06%
    CHECK(!em_ruled_out(perturb_worst_case(exact, 0.06)));   // above it
  }
  SUBCASE("mixing curve crossing agrees with the EM criterion") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      ExperimentFrequencies f{};
      f.fQ1_P = 0.2 + 0.6 * unif(rng);
      f.fQ2_TP = 0.4 * unif(rng);
      f.fA1_TP = 0.4 * unif(rng);
      f.fA2_Pq1 = 0.3 * unif(rng);
      f.fA3_TPq1 = 0.3 * unif(rng);
      f.fQ3_TPq1 = 0.3 * unif(rng);
      // curve of a mixing model: omega = min(alpha, target)
      Density f_P, f_q;
      f_P.mass = {f.fQ1_P, 1.0 - f.fQ1_P};
      f_q.mass = {1.0, 0.0};
      const ExclusionVerdict v = ruled_out(support_curve(f_P, f_q), exclusion_line(f));
      CHECK(v.ruled_out == em_ruled_out(f));
    }
  }
}

TEST_CASE("worst-case epsilon") {
  const PtmTable t2 = fragment_to_ptm(paper_fragment_theorem2());
  const EpsilonResult res = worst_case_epsilon(t2);
  CHECK(res.epsilon >= 0.0501);
  CHECK(res.epsilon <= 0.0511);
  CHECK(res.residual < 1e-10);

  SUBCASE("root substitution into the displayed inequality") {
    // with eps at the root, E(target') == target' under the worst-case shifts
    const ExperimentFrequencies shifted =
        perturb_worst_case(frequencies_from_table(t2), res.epsilon);
    const ExclusionLine line = exclusion_line(shifted);
    CHECK(std::abs(line.intercept + line.target * line.slope - line.target) <= 1e-10);
  }
  SUBCASE("zero gap leaves no margin") {
    PtmTable flat = t2;
    flat.rows[kMeasQ][kPrepP] = {0.125, 0.375, 0.5};  // q1 prob equals q2|T,P
    const EpsilonResult none = worst_case_epsilon(flat);
    CHECK(none.epsilon == 0.0);
  }
  SUBCASE("frequency-driven overload agrees with the table") {
    const EpsilonResult from_freqs =
        worst_case_epsilon(frequencies_from_table(t2));
    CHECK(from_freqs.epsilon == doctest::Approx(res.epsilon).epsilon(1e-15));
  }
}

TEST_CASE("mixture feasibility LP") {
  const PtmTable t2 = fragment_to_ptm(paper_fragment_theorem2(), true);
  const std::vector<std::string> eigenpreps = {"P_q1", "P_q2", "P_q3"};

  SUBCASE("an explicit mixture is recovered with its weights") {
    PtmTable table = t2;
    for (const auto& meas : {kMeasQ, kMeasA}) {
      std::vector<double> mix(3, 0.0);
      for (std::size_t m = 0; m < 3; ++m) {
        mix[m] = 0.4 * table.rows[meas]["P_q1"][m] + 0.6 * table.rows[meas]["P_q2"][m];
      }
      table.rows[meas]["M"] = mix;
    }
    const MixtureVerdict v = mixture_feasible(table, "M", eigenpreps);
    CHECK(v.feasible);
    REQUIRE(v.weights.size() == 3);
    CHECK(v.weights[0] == doctest::Approx(0.4).epsilon(1e-7));
    CHECK(v.weights[1] == doctest::Approx(0.6).epsilon(1e-7));
    CHECK(v.weights[2] == doctest::Approx(0.0).epsilon(1e-7));
  }
  SUBCASE("the superposition psi is not a mixture of eigenpreparations") {
    const MixtureVerdict v = mixture_feasible(t2, kPrepP, eigenpreps);
    CHECK(!v.feasible);
    CHECK(v.max_deviation > 0.01);
  }
  SUBCASE("a single eigenpreparation equals itself") {
    const MixtureVerdict v = mixture_feasible(t2, "P_q2", {"P_q2"});
    CHECK(v.feasible);
    CHECK(v.weights[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("LP optimum agrees with a brute-force simplex grid") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
      // random 3-outcome tables over 3 eigenpreps and one target prep
      PtmTable table;
      table.outcomes[kMeasQ] = {"q1", "q2", "q3"};
      table.outcomes[kMeasA] = {"a1", "a2", "a3"};
      for (const auto& meas : {kMeasQ, kMeasA}) {
        for (const auto& prep : {"E1", "E2", "E3", "X"}) {
          table.rows[meas][prep] = testutil::random_mass(rng, 3);
        }
      }
      const MixtureVerdict v = mixture_feasible(table, "X", {"E1", "E2", "E3"});

      double brute = 1e9;
      const int steps = 100;
      for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j + i <= steps; ++j) {
          const double w1 = static_cast<double>(i) / steps;
          const double w2 = static_cast<double>(j) / steps;
          const double w3 = 1.0 - w1 - w2;
          double dev = 0.0;
          for (const auto& meas : {kMeasQ, kMeasA}) {
            for (std::size_t m = 0; m < 3; ++m) {
              const double mix = w1 * table.rows[meas]["E1"][m] +
                                 w2 * table.rows[meas]["E2"][m] +
                                 w3 * table.rows[meas]["E3"][m];
              dev = std::max(dev, std::abs(mix - table.rows[meas]["X"][m]));
            }
          }
          brute = std::min(brute, dev);
        }
      }
      CHECK(v.max_deviation <= brute + 1e-9);
      CHECK(v.max_deviation >= brute - 0.02);  // grid resolution slack
    }
  }
}

TEST_CASE("lemma 1 oracle") {
  const OnticModel mixing = testutil::simple_mixing_model(0.2, 0.3, 0.5);
  const std::vector<double> ones(3, 1.0);
  const std::vector<double> zeros(3, 0.0);
  CHECK(lemma1_check(mixing, "P", "q1", ones, 1.0, 0.0));
  CHECK(lemma1_check(mixing, "P", "q1", zeros, 1.0, 0.0));

  SUBCASE("precondition violations raise") {
    const OnticModel psi = testutil::psi_ontic_model();
    const std::vector<double> g(4, 1.0);
    CHECK_THROWS_AS(lemma1_check(psi, "P", "q1", g, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(lemma1_check(mixing, "P", "q1", {2.0, 0.0, 0.0}, 1.0, 0.5),
                    std::invalid_argument);
  }
  SUBCASE("random trials at beta = beta_min never violate the bound") {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
      const OnticModel model =
          random_model(700 + trial, 4 + trial % 6, {"q1", "q2", "q3"},
                       1 + trial % 3, 1);
      const double alpha = std::vector<double>{0.5, 1.0, 2.0, 5.0}[trial % 4];
      const double beta = beta_min(model, "P1", "q1", alpha);
      std::vector<double> g(model.space.size);
      for (double& x : g) x = unif(rng);
      CHECK(lemma1_check(model, "P1", "q1", g, alpha, beta));
    }
  }
}

TEST_CASE("theorem 2 soundness on random models") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const OnticModel model = random_model(seed, 4 + seed % 7, {"q1", "q2", "q3"}, 1, 1);
    const PtmTable table = induced_table(model, "P1", "T");
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double beta = beta_min(model, "P1", "q1", alpha);
      CHECK(gap(table) <= theorem2_rhs(table, alpha, beta) + 1e-9);
    }
  }
}

TEST_CASE("theorem 1 soundness on premise-exact supported models") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const OnticModel model = random_theorem1_model(seed);
    REQUIRE(validate_model(model).empty());
    CHECK(is_eigenpreparation_supported(model));
    for (const auto& prep : {"P1", "P2"}) {
      const PtmTable table = induced_table(model, prep, "T");
      REQUIRE(theorem1_premises_hold(table, 1e-12));
      CHECK(gap(table) <= 1e-9);
    }
  }
}

}  // TEST_SUITE
