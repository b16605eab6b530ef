#ifndef MACROREAL_BOUNDS_HPP
#define MACROREAL_BOUNDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "macroreal/ontic.hpp"
#include "macroreal/overlap.hpp"
#include "macroreal/ptm_table.hpp"

namespace macroreal {

// Relative frequencies estimating the six probabilities the exclusion
// machinery consumes.
struct ExperimentFrequencies {
  double fQ1_P = 0.0;    // f^Q_1(P)
  double fQ2_TP = 0.0;   // f^Q_2(T(P))
  double fA1_TP = 0.0;   // f^A_1(T(P))
  double fA2_Pq1 = 0.0;  // f^A_2(P_q1)
  double fA3_TPq1 = 0.0; // f^A_3(T(P_q1))
  double fQ3_TPq1 = 0.0; // f^Q_3(T(P_q1))
};

// E(alpha) = intercept + slope * alpha; `target` is f^Q_1(P). A support curve
// crossing above the line rules the model out.
struct ExclusionLine {
  double intercept = 0.0;
  double slope = 0.0;
  double target = 0.0;

  double operator()(double alpha) const { return intercept + slope * alpha; }
};

// P(a2|A,P_q1) + P(a3|A,T,P_q1) + P(q3|Q,T,P_q1).
double premise_sum(const PtmTable& table);

// All three premise probabilities <= tol.
bool theorem1_premises_hold(const PtmTable& table, double tol);

// P(q1|Q,P) - P(q2|Q,T,P) - P(a1|A,T,P).
double gap(const PtmTable& table);

// alpha * premise_sum + beta.
double theorem2_rhs(const PtmTable& table, double alpha, double beta);

// gap > rhs: no ontic model in which P is (alpha,beta)-supported on the q1
// cell can reproduce this table.
bool theorem2_violated(const PtmTable& table, double alpha, double beta);

// Reads the six frequencies off an exact table (Born values as frequencies).
ExperimentFrequencies frequencies_from_table(const PtmTable& table);

// Worst-case scenario: every frequency moved by eps in the direction that
// hurts exclusion most (target down, the other five up), clamped to [0,1].
ExperimentFrequencies perturb_worst_case(const ExperimentFrequencies& freqs, double eps);

ExclusionLine exclusion_line(const ExperimentFrequencies& freqs);

// Boundary of the excluded region: max(0, target - intercept - slope*alpha).
// Every (alpha, beta) with beta < beta_bound(alpha) is ruled out.
double beta_bound(const ExclusionLine& line, double alpha);

// Header `alpha,beta_bound`.
void write_region_csv(std::ostream& out, const ExclusionLine& line,
                      const std::vector<double>& alpha_grid);

struct ExclusionVerdict {
  bool ruled_out = false;
  std::optional<double> witness_alpha;  // smallest breakpoint/grid alpha crossing
};

// Exact: compares the piecewise-linear curve against the affine line at the
// breakpoints (lines are affine between them, so breakpoints decide).
ExclusionVerdict ruled_out(const SupportCurve& curve, const ExclusionLine& line);
// Grid-sampled variant for model_support_curve output.
ExclusionVerdict ruled_out(const std::vector<std::pair<double, double>>& samples,
                           const ExclusionLine& line);

// Eigenpreparation-mixing exclusion: E(target) < target, evaluated literally
// as intercept + target * slope < target.
bool em_ruled_out(const ExperimentFrequencies& freqs);

// Smallest positive root of the worst-case quadratic
//   3 e^2 - (3 + 3 P(q1|Q,P) - premise_sum) e + (gap - P(q1|Q,P)*premise_sum) = 0,
// i.e. the largest uniform frequency deviation that still allows excluding
// eigenpreparation-mixing models. epsilon = 0 when no positive margin exists.
struct EpsilonResult {
  double epsilon = 0.0;
  double quad_a = 0.0, quad_b = 0.0, quad_c = 0.0;
  double residual = 0.0;  // |quadratic(epsilon)|, 0 at an exact root
};
EpsilonResult worst_case_epsilon(const PtmTable& table);
// Same quadratic fed from measured frequencies instead of an exact table.
EpsilonResult worst_case_epsilon(const ExperimentFrequencies& freqs);

struct MixtureVerdict {
  bool feasible = false;
  std::vector<double> weights;  // convex weights when feasible
  double max_deviation = 0.0;   // LP optimum: smallest achievable sup-norm gap
};

// Can rows[.][prep] be written as a convex combination of the eigenprep rows
// across every measurement in the table, within tol? Solved as an LP
// minimizing the sup-norm deviation over the weight simplex.
MixtureVerdict mixture_feasible(const PtmTable& table, const std::string& prep,
                                const std::vector<std::string>& eigenpreps,
                                double tol = 1e-9);

// Appendix lemma: for g: states -> [0,1] and (alpha,beta) under which `prep`
// is (alpha,beta)-supported on the q cell,
//   sum_{cell} g f_P  <=  alpha * max_generators sum_{cell} g f_q + beta
// for every f_P in Pi_prep (linear objective, so the hull optimum sits at a
// vertex). Returns whether it holds within 1e-10; throws std::invalid_argument
// when the support precondition or the range of g fails.
bool lemma1_check(const OnticModel& model, const std::string& prep,
                  const std::string& q, const std::vector<double>& g,
                  double alpha, double beta);

}  // namespace macroreal

#endif
