#ifndef MACROREAL_SUPPORT_HPP
#define MACROREAL_SUPPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "macroreal/ontic.hpp"
#include "macroreal/overlap.hpp"

namespace macroreal {

struct AbPair {
  double alpha = 0.0;  // in [0, inf)
  double beta = 0.0;   // in [0, 1]
};

// Whether the supremum over Pi_q ranges over the convex hull of the
// generators (the default) or only over the generators themselves.
enum class SupMode { convex_hull, vertices_only };

// max over f in hull{eigen_generators} of omega(f_P, alpha * f). Solved as a
// linear program; a single generator short-circuits to symmetric_overlap.
// Throws std::invalid_argument on an empty generator list.
double sup_overlap(const Density& f_P, const std::vector<Density>& eigen_generators,
                   double alpha, SupMode mode = SupMode::convex_hull);

// max over f_P in Pi_prep of max(0, P(q|Q,prep) - sup_overlap(f_P, Pi_q, alpha)),
// clamped to [0,1]. An outcome without eigen densities contributes sup = 0.
double beta_min(const OnticModel& model, const std::string& prep,
                const std::string& q, double alpha);

struct SupportVerdict {
  double alpha = 0.0;
  double beta = 0.0;
  bool supported = false;
  // worst witness over (preparation, outcome) pairs
  std::string witness_prep;
  std::string witness_q;
  double witness_beta_min = 0.0;
};

// beta >= beta_min for every preparation (eigenpreparations included) and
// every Q-outcome.
SupportVerdict ab_support_verdict(const OnticModel& model, double alpha, double beta);
bool is_ab_supported(const OnticModel& model, double alpha, double beta);

// Pointwise sup_overlap along the grid; for multi-density preparations the
// worst (smallest) value over Pi_prep, matching beta_min's quantifier.
std::vector<std::pair<double, double>> model_support_curve(
    const OnticModel& model, const std::string& prep, const std::string& q,
    const std::vector<double>& alpha_grid);

// supp f_P inside the union of eigen supports, for every preparation density.
bool is_eigenpreparation_supported(const OnticModel& model);

}  // namespace macroreal

#endif
