#ifndef MACROREAL_OVERLAP_HPP
#define MACROREAL_OVERLAP_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "macroreal/ontic.hpp"

namespace macroreal {

// sum_l min(f_l, g_l). Inputs are nonnegative vectors; normalization is not
// required (the second argument is typically alpha * f_q).
double symmetric_overlap(const std::vector<double>& f, const std::vector<double>& g);

std::vector<double> scaled(const std::vector<double>& f, double factor);

// f_mu-mass of supp(f_nu), support meaning strict positivity.
double asymmetric_overlap(const Density& f_nu, const Density& f_mu);

// The three expressions of the overlap/total-variation identity, which agree
// for normalized densities: omega(f,g), 1 - sum max(f-g,0), 1 - L1/2.
struct TvIdentity {
  double omega = 0.0;
  double one_minus_sup = 0.0;
  double one_minus_half_l1 = 0.0;
};
TvIdentity total_variation_identity_check(const Density& f, const Density& g);

// Exact piecewise-linear representation of alpha -> omega(f_P, alpha f_q).
// Breakpoints sit at the distinct positive ratios f_P(l)/f_q(l); the curve is
// linear between them, concave and nondecreasing, and constant at `asymptote`
// past the last breakpoint. unreachable_mass is the f_P mass on states with
// f_q == 0, i.e. total f_P mass minus the asymptote.
struct SupportCurve {
  std::vector<std::pair<double, double>> breakpoints;  // (alpha, value), first is (0,0)
  double asymptote = 0.0;
  double unreachable_mass = 0.0;
};

SupportCurve support_curve(const Density& f_P, const Density& f_q);

// Piecewise-linear evaluation; equals symmetric_overlap(f_P, alpha*f_q) of
// the generating pair within 1e-12. Throws std::invalid_argument for
// alpha < 0.
double curve_eval(const SupportCurve& curve, double alpha);

// Header `alpha,omega`, breakpoints in order, then one row at twice the last
// breakpoint alpha carrying the asymptote.
void write_curve_csv(std::ostream& out, const SupportCurve& curve);

}  // namespace macroreal

#endif
