#include "macroreal/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace macroreal {

double symmetric_overlap(const std::vector<double>& f, const std::vector<double>& g) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("symmetric_overlap: length mismatch");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < f.size(); ++l) sum += std::min(f[l], g[l]);
  return sum;
}

std::vector<double> scaled(const std::vector<double>& f, double factor) {
  std::vector<double> out(f.size());
  for (std::size_t l = 0; l < f.size(); ++l) out[l] = factor * f[l];
  return out;
}

double asymmetric_overlap(const Density& f_nu, const Density& f_mu) {
  if (f_nu.mass.size() != f_mu.mass.size()) {
    throw std::invalid_argument("asymmetric_overlap: length mismatch");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < f_nu.mass.size(); ++l) {
    if (f_nu.mass[l] > 0.0) sum += f_mu.mass[l];
  }
  return sum;
}

TvIdentity total_variation_identity_check(const Density& f, const Density& g) {
  if (f.mass.size() != g.mass.size()) {
    throw std::invalid_argument("total_variation_identity_check: length mismatch");
  }
  TvIdentity out;
  out.omega = symmetric_overlap(f.mass, g.mass);
  double positive_part = 0.0;  // sup over subsets is attained on {f > g}
  double l1 = 0.0;
  for (std::size_t l = 0; l < f.mass.size(); ++l) {
    const double d = f.mass[l] - g.mass[l];
    if (d > 0.0) positive_part += d;
    l1 += std::abs(d);
  }
  out.one_minus_sup = 1.0 - positive_part;
  out.one_minus_half_l1 = 1.0 - 0.5 * l1;
  return out;
}

SupportCurve support_curve(const Density& f_P, const Density& f_q) {
  if (f_P.mass.size() != f_q.mass.size()) {
    throw std::invalid_argument("support_curve: length mismatch");
  }
  SupportCurve curve;
  curve.breakpoints.emplace_back(0.0, 0.0);
  curve.asymptote = asymmetric_overlap(f_q, f_P);

  double total = 0.0;
  for (double x : f_P.mass) total += x;
  curve.unreachable_mass = total - curve.asymptote;

  // candidate kink positions: positive ratios f_P/f_q where f_q > 0
  std::vector<double> ratios;
  for (std::size_t l = 0; l < f_q.mass.size(); ++l) {
    if (f_q.mass[l] > 0.0 && f_P.mass[l] > 0.0) {
      ratios.push_back(f_P.mass[l] / f_q.mass[l]);
    }
  }
  if (ratios.empty()) {
    // omega(f_P, alpha f_q) == 0 for all alpha
    return curve;
  }
  std::sort(ratios.begin(), ratios.end());
  ratios.erase(std::unique(ratios.begin(), ratios.end(),
                           [](double a, double b) { return b - a <= 1e-14; }),
               ratios.end());

  const auto value_at = [&](double alpha) {
    double sum = 0.0;
    for (std::size_t l = 0; l < f_q.mass.size(); ++l) {
      sum += std::min(f_P.mass[l], alpha * f_q.mass[l]);
    }
    return sum;
  };
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double value =
        (i + 1 == ratios.size()) ? curve.asymptote : value_at(ratios[i]);
    curve.breakpoints.emplace_back(ratios[i], value);
  }
  return curve;
}

double curve_eval(const SupportCurve& curve, double alpha) {
  if (alpha < 0.0) {
    throw std::invalid_argument("curve_eval: alpha must be nonnegative");
  }
  const auto& bp = curve.breakpoints;
  if (bp.empty() || alpha >= bp.back().first) return curve.asymptote;
  // first breakpoint with alpha_i > alpha
  auto it = std::upper_bound(bp.begin(), bp.end(), alpha,
                             [](double a, const std::pair<double, double>& b) {
                               return a < b.first;
                             });
  if (it == bp.begin()) return bp.front().second;
  const auto& [x1, y1] = *(it - 1);
  const auto& [x2, y2] = *it;
  const double t = (alpha - x1) / (x2 - x1);
  return y1 + t * (y2 - y1);
}

void write_curve_csv(std::ostream& out, const SupportCurve& curve) {
  char buf[64];
  out << "alpha,omega\n";
  for (const auto& [alpha, value] : curve.breakpoints) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", alpha, value);
    out << buf;
  }
  const double last = curve.breakpoints.empty() ? 1.0 : curve.breakpoints.back().first;
  const double tail = (last > 0.0) ? 2.0 * last : 1.0;
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", tail, curve.asymptote);
  out << buf;
}

}  // namespace macroreal
