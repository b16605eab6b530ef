#include "macroreal/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "macroreal/simplex.hpp"
#include "macroreal/support.hpp"

namespace macroreal {

double premise_sum(const PtmTable& table) {
  return table.probability(kMeasA, kPrepPq1, "a2") +
         table.probability(kMeasA, kPrepTPq1, "a3") +
         table.probability(kMeasQ, kPrepTPq1, "q3");
}

bool theorem1_premises_hold(const PtmTable& table, double tol) {
  return table.probability(kMeasA, kPrepPq1, "a2") <= tol &&
         table.probability(kMeasA, kPrepTPq1, "a3") <= tol &&
         table.probability(kMeasQ, kPrepTPq1, "q3") <= tol;
}

double gap(const PtmTable& table) {
  return table.probability(kMeasQ, kPrepP, "q1") -
         table.probability(kMeasQ, kPrepTP, "q2") -
         table.probability(kMeasA, kPrepTP, "a1");
}

double theorem2_rhs(const PtmTable& table, double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0 || beta > 1.0) {
    throw std::invalid_argument("theorem2_rhs: (alpha,beta) out of range");
  }
  return alpha * premise_sum(table) + beta;
}

bool theorem2_violated(const PtmTable& table, double alpha, double beta) {
  return gap(table) > theorem2_rhs(table, alpha, beta);
}

ExperimentFrequencies frequencies_from_table(const PtmTable& table) {
  ExperimentFrequencies f;
  f.fQ1_P = table.probability(kMeasQ, kPrepP, "q1");
  f.fQ2_TP = table.probability(kMeasQ, kPrepTP, "q2");
  f.fA1_TP = table.probability(kMeasA, kPrepTP, "a1");
  f.fA2_Pq1 = table.probability(kMeasA, kPrepPq1, "a2");
  f.fA3_TPq1 = table.probability(kMeasA, kPrepTPq1, "a3");
  f.fQ3_TPq1 = table.probability(kMeasQ, kPrepTPq1, "q3");
  return f;
}

ExperimentFrequencies perturb_worst_case(const ExperimentFrequencies& freqs, double eps) {
  const auto up = [eps](double x) { return std::min(1.0, x + eps); };
  ExperimentFrequencies out;
  out.fQ1_P = std::max(0.0, freqs.fQ1_P - eps);
  out.fQ2_TP = up(freqs.fQ2_TP);
  out.fA1_TP = up(freqs.fA1_TP);
  out.fA2_Pq1 = up(freqs.fA2_Pq1);
  out.fA3_TPq1 = up(freqs.fA3_TPq1);
  out.fQ3_TPq1 = up(freqs.fQ3_TPq1);
  return out;
}

ExclusionLine exclusion_line(const ExperimentFrequencies& freqs) {
  ExclusionLine line;
  line.intercept = freqs.fQ2_TP + freqs.fA1_TP;
  line.slope = freqs.fA2_Pq1 + freqs.fA3_TPq1 + freqs.fQ3_TPq1;
  line.target = freqs.fQ1_P;
  return line;
}

double beta_bound(const ExclusionLine& line, double alpha) {
  return std::max(0.0, line.target - line.intercept - line.slope * alpha);
}

void write_region_csv(std::ostream& out, const ExclusionLine& line,
                      const std::vector<double>& alpha_grid) {
  char buf[64];
  out << "alpha,beta_bound\n";
  for (double alpha : alpha_grid) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", alpha, beta_bound(line, alpha));
    out << buf;
  }
}

namespace {

constexpr double kCrossMargin = 1e-12;

ExclusionVerdict verdict_from_points(
    const std::vector<std::pair<double, double>>& points, const ExclusionLine& line) {
  ExclusionVerdict v;
  for (const auto& [alpha, value] : points) {
    if (value > line(alpha) + kCrossMargin) {
      v.ruled_out = true;
      v.witness_alpha = alpha;
      break;
    }
  }
  return v;
}

}  // namespace

ExclusionVerdict ruled_out(const SupportCurve& curve, const ExclusionLine& line) {
  // Curve and line are both affine between breakpoints and the curve is
  // constant past the last one while the line is nondecreasing, so checking
  // the breakpoints decides the crossing exactly.
  return verdict_from_points(curve.breakpoints, line);
}

ExclusionVerdict ruled_out(const std::vector<std::pair<double, double>>& samples,
                           const ExclusionLine& line) {
  return verdict_from_points(samples, line);
}

bool em_ruled_out(const ExperimentFrequencies& freqs) {
  const ExclusionLine line = exclusion_line(freqs);
  return line.intercept + line.target * line.slope < line.target;
}

namespace {

// Worst case: every small frequency shifted up by eps, the large one down.
// E(target) < target with the shifted values rearranges to
//   3 e^2 - (3 + 3 p - s) e + (g - p s) > 0,
// p = P(q1|Q,P), s = premise sum, g = gap.
EpsilonResult epsilon_from_quadratic(double p, double s, double g) {
  EpsilonResult res;
  res.quad_a = 3.0;
  res.quad_b = -(3.0 + 3.0 * p - s);
  res.quad_c = g - p * s;
  if (res.quad_c <= 0.0) {
    // no margin at eps = 0
    res.epsilon = 0.0;
    res.residual = 0.0;
    return res;
  }
  const double disc = res.quad_b * res.quad_b - 4.0 * res.quad_a * res.quad_c;
  if (disc < 0.0) {
    // cannot happen for probability tables with quad_c > 0; guard anyway
    res.epsilon = 0.0;
    res.residual = 0.0;
    return res;
  }
  res.epsilon = (-res.quad_b - std::sqrt(disc)) / (2.0 * res.quad_a);
  res.residual = std::abs(res.quad_a * res.epsilon * res.epsilon +
                          res.quad_b * res.epsilon + res.quad_c);
  return res;
}

}  // namespace

EpsilonResult worst_case_epsilon(const PtmTable& table) {
  return epsilon_from_quadratic(table.probability(kMeasQ, kPrepP, "q1"),
                                premise_sum(table), gap(table));
}

EpsilonResult worst_case_epsilon(const ExperimentFrequencies& freqs) {
  const ExclusionLine line = exclusion_line(freqs);
  return epsilon_from_quadratic(line.target, line.slope, line.target - line.intercept);
}

MixtureVerdict mixture_feasible(const PtmTable& table, const std::string& prep,
                                const std::vector<std::string>& eigenpreps,
                                double tol) {
  if (eigenpreps.empty()) {
    throw std::invalid_argument("mixture_feasible: empty eigenpreparation list");
  }
  const std::size_t k = eigenpreps.size();

  // variables: weights w_1..w_k, deviation t; minimize t (maximize -t)
  lp::Problem prob;
  prob.objective.assign(k + 1, 0.0);
  prob.objective[k] = -1.0;

  for (const auto& [meas, by_prep] : table.rows) {
    const auto target_it = by_prep.find(prep);
    if (target_it == by_prep.end()) {
      throw std::out_of_range("mixture_feasible: no row for '" + prep +
                              "' under measurement '" + meas + "'");
    }
    for (const std::string& ep : eigenpreps) {
      if (!by_prep.count(ep)) {
        throw std::out_of_range("mixture_feasible: no row for '" + ep +
                                "' under measurement '" + meas + "'");
      }
    }
    const auto& target = target_it->second;
    for (std::size_t m = 0; m < target.size(); ++m) {
      std::vector<double> row(k + 1, 0.0);
      for (std::size_t i = 0; i < k; ++i) row[i] = by_prep.at(eigenpreps[i])[m];
      // sum_i w_i P_i(m) - t <= P(m)  and  -sum_i w_i P_i(m) - t <= -P(m)
      row[k] = -1.0;
      prob.rows.push_back(row);
      prob.rhs.push_back(target[m]);
      prob.is_equality.push_back(false);

      for (std::size_t i = 0; i < k; ++i) row[i] = -row[i];
      prob.rows.push_back(row);
      prob.rhs.push_back(-target[m]);
      prob.is_equality.push_back(false);
    }
  }
  std::vector<double> simplex_row(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) simplex_row[i] = 1.0;
  prob.rows.push_back(simplex_row);
  prob.rhs.push_back(1.0);
  prob.is_equality.push_back(true);

  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) {
    throw std::runtime_error("mixture_feasible: LP did not reach an optimum");
  }
  MixtureVerdict verdict;
  verdict.max_deviation = sol.x[k];
  verdict.feasible = verdict.max_deviation <= tol;
  if (verdict.feasible) {
    verdict.weights.assign(sol.x.begin(), sol.x.begin() + k);
  }
  return verdict;
}

bool lemma1_check(const OnticModel& model, const std::string& prep,
                  const std::string& q, const std::vector<double>& g,
                  double alpha, double beta) {
  if (g.size() != model.space.size) {
    throw std::invalid_argument("lemma1_check: g has wrong length");
  }
  for (double x : g) {
    if (x < 0.0 || x > 1.0) {
      throw std::invalid_argument("lemma1_check: g must map into [0,1]");
    }
  }
  const double bm = beta_min(model, prep, q, alpha);
  if (beta + 1e-12 < bm) {
    throw std::invalid_argument(
        "lemma1_check: preparation is not (alpha,beta)-supported on the cell "
        "(beta_min = " + std::to_string(bm) + ")");
  }

  const auto cell = model.space.partition_indicator(q);
  const auto cell_sum = [&](const Density& f) {
    double sum = 0.0;
    for (std::size_t l : cell) sum += g[l] * f.mass[l];
    return sum;
  };

  // linear objective: the hull supremum is attained at a generator
  double sup = 0.0;
  if (const auto it = model.eigen_densities.find(q); it != model.eigen_densities.end()) {
    for (const Density& f_q : it->second) sup = std::max(sup, cell_sum(f_q));
  }
  const double rhs = alpha * sup + beta;

  for (const Density& f_P : prep_generators(model, prep)) {
    if (cell_sum(f_P) > rhs + 1e-10) return false;
  }
  return true;
}

}  // namespace macroreal
