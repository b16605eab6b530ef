#include "macroreal/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "macroreal/simplex.hpp"

namespace macroreal {

double sup_overlap(const Density& f_P, const std::vector<Density>& eigen_generators,
                   double alpha, SupMode mode) {
  if (eigen_generators.empty()) {
    throw std::invalid_argument("sup_overlap: empty generator list");
  }
  if (alpha < 0.0) {
    throw std::invalid_argument("sup_overlap: alpha must be nonnegative");
  }
  if (eigen_generators.size() == 1 || mode == SupMode::vertices_only) {
    double best = 0.0;
    for (const Density& f_q : eigen_generators) {
      best = std::max(best, symmetric_overlap(f_P.mass, scaled(f_q.mass, alpha)));
    }
    return best;
  }

  // maximize sum_l m_l  s.t.  m_l <= f_P(l),  m_l - alpha sum_i c_i f_i(l) <= 0,
  //                           sum_i c_i = 1,  m, c >= 0
  const std::size_t n = f_P.mass.size();
  const std::size_t k = eigen_generators.size();
  for (const Density& f_q : eigen_generators) {
    if (f_q.mass.size() != n) {
      throw std::invalid_argument("sup_overlap: generator length mismatch");
    }
  }

  lp::Problem prob;
  prob.objective.assign(n + k, 0.0);
  for (std::size_t l = 0; l < n; ++l) prob.objective[l] = 1.0;

  for (std::size_t l = 0; l < n; ++l) {
    std::vector<double> row(n + k, 0.0);
    row[l] = 1.0;
    prob.rows.push_back(row);
    prob.rhs.push_back(f_P.mass[l]);
    prob.is_equality.push_back(false);
  }
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<double> row(n + k, 0.0);
    row[l] = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      row[n + i] = -alpha * eigen_generators[i].mass[l];
    }
    prob.rows.push_back(row);
    prob.rhs.push_back(0.0);
    prob.is_equality.push_back(false);
  }
  std::vector<double> simplex_row(n + k, 0.0);
  for (std::size_t i = 0; i < k; ++i) simplex_row[n + i] = 1.0;
  prob.rows.push_back(simplex_row);
  prob.rhs.push_back(1.0);
  prob.is_equality.push_back(true);

  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) {
    throw std::runtime_error("sup_overlap: LP did not reach an optimum");
  }
  return sol.value;
}

double beta_min(const OnticModel& model, const std::string& prep,
                const std::string& q, double alpha) {
  const double p_q = model_probability(model, prep, {}, kMeasQ, q);
  const auto eigen_it = model.eigen_densities.find(q);

  double worst = 0.0;
  for (const Density& f_P : prep_generators(model, prep)) {
    double sup = 0.0;
    if (eigen_it != model.eigen_densities.end() && !eigen_it->second.empty()) {
      sup = sup_overlap(f_P, eigen_it->second, alpha);
    }
    worst = std::max(worst, p_q - sup);
  }
  return std::clamp(worst, 0.0, 1.0);
}

SupportVerdict ab_support_verdict(const OnticModel& model, double alpha, double beta) {
  SupportVerdict verdict;
  verdict.alpha = alpha;
  verdict.beta = beta;
  verdict.supported = true;
  verdict.witness_beta_min = -1.0;

  std::vector<std::string> preps;
  for (const auto& [label, densities] : model.prep_densities) preps.push_back(label);
  for (const auto& [q, generators] : model.eigen_densities) preps.push_back("P_" + q);

  for (const std::string& prep : preps) {
    for (const std::string& q : model.space.outcomes) {
      const double bm = beta_min(model, prep, q, alpha);
      if (bm > verdict.witness_beta_min) {
        verdict.witness_beta_min = bm;
        verdict.witness_prep = prep;
        verdict.witness_q = q;
      }
    }
  }
  if (verdict.witness_beta_min > beta) verdict.supported = false;
  return verdict;
}

bool is_ab_supported(const OnticModel& model, double alpha, double beta) {
  return ab_support_verdict(model, alpha, beta).supported;
}

std::vector<std::pair<double, double>> model_support_curve(
    const OnticModel& model, const std::string& prep, const std::string& q,
    const std::vector<double>& alpha_grid) {
  const auto eigen_it = model.eigen_densities.find(q);
  const auto& densities = prep_generators(model, prep);

  std::vector<std::pair<double, double>> points;
  points.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    double value = std::numeric_limits<double>::infinity();
    for (const Density& f_P : densities) {
      double sup = 0.0;
      if (eigen_it != model.eigen_densities.end() && !eigen_it->second.empty()) {
        sup = sup_overlap(f_P, eigen_it->second, alpha);
      }
      value = std::min(value, sup);
    }
    points.emplace_back(alpha, value);
  }
  return points;
}

bool is_eigenpreparation_supported(const OnticModel& model) {
  const std::size_t n = model.space.size;
  std::vector<bool> covered(n, false);
  for (const auto& [q, generators] : model.eigen_densities) {
    for (const Density& f_q : generators) {
      for (std::size_t l = 0; l < n; ++l) {
        if (f_q.mass[l] > 0.0) covered[l] = true;
      }
    }
  }
  for (const auto& [label, densities] : model.prep_densities) {
    for (const Density& f_P : densities) {
      for (std::size_t l = 0; l < n; ++l) {
        if (f_P.mass[l] > 0.0 && !covered[l]) return false;
      }
    }
  }
  return true;
}

}  // namespace macroreal
