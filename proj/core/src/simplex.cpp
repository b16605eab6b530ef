#include "macroreal/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace macroreal::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// Tableau layout: columns [structural | slack | artificial | rhs], one row per
// constraint plus the objective row at the end (stored as negated reduced
// costs, maximization).
struct Tableau {
  std::size_t m = 0;       // constraints
  std::size_t cols = 0;    // total columns incl. rhs
  std::vector<std::vector<double>> t;
  std::vector<std::size_t> basis;  // basic column per row

  double& at(std::size_t r, std::size_t c) { return t[r][c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double pv = t[pr][pc];
    for (std::size_t c = 0; c < cols; ++c) t[pr][c] /= pv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr) continue;
      const double factor = t[r][pc];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) t[r][c] -= factor * t[pr][c];
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = lowest-index column with positive reduced
  // profit, leaving = lowest-index basic variable among the min ratios.
  // Returns false when optimal; throws on unboundedness.
  bool step(std::size_t usable_cols) {
    std::size_t pc = usable_cols;
    for (std::size_t c = 0; c < usable_cols; ++c) {
      if (t[m][c] > kPivotTol) {
        pc = c;
        break;
      }
    }
    if (pc == usable_cols) return false;

    std::size_t pr = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][pc] > kPivotTol) {
        const double ratio = t[r][cols - 1] / t[r][pc];
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (pr == m || basis[r] < basis[pr]))) {
          best_ratio = ratio;
          pr = r;
        }
      }
    }
    if (pr == m) {
      throw std::domain_error("simplex: unbounded");
    }
    pivot(pr, pc);
    return true;
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.objective.size();
  const std::size_t m = problem.rows.size();
  if (problem.rhs.size() != m || problem.is_equality.size() != m) {
    throw std::invalid_argument("simplex: inconsistent problem dimensions");
  }
  for (const auto& row : problem.rows) {
    if (row.size() != n) {
      throw std::invalid_argument("simplex: row length mismatch");
    }
  }

  // Count slack columns ("<=" rows) and artificial columns ("=" rows plus
  // rows whose sign-normalized form is ">=").
  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = problem.rhs[r] < 0.0;
    if (!problem.is_equality[r]) ++n_slack;
    if (problem.is_equality[r] || flip) ++n_art;
  }

  Tableau tab;
  tab.m = m;
  tab.cols = n + n_slack + n_art + 1;
  tab.t.assign(m + 1, std::vector<double>(tab.cols, 0.0));
  tab.basis.assign(m, 0);

  std::size_t slack_c = n;
  std::size_t art_c = n + n_slack;
  std::vector<std::size_t> art_cols;
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = problem.rhs[r] < 0.0;
    const double sign = flip ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = sign * problem.rows[r][c];
    tab.at(r, tab.cols - 1) = sign * problem.rhs[r];

    if (!problem.is_equality[r]) {
      // "<=" flipped by sign normalization becomes ">=": surplus gets -1
      tab.at(r, slack_c) = flip ? -1.0 : 1.0;
      if (!flip) tab.basis[r] = slack_c;
      ++slack_c;
    }
    if (problem.is_equality[r] || flip) {
      tab.at(r, art_c) = 1.0;
      tab.basis[r] = art_c;
      art_cols.push_back(art_c);
      ++art_c;
    }
  }

  // Phase 1: maximize -(sum of artificials).
  if (!art_cols.empty()) {
    for (std::size_t c : art_cols) tab.at(m, c) = -1.0;
    for (std::size_t r = 0; r < m; ++r) {
      // make reduced costs consistent with the artificial basis
      for (std::size_t c : art_cols) {
        if (tab.basis[r] == c) {
          for (std::size_t cc = 0; cc < tab.cols; ++cc) {
            tab.at(m, cc) += tab.t[r][cc];
          }
          break;
        }
      }
    }
    while (tab.step(tab.cols - 1)) {
    }
    // t[m][rhs] tracks the remaining artificial mass
    if (tab.at(m, tab.cols - 1) > kFeasTol) {
      Solution sol;
      sol.status = Status::infeasible;
      return sol;
    }
    // pivot remaining artificials out of the basis where possible
    for (std::size_t r = 0; r < m; ++r) {
      bool is_art = false;
      for (std::size_t c : art_cols) is_art |= (tab.basis[r] == c);
      if (!is_art) continue;
      for (std::size_t c = 0; c < n + n_slack; ++c) {
        if (std::abs(tab.t[r][c]) > kPivotTol) {
          tab.pivot(r, c);
          break;
        }
      }
    }
  }

  // Phase 2: rebuild the objective row for the real objective.
  for (std::size_t c = 0; c < tab.cols; ++c) tab.at(m, c) = 0.0;
  for (std::size_t c = 0; c < n; ++c) tab.at(m, c) = problem.objective[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = tab.basis[r];
    const double coeff = (bc < n) ? problem.objective[bc] : 0.0;
    if (coeff == 0.0) continue;
    for (std::size_t c = 0; c < tab.cols; ++c) {
      tab.at(m, c) -= coeff * tab.t[r][c];
    }
  }
  // artificial columns are never scanned in phase 2 (usable stops before them)
  const std::size_t usable = n + n_slack;

  Solution sol;
  try {
    while (tab.step(usable)) {
    }
  } catch (const std::domain_error&) {
    sol.status = Status::unbounded;
    return sol;
  }

  sol.status = Status::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) sol.x[tab.basis[r]] = tab.t[r][tab.cols - 1];
  }
  sol.value = 0.0;
  for (std::size_t c = 0; c < n; ++c) sol.value += problem.objective[c] * sol.x[c];
  return sol;
}

}  // namespace macroreal::lp
