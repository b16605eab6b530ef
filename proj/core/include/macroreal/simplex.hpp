#ifndef MACROREAL_SIMPLEX_HPP
#define MACROREAL_SIMPLEX_HPP

#include <vector>

namespace macroreal::lp {

// maximize objective . x  subject to  rows[i] . x (<= | ==) rhs[i],  x >= 0
struct Problem {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<bool> is_equality;  // one flag per row; false means <=
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// Dense two-phase simplex with Bland's rule. Problem sizes in this project
// stay around a hundred rows, so no sparsity or revised form.
Solution solve(const Problem& problem);

}  // namespace macroreal::lp

#endif
