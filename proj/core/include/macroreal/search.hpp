#ifndef MACROREAL_SEARCH_HPP
#define MACROREAL_SEARCH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "macroreal/fragment.hpp"

namespace macroreal {

// Six angles decoding to a real qutrit fragment whose three premise
// probabilities vanish by construction:
//   [0] t     first column of U is (cos t, sin t, 0), so T(P_q1) stays off q3
//   [1] s     completes U to a rotation within the orthogonal complement
//   [2] u     a2 = (0, cos u, sin u), orthogonal to q1
//   [3] v     picks a3 on the circle orthogonal to a2 when the generic
//             solution a3 ~ a2 x (U q1) degenerates (a2 parallel to U q1);
//             inert otherwise
//   [4] th    psi = (cos th, sin th cos ph, sin th sin ph)
//   [5] ph
struct FragmentParams {
  std::array<double, 6> angles{};
};

QuantumFragment decode(const FragmentParams& params);

// gap of the decoded fragment's table.
double objective(const FragmentParams& params);

// Angles that decode to the second paper fragment (up to basis-vector signs,
// which probabilities ignore).
FragmentParams fragment2_params();

struct SearchResult {
  FragmentParams best_params;
  double best_value = 0.0;
  std::vector<double> per_restart_values;
};

// Multi-restart Nelder-Mead, restart starting points from a Halton sequence
// offset by the seed. Restarts run concurrently; the merge by maximum (ties
// to the lowest restart index) makes the result independent of scheduling.
SearchResult maximize_gap(int restarts, std::uint64_t seed);

// Single run from an explicit start (no restarts).
SearchResult maximize_gap_from(const FragmentParams& start);

// Exhaustive objective evaluation on a uniform angle grid; a coarse
// lower-bound oracle for the optimizer. The grid skips the inert angle v and
// halves the psi polar range using the global sign symmetry.
double grid_floor_check(int resolution);

}  // namespace macroreal

#endif
