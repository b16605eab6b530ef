#ifndef MACROREAL_FRAGMENT_HPP
#define MACROREAL_FRAGMENT_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "macroreal/ptm_table.hpp"
#include "macroreal/validation.hpp"

namespace macroreal {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using CMatrix = std::vector<CVector>;  // row-major, square

// <bra|ket>, conjugate-linear in the first argument.
Complex inner(const CVector& bra, const CVector& ket);

double squared_norm(const CVector& v);

// |<basis_vector|state>|^2, clamped to [0,1]. Throws std::invalid_argument on
// dimension mismatch.
double born_probability(const CVector& state, const CVector& basis_vector);

// u * state. Throws std::invalid_argument on dimension mismatch.
CVector apply_unitary(const CMatrix& u, const CVector& state);

// Finite fragment: macro-observable basis Q, second basis A, one unitary T,
// one preparation psi, and the index of the Q-basis vector that doubles as
// the eigenpreparation P_{q}.
struct QuantumFragment {
  std::size_t dim = 0;
  std::vector<CVector> q_basis;
  std::vector<CVector> a_basis;
  CMatrix unitary;
  CVector psi;
  std::size_t eigenprep_index = 0;
};

// The two concrete qutrit fragments the toolkit reproduces. Both share the
// same Q and A bases; they differ in a sign inside U and in psi.
QuantumFragment paper_fragment_theorem1();
QuantumFragment paper_fragment_theorem2();

// Empty report iff all fragment invariants (orthonormal bases, unitary U,
// normalized psi, index in range) hold within tol.
std::vector<Violation> validate_fragment(const QuantumFragment& frag, double tol);

// Born-rule probability table over M in {Q,A} and preparations
// {P, T(P), P_q1, T(P_q1)}. With include_all_eigenpreps, rows for every
// q-basis eigenpreparation P_q1..P_qn (and their transforms) are added,
// which the convex-mixture feasibility test needs.
// Throws std::invalid_argument if the fragment fails validation at 1e-10.
PtmTable fragment_to_ptm(const QuantumFragment& frag, bool include_all_eigenpreps = false);

}  // namespace macroreal

#endif
