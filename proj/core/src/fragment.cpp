#include "macroreal/fragment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace macroreal {

Complex inner(const CVector& bra, const CVector& ket) {
  if (bra.size() != ket.size()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < bra.size(); ++i) {
    sum += std::conj(bra[i]) * ket[i];
  }
  return sum;
}

double squared_norm(const CVector& v) {
  double sum = 0.0;
  for (const Complex& c : v) sum += std::norm(c);
  return sum;
}

double born_probability(const CVector& state, const CVector& basis_vector) {
  const double p = std::norm(inner(basis_vector, state));
  return std::clamp(p, 0.0, 1.0);
}

CVector apply_unitary(const CMatrix& u, const CVector& state) {
  if (u.size() != state.size()) {
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  }
  CVector out(state.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].size() != state.size()) {
      throw std::invalid_argument("apply_unitary: matrix is not square");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < state.size(); ++j) acc += u[i][j] * state[j];
    out[i] = acc;
  }
  return out;
}

namespace {

CVector real_vec(double a, double b, double c) {
  return {Complex{a, 0.0}, Complex{b, 0.0}, Complex{c, 0.0}};
}

// Bases shared by both paper fragments: Q standard, A the fixed real triple.
void shared_bases(QuantumFragment& frag) {
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const double r6 = std::sqrt(6.0);
  frag.dim = 3;
  frag.q_basis = {real_vec(1, 0, 0), real_vec(0, 1, 0), real_vec(0, 0, 1)};
  frag.a_basis = {real_vec(2 / r6, 1 / r6, -1 / r6),
                  real_vec(0, 1 / r2, 1 / r2),
                  real_vec(-1 / r3, 1 / r3, -1 / r3)};
  frag.eigenprep_index = 0;
}

}  // namespace

QuantumFragment paper_fragment_theorem1() {
  QuantumFragment frag;
  shared_bases(frag);
  const double h = std::sqrt(2.0) / 2.0;
  const double r10 = std::sqrt(10.0);
  frag.unitary = {real_vec(h, h, 0), real_vec(h, -h, 0), real_vec(0, 0, 1)};
  frag.psi = real_vec(1 / r10, 1 / r10, 2 * std::sqrt(2.0) / r10);
  return frag;
}

QuantumFragment paper_fragment_theorem2() {
  QuantumFragment frag;
  shared_bases(frag);
  const double h = std::sqrt(2.0) / 2.0;
  const double r3 = std::sqrt(3.0);
  frag.unitary = {real_vec(h, -h, 0), real_vec(h, h, 0), real_vec(0, 0, 1)};
  frag.psi = real_vec((1 + r3) / 4, (1 - r3) / 4, 2 * std::sqrt(2.0) / 4);
  return frag;
}

namespace {

void check_basis(const std::vector<CVector>& basis, std::size_t dim,
                 const std::string& name, double tol,
                 std::vector<Violation>& report) {
  if (basis.size() != dim) {
    report.push_back({name + ": expected " + std::to_string(dim) + " vectors", 0.0});
    return;
  }
  for (const CVector& v : basis) {
    if (v.size() != dim) {
      report.push_back({name + ": vector of wrong dimension", 0.0});
      return;
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(std::abs(inner(basis[i], basis[j])) - expect));
    }
  }
  if (worst > tol) {
    report.push_back({name + ": not orthonormal", worst});
  }
}

}  // namespace

std::vector<Violation> validate_fragment(const QuantumFragment& frag, double tol) {
  std::vector<Violation> report;
  if (frag.dim == 0) {
    report.push_back({"dim: must be positive", 0.0});
    return report;
  }
  check_basis(frag.q_basis, frag.dim, "q_basis", tol, report);
  check_basis(frag.a_basis, frag.dim, "a_basis", tol, report);

  if (frag.unitary.size() != frag.dim ||
      std::any_of(frag.unitary.begin(), frag.unitary.end(),
                  [&](const CVector& row) { return row.size() != frag.dim; })) {
    report.push_back({"unitary: wrong shape", 0.0});
  } else {
    // U^dagger U == I entrywise
    double worst = 0.0;
    for (std::size_t i = 0; i < frag.dim; ++i) {
      for (std::size_t j = 0; j < frag.dim; ++j) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < frag.dim; ++k) {
          acc += std::conj(frag.unitary[k][i]) * frag.unitary[k][j];
        }
        const double expect = (i == j) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(acc - Complex{expect, 0.0}));
      }
    }
    if (worst > tol) {
      report.push_back({"unitary: U^dagger U deviates from identity", worst});
    }
  }

  if (frag.psi.size() != frag.dim) {
    report.push_back({"psi: wrong dimension", 0.0});
  } else {
    const double defect = std::abs(squared_norm(frag.psi) - 1.0);
    if (defect > tol) {
      report.push_back({"psi: squared norm deviates from 1", defect});
    }
  }

  if (frag.eigenprep_index >= frag.dim) {
    report.push_back({"eigenprep_index: out of range", 0.0});
  }
  return report;
}

PtmTable fragment_to_ptm(const QuantumFragment& frag, bool include_all_eigenpreps) {
  const auto violations = validate_fragment(frag, 1e-10);
  if (!violations.empty()) {
    throw std::invalid_argument("fragment_to_ptm: invalid fragment: " +
                                violations.front().what);
  }

  PtmTable table;
  std::vector<std::string> q_out, a_out;
  for (std::size_t i = 0; i < frag.dim; ++i) {
    q_out.push_back("q" + std::to_string(i + 1));
    a_out.push_back("a" + std::to_string(i + 1));
  }
  table.outcomes[kMeasQ] = q_out;
  table.outcomes[kMeasA] = a_out;

  const auto add_rows = [&](const std::string& prep_label, const CVector& state) {
    std::vector<double> q_row(frag.dim), a_row(frag.dim);
    for (std::size_t i = 0; i < frag.dim; ++i) {
      q_row[i] = born_probability(state, frag.q_basis[i]);
      a_row[i] = born_probability(state, frag.a_basis[i]);
    }
    table.rows[kMeasQ][prep_label] = q_row;
    table.rows[kMeasA][prep_label] = a_row;
  };

  add_rows(kPrepP, frag.psi);
  add_rows(kPrepTP, apply_unitary(frag.unitary, frag.psi));

  const CVector& eigen = frag.q_basis[frag.eigenprep_index];
  add_rows(kPrepPq1, eigen);
  add_rows(kPrepTPq1, apply_unitary(frag.unitary, eigen));

  if (include_all_eigenpreps) {
    for (std::size_t i = 0; i < frag.dim; ++i) {
      const std::string label = "P_q" + std::to_string(i + 1);
      add_rows(label, frag.q_basis[i]);
      add_rows("T(" + label + ")", apply_unitary(frag.unitary, frag.q_basis[i]));
    }
  }
  return table;
}

}  // namespace macroreal
