#ifndef MACROREAL_ONTIC_HPP
#define MACROREAL_ONTIC_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "macroreal/ptm_table.hpp"
#include "macroreal/validation.hpp"

namespace macroreal {

// Finite ontic state space with the deterministic macro-observable
// assignment: q_value[lambda] is the Q-outcome of state lambda. The
// `outcomes` list declares the outcome labels; a declared outcome may own no
// states (its partition cell is then empty).
struct OnticSpace {
  std::size_t size = 0;
  std::vector<std::string> q_value;
  std::vector<std::string> outcomes;

  // {lambda : q_value[lambda] == q}, ascending. Throws std::out_of_range for
  // a label not in `outcomes`.
  std::vector<std::size_t> partition_indicator(const std::string& q) const;
};

// Probability mass per ontic state (counting background measure).
struct Density {
  std::vector<double> mass;
};

// Row-stochastic transition matrix: rows[lambda][lambda'] = gamma(lambda'|lambda).
struct MarkovKernel {
  std::vector<std::vector<double>> rows;
};

// rows[lambda][m] = xi(m|lambda), each row a distribution over `outcomes`.
struct ResponseFunction {
  std::vector<std::string> outcomes;
  std::vector<std::vector<double>> rows;
};

struct OnticModel {
  OnticSpace space;
  // generators of Pi_q, keyed by Q-outcome; each has all mass inside the cell
  std::map<std::string, std::vector<Density>> eigen_densities;
  // Pi_P, keyed by preparation label
  std::map<std::string, std::vector<Density>> prep_densities;
  std::map<std::string, MarkovKernel> kernels;
  std::map<std::string, ResponseFunction> responses;
};

// Pushed-forward density: result(l') = sum_l f(l) * gamma(l'|l).
Density push_forward(const MarkovKernel& kernel, const Density& f);

// Resolves a preparation label to its density list. Accepts a prep_densities
// key, an eigen outcome label ("q1"), or "P_" + outcome ("P_q1").
const std::vector<Density>& prep_generators(const OnticModel& model,
                                            const std::string& label);

// Splits a possibly composed label like "T(P_q1)" into the kernel sequence
// (outermost first) and the base preparation label. Exact prep/eigen labels
// take precedence over the composed reading.
struct PrepRef {
  std::vector<std::string> kernel_seq;
  std::string base;
};
PrepRef resolve_prep_label(const OnticModel& model, const std::string& label);

// Integral of xi_meas(outcome|.) against the pushed-forward preparation.
// Every density in Pi_prep must yield the same value within 1e-10; otherwise
// throws std::runtime_error naming the discrepancy.
double model_probability(const OnticModel& model, const std::string& prep,
                         const std::vector<std::string>& kernel_seq,
                         const std::string& meas, const std::string& outcome);

struct ReproReport {
  bool ok = false;
  double max_deviation = 0.0;
  std::string worst_entry;
};

// True iff every table entry matches model_probability within tol. Table
// preparation labels are resolved with resolve_prep_label; unresolvable
// labels throw std::out_of_range.
ReproReport reproduces_ptm(const OnticModel& model, const PtmTable& table, double tol);

// Model with a single preparation "P" whose density is sum_q weights[q] * f_q.
// One eigen density per outcome. Throws std::invalid_argument if the weights
// are not a distribution over the space's outcomes.
OnticModel mixing_model(const OnticSpace& space,
                        const std::map<std::string, Density>& eigen,
                        const std::map<std::string, double>& weights);

// (1-eps)*f_q + (eps/p)*f_P restricted to q_support, p = f_P-mass of
// q_support. Throws std::invalid_argument when p == 0 or eps outside [0,1].
Density perturb_eigen_density(const Density& f_q, const Density& f_P,
                              const std::vector<std::size_t>& q_support,
                              double epsilon);

// (1-eps)*f_S + eps*f_U.
Density perturb_prep_density(const Density& f_S, const Density& f_U, double epsilon);

// Deterministic in seed. Every cell is nonempty, eigen densities are strictly
// positive on their whole cell, preparations ("P1".."Pn") are strictly
// positive everywhere, one kernel "T", responses "Q" (indicator) and "A"
// (random rows over outcomes.size() outcomes "a1"..).
OnticModel random_model(std::uint64_t seed, std::size_t space_size,
                        const std::vector<std::string>& outcomes,
                        std::size_t eigen_count_per_outcome,
                        std::size_t prep_count);

std::vector<Violation> validate_model(const OnticModel& model, double tol = 1e-10);

// Born-style table over the model's measurements and the preparations
// {P, T(P), P_q1, T(P_q1)} mapped from (prep, transform). Row labels use the
// standard role names from ptm_table.hpp.
PtmTable induced_table(const OnticModel& model, const std::string& prep,
                       const std::string& transform);

}  // namespace macroreal

#endif
