#ifndef MACROREAL_PTM_TABLE_HPP
#define MACROREAL_PTM_TABLE_HPP

#include <map>
#include <string>
#include <vector>

#include "macroreal/validation.hpp"

namespace macroreal {

// Standard labels. The theorem machinery looks rows up by these names; table
// builders (fragment_to_ptm, induced_table) emit them.
inline constexpr const char* kMeasQ = "Q";
inline constexpr const char* kMeasA = "A";
inline constexpr const char* kPrepP = "P";
inline constexpr const char* kPrepTP = "T(P)";
inline constexpr const char* kPrepPq1 = "P_q1";
inline constexpr const char* kPrepTPq1 = "T(P_q1)";

// Finite table of outcome probabilities P(m|M,P'). Preparations may be
// composed forms like "T(P)"; the table itself treats labels as opaque.
struct PtmTable {
  // outcome labels per measurement, in fixed order
  std::map<std::string, std::vector<std::string>> outcomes;
  // rows[measurement][preparation] = distribution aligned with outcomes[measurement]
  std::map<std::string, std::map<std::string, std::vector<double>>> rows;

  bool has_row(const std::string& meas, const std::string& prep) const;

  // Throws std::out_of_range with a descriptive message if the measurement,
  // preparation or outcome is absent.
  double probability(const std::string& meas, const std::string& prep,
                     const std::string& outcome) const;

  std::vector<std::string> preparations() const;
};

// Each distribution sums to 1 within tol, entries in [-tol, 1+tol].
std::vector<Violation> validate_table(const PtmTable& table, double tol = 1e-10);

}  // namespace macroreal

#endif
