#include "macroreal/ptm_table.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace macroreal {

bool PtmTable::has_row(const std::string& meas, const std::string& prep) const {
  const auto m = rows.find(meas);
  return m != rows.end() && m->second.count(prep) > 0;
}

double PtmTable::probability(const std::string& meas, const std::string& prep,
                             const std::string& outcome) const {
  const auto m = rows.find(meas);
  if (m == rows.end()) {
    throw std::out_of_range("PtmTable: unknown measurement '" + meas + "'");
  }
  const auto p = m->second.find(prep);
  if (p == m->second.end()) {
    throw std::out_of_range("PtmTable: no row for preparation '" + prep +
                            "' under measurement '" + meas + "'");
  }
  const auto& labels = outcomes.at(meas);
  const auto it = std::find(labels.begin(), labels.end(), outcome);
  if (it == labels.end()) {
    throw std::out_of_range("PtmTable: unknown outcome '" + outcome +
                            "' for measurement '" + meas + "'");
  }
  return p->second[static_cast<std::size_t>(it - labels.begin())];
}

std::vector<std::string> PtmTable::preparations() const {
  std::set<std::string> seen;
  for (const auto& [meas, by_prep] : rows) {
    for (const auto& [prep, dist] : by_prep) seen.insert(prep);
  }
  return {seen.begin(), seen.end()};
}

std::vector<Violation> validate_table(const PtmTable& table, double tol) {
  std::vector<Violation> report;
  for (const auto& [meas, by_prep] : table.rows) {
    const auto out_it = table.outcomes.find(meas);
    if (out_it == table.outcomes.end()) {
      report.push_back({"measurement '" + meas + "' has rows but no outcome labels", 0.0});
      continue;
    }
    for (const auto& [prep, dist] : by_prep) {
      const std::string where = meas + "|" + prep;
      if (dist.size() != out_it->second.size()) {
        report.push_back({"row " + where + ": wrong number of entries", 0.0});
        continue;
      }
      double sum = 0.0;
      for (double p : dist) {
        if (p < -tol || p > 1.0 + tol) {
          report.push_back({"row " + where + ": entry outside [0,1]",
                            std::max(-p, p - 1.0)});
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > tol) {
        report.push_back({"row " + where + ": does not sum to 1", std::abs(sum - 1.0)});
      }
    }
  }
  return report;
}

}  // namespace macroreal
