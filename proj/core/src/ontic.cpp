#include "macroreal/ontic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace macroreal {

std::vector<std::size_t> OnticSpace::partition_indicator(const std::string& q) const {
  if (std::find(outcomes.begin(), outcomes.end(), q) == outcomes.end()) {
    throw std::out_of_range("partition_indicator: unknown outcome '" + q + "'");
  }
  std::vector<std::size_t> cell;
  for (std::size_t l = 0; l < q_value.size(); ++l) {
    if (q_value[l] == q) cell.push_back(l);
  }
  return cell;
}

Density push_forward(const MarkovKernel& kernel, const Density& f) {
  const std::size_t n = f.mass.size();
  if (kernel.rows.size() != n) {
    throw std::invalid_argument("push_forward: dimension mismatch");
  }
  Density out;
  out.mass.assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const auto& row = kernel.rows[l];
    if (row.size() != n) {
      throw std::invalid_argument("push_forward: kernel is not square");
    }
    const double w = f.mass[l];
    if (w == 0.0) continue;
    for (std::size_t lp = 0; lp < n; ++lp) out.mass[lp] += w * row[lp];
  }
  return out;
}

const std::vector<Density>& prep_generators(const OnticModel& model,
                                            const std::string& label) {
  if (const auto it = model.prep_densities.find(label); it != model.prep_densities.end()) {
    return it->second;
  }
  if (const auto it = model.eigen_densities.find(label); it != model.eigen_densities.end()) {
    return it->second;
  }
  if (label.rfind("P_", 0) == 0) {
    const auto it = model.eigen_densities.find(label.substr(2));
    if (it != model.eigen_densities.end()) return it->second;
  }
  throw std::out_of_range("unknown preparation label '" + label + "'");
}

namespace {

bool is_base_label(const OnticModel& model, const std::string& label) {
  if (model.prep_densities.count(label) || model.eigen_densities.count(label)) return true;
  return label.rfind("P_", 0) == 0 && model.eigen_densities.count(label.substr(2)) > 0;
}

}  // namespace

PrepRef resolve_prep_label(const OnticModel& model, const std::string& label) {
  PrepRef ref;
  std::string current = label;
  while (!is_base_label(model, current)) {
    const auto open = current.find('(');
    if (open == std::string::npos || current.back() != ')') {
      throw std::out_of_range("cannot resolve preparation label '" + label + "'");
    }
    const std::string kernel = current.substr(0, open);
    if (!model.kernels.count(kernel)) {
      throw std::out_of_range("cannot resolve preparation label '" + label +
                              "': unknown transformation '" + kernel + "'");
    }
    ref.kernel_seq.push_back(kernel);
    current = current.substr(open + 1, current.size() - open - 2);
  }
  ref.base = current;
  return ref;
}

double model_probability(const OnticModel& model, const std::string& prep,
                         const std::vector<std::string>& kernel_seq,
                         const std::string& meas, const std::string& outcome) {
  const auto& generators = prep_generators(model, prep);
  const auto resp_it = model.responses.find(meas);
  if (resp_it == model.responses.end()) {
    throw std::out_of_range("unknown measurement label '" + meas + "'");
  }
  const ResponseFunction& resp = resp_it->second;
  const auto out_it = std::find(resp.outcomes.begin(), resp.outcomes.end(), outcome);
  if (out_it == resp.outcomes.end()) {
    throw std::out_of_range("unknown outcome '" + outcome + "' for measurement '" +
                            meas + "'");
  }
  const std::size_t m = static_cast<std::size_t>(out_it - resp.outcomes.begin());

  double value = 0.0;
  bool first = true;
  for (const Density& f0 : generators) {
    Density f = f0;
    // innermost kernel acts first
    for (auto it = kernel_seq.rbegin(); it != kernel_seq.rend(); ++it) {
      const auto k = model.kernels.find(*it);
      if (k == model.kernels.end()) {
        throw std::out_of_range("unknown transformation label '" + *it + "'");
      }
      f = push_forward(k->second, f);
    }
    double p = 0.0;
    for (std::size_t l = 0; l < f.mass.size(); ++l) p += resp.rows[l][m] * f.mass[l];
    if (first) {
      value = p;
      first = false;
    } else if (std::abs(p - value) > 1e-10) {
      std::ostringstream msg;
      msg << "ill-formed model: densities of preparation '" << prep
          << "' disagree on P(" << outcome << "|" << meas << "): " << value
          << " vs " << p;
      throw std::runtime_error(msg.str());
    }
  }
  return value;
}

ReproReport reproduces_ptm(const OnticModel& model, const PtmTable& table, double tol) {
  ReproReport report;
  report.ok = true;
  for (const auto& [meas, by_prep] : table.rows) {
    const auto& labels = table.outcomes.at(meas);
    for (const auto& [prep, dist] : by_prep) {
      const PrepRef ref = resolve_prep_label(model, prep);
      for (std::size_t m = 0; m < labels.size(); ++m) {
        const double model_p =
            model_probability(model, ref.base, ref.kernel_seq, meas, labels[m]);
        const double dev = std::abs(model_p - dist[m]);
        if (dev > report.max_deviation) {
          report.max_deviation = dev;
          report.worst_entry = "P(" + labels[m] + "|" + meas + "," + prep + ")";
        }
        if (dev > tol) report.ok = false;
      }
    }
  }
  return report;
}

OnticModel mixing_model(const OnticSpace& space,
                        const std::map<std::string, Density>& eigen,
                        const std::map<std::string, double>& weights) {
  double total = 0.0;
  for (const auto& [q, w] : weights) {
    if (w < 0.0) throw std::invalid_argument("mixing_model: negative weight for " + q);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("mixing_model: weights do not sum to 1");
  }
  for (const std::string& q : space.outcomes) {
    if (!eigen.count(q)) {
      throw std::invalid_argument("mixing_model: missing eigen density for " + q);
    }
    if (!weights.count(q)) {
      throw std::invalid_argument("mixing_model: missing weight for " + q);
    }
  }

  OnticModel model;
  model.space = space;

  Density f_P;
  f_P.mass.assign(space.size, 0.0);
  for (const auto& [q, f_q] : eigen) {
    model.eigen_densities[q] = {f_q};
    const double w = weights.at(q);
    for (std::size_t l = 0; l < space.size; ++l) f_P.mass[l] += w * f_q.mass[l];
  }
  model.prep_densities["P"] = {f_P};

  ResponseFunction q_resp;
  q_resp.outcomes = space.outcomes;
  q_resp.rows.assign(space.size, std::vector<double>(space.outcomes.size(), 0.0));
  for (std::size_t l = 0; l < space.size; ++l) {
    const auto it = std::find(space.outcomes.begin(), space.outcomes.end(),
                              space.q_value[l]);
    q_resp.rows[l][static_cast<std::size_t>(it - space.outcomes.begin())] = 1.0;
  }
  model.responses[kMeasQ] = q_resp;
  return model;
}

Density perturb_eigen_density(const Density& f_q, const Density& f_P,
                              const std::vector<std::size_t>& q_support,
                              double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("perturb_eigen_density: epsilon outside [0,1]");
  }
  if (f_q.mass.size() != f_P.mass.size()) {
    throw std::invalid_argument("perturb_eigen_density: dimension mismatch");
  }
  double p = 0.0;
  for (std::size_t l : q_support) p += f_P.mass.at(l);
  if (p <= 0.0) {
    throw std::invalid_argument(
        "perturb_eigen_density: preparation has no mass on the cell");
  }
  Density out;
  out.mass.assign(f_q.mass.size(), 0.0);
  for (std::size_t l = 0; l < f_q.mass.size(); ++l) {
    out.mass[l] = (1.0 - epsilon) * f_q.mass[l];
  }
  for (std::size_t l : q_support) {
    out.mass[l] += (epsilon / p) * f_P.mass[l];
  }
  return out;
}

Density perturb_prep_density(const Density& f_S, const Density& f_U, double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("perturb_prep_density: epsilon outside [0,1]");
  }
  if (f_S.mass.size() != f_U.mass.size()) {
    throw std::invalid_argument("perturb_prep_density: dimension mismatch");
  }
  Density out;
  out.mass.resize(f_S.mass.size());
  for (std::size_t l = 0; l < f_S.mass.size(); ++l) {
    out.mass[l] = (1.0 - epsilon) * f_S.mass[l] + epsilon * f_U.mass[l];
  }
  return out;
}

namespace {

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> out(n);
  double sum = 0.0;
  for (double& x : out) {
    x = exp1(rng) + 1e-9;  // keep entries strictly positive
    sum += x;
  }
  for (double& x : out) x /= sum;
  return out;
}

}  // namespace

OnticModel random_model(std::uint64_t seed, std::size_t space_size,
                        const std::vector<std::string>& outcomes,
                        std::size_t eigen_count_per_outcome,
                        std::size_t prep_count) {
  if (space_size < 1 || outcomes.empty() || eigen_count_per_outcome < 1 ||
      prep_count < 1) {
    throw std::invalid_argument("random_model: all sizes must be >= 1");
  }
  std::mt19937_64 rng(seed);

  OnticModel model;
  model.space.size = space_size;
  model.space.outcomes = outcomes;
  model.space.q_value.resize(space_size);
  // deal outcomes round-robin so no cell is empty, then shuffle
  for (std::size_t l = 0; l < space_size; ++l) {
    model.space.q_value[l] = outcomes[l % outcomes.size()];
  }
  std::shuffle(model.space.q_value.begin(), model.space.q_value.end(), rng);

  for (const std::string& q : outcomes) {
    const auto cell = model.space.partition_indicator(q);
    auto& generators = model.eigen_densities[q];
    for (std::size_t k = 0; k < eigen_count_per_outcome; ++k) {
      Density f;
      f.mass.assign(space_size, 0.0);
      if (!cell.empty()) {
        const auto on_cell = random_distribution(rng, cell.size());
        for (std::size_t i = 0; i < cell.size(); ++i) f.mass[cell[i]] = on_cell[i];
      }
      generators.push_back(f);
    }
  }

  for (std::size_t p = 0; p < prep_count; ++p) {
    Density f;
    f.mass = random_distribution(rng, space_size);
    model.prep_densities["P" + std::to_string(p + 1)] = {f};
  }

  MarkovKernel kernel;
  kernel.rows.resize(space_size);
  for (auto& row : kernel.rows) row = random_distribution(rng, space_size);
  model.kernels["T"] = kernel;

  ResponseFunction q_resp;
  q_resp.outcomes = outcomes;
  q_resp.rows.assign(space_size, std::vector<double>(outcomes.size(), 0.0));
  for (std::size_t l = 0; l < space_size; ++l) {
    const auto it = std::find(outcomes.begin(), outcomes.end(), model.space.q_value[l]);
    q_resp.rows[l][static_cast<std::size_t>(it - outcomes.begin())] = 1.0;
  }
  model.responses[kMeasQ] = q_resp;

  ResponseFunction a_resp;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    a_resp.outcomes.push_back("a" + std::to_string(i + 1));
  }
  a_resp.rows.resize(space_size);
  for (auto& row : a_resp.rows) row = random_distribution(rng, outcomes.size());
  model.responses[kMeasA] = a_resp;

  return model;
}

namespace {

void check_density(const Density& f, std::size_t size, const std::string& where,
                   double tol, std::vector<Violation>& report) {
  if (f.mass.size() != size) {
    report.push_back({where + ": wrong length", 0.0});
    return;
  }
  double sum = 0.0;
  for (double x : f.mass) {
    if (x < 0.0) report.push_back({where + ": negative mass", -x});
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol) {
    report.push_back({where + ": mass does not sum to 1", std::abs(sum - 1.0)});
  }
}

}  // namespace

std::vector<Violation> validate_model(const OnticModel& model, double tol) {
  std::vector<Violation> report;
  const std::size_t n = model.space.size;

  if (model.space.q_value.size() != n) {
    report.push_back({"space: q_value length differs from size", 0.0});
    return report;
  }
  for (const std::string& q : model.space.q_value) {
    if (std::find(model.space.outcomes.begin(), model.space.outcomes.end(), q) ==
        model.space.outcomes.end()) {
      report.push_back({"space: q_value uses undeclared outcome '" + q + "'", 0.0});
    }
  }

  for (const auto& [q, generators] : model.eigen_densities) {
    if (generators.empty()) {
      report.push_back({"eigen_densities[" + q + "]: empty generator list", 0.0});
    }
    std::vector<bool> in_cell(n, false);
    if (std::find(model.space.outcomes.begin(), model.space.outcomes.end(), q) ==
        model.space.outcomes.end()) {
      report.push_back({"eigen_densities: unknown outcome '" + q + "'", 0.0});
      continue;
    }
    for (std::size_t l : model.space.partition_indicator(q)) in_cell[l] = true;
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const std::string where = "eigen_densities[" + q + "][" + std::to_string(k) + "]";
      check_density(generators[k], n, where, tol, report);
      if (generators[k].mass.size() != n) continue;
      double off_cell = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        if (!in_cell[l]) off_cell += generators[k].mass[l];
      }
      if (off_cell > tol) {
        report.push_back({where + ": mass outside the " + q + " cell", off_cell});
      }
    }
  }

  for (const auto& [label, densities] : model.prep_densities) {
    if (densities.empty()) {
      report.push_back({"prep_densities[" + label + "]: empty density list", 0.0});
    }
    for (std::size_t k = 0; k < densities.size(); ++k) {
      check_density(densities[k], n,
                    "prep_densities[" + label + "][" + std::to_string(k) + "]", tol,
                    report);
    }
  }

  for (const auto& [label, kernel] : model.kernels) {
    if (kernel.rows.size() != n) {
      report.push_back({"kernels[" + label + "]: wrong row count", 0.0});
      continue;
    }
    for (std::size_t l = 0; l < n; ++l) {
      const std::string where = "kernels[" + label + "] row " + std::to_string(l);
      if (kernel.rows[l].size() != n) {
        report.push_back({where + ": wrong length", 0.0});
        continue;
      }
      double sum = 0.0;
      for (double x : kernel.rows[l]) {
        if (x < 0.0) report.push_back({where + ": negative entry", -x});
        sum += x;
      }
      if (std::abs(sum - 1.0) > tol) {
        report.push_back({where + ": does not sum to 1", std::abs(sum - 1.0)});
      }
    }
  }

  for (const auto& [label, resp] : model.responses) {
    if (resp.rows.size() != n) {
      report.push_back({"responses[" + label + "]: wrong row count", 0.0});
      continue;
    }
    for (std::size_t l = 0; l < n; ++l) {
      const std::string where = "responses[" + label + "] row " + std::to_string(l);
      if (resp.rows[l].size() != resp.outcomes.size()) {
        report.push_back({where + ": wrong length", 0.0});
        continue;
      }
      double sum = 0.0;
      for (double x : resp.rows[l]) {
        if (x < 0.0) report.push_back({where + ": negative entry", -x});
        sum += x;
      }
      if (std::abs(sum - 1.0) > tol) {
        report.push_back({where + ": does not sum to 1", std::abs(sum - 1.0)});
      }
    }
  }

  // the macro-observable response must be the indicator induced by q_value
  if (const auto it = model.responses.find(kMeasQ); it != model.responses.end()) {
    const ResponseFunction& resp = it->second;
    for (std::size_t l = 0; l < std::min(n, resp.rows.size()); ++l) {
      for (std::size_t m = 0; m < resp.outcomes.size(); ++m) {
        if (resp.rows[l].size() != resp.outcomes.size()) break;
        const double expect = (resp.outcomes[m] == model.space.q_value[l]) ? 1.0 : 0.0;
        if (resp.rows[l][m] != expect) {
          report.push_back({"responses[Q]: not the deterministic indicator of q_value "
                            "at state " + std::to_string(l),
                            std::abs(resp.rows[l][m] - expect)});
        }
      }
    }
  }

  return report;
}

PtmTable induced_table(const OnticModel& model, const std::string& prep,
                       const std::string& transform) {
  PtmTable table;
  const std::vector<std::pair<std::string, PrepRef>> roles = {
      {kPrepP, {{}, prep}},
      {kPrepTP, {{transform}, prep}},
      {kPrepPq1, {{}, "P_q1"}},
      {kPrepTPq1, {{transform}, "P_q1"}},
  };
  for (const auto& [meas, resp] : model.responses) {
    table.outcomes[meas] = resp.outcomes;
    for (const auto& [label, ref] : roles) {
      std::vector<double> dist;
      dist.reserve(resp.outcomes.size());
      for (const std::string& outcome : resp.outcomes) {
        dist.push_back(model_probability(model, ref.base, ref.kernel_seq, meas, outcome));
      }
      table.rows[meas][label] = dist;
    }
  }
  return table;
}

}  // namespace macroreal
