#include "macroreal/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace macroreal {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw InputError("complex number must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json cvector_to_json(const CVector& v) {
  json out = json::array();
  for (const Complex& c : v) out.push_back(complex_to_json(c));
  return out;
}

CVector cvector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("vector must be an array");
  CVector out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json cmatrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (const CVector& row : m) out.push_back(cvector_to_json(row));
  return out;
}

CMatrix cmatrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  CMatrix out;
  for (const auto& row : j) out.push_back(cvector_from_json(row));
  return out;
}

std::vector<double> doubles_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw InputError(what + " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

const json& require(const json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) throw InputError("missing field '" + key + "'");
  return *it;
}

}  // namespace

nlohmann::json to_json(const QuantumFragment& frag) {
  json j;
  j["dim"] = frag.dim;
  json qb = json::array(), ab = json::array();
  for (const CVector& v : frag.q_basis) qb.push_back(cvector_to_json(v));
  for (const CVector& v : frag.a_basis) ab.push_back(cvector_to_json(v));
  j["q_basis"] = qb;
  j["a_basis"] = ab;
  j["unitary"] = cmatrix_to_json(frag.unitary);
  j["psi"] = cvector_to_json(frag.psi);
  j["eigenprep_index"] = frag.eigenprep_index;
  return j;
}

QuantumFragment fragment_from_json(const nlohmann::json& j) {
  QuantumFragment frag;
  frag.dim = require(j, "dim").get<std::size_t>();
  for (const auto& v : require(j, "q_basis")) frag.q_basis.push_back(cvector_from_json(v));
  for (const auto& v : require(j, "a_basis")) frag.a_basis.push_back(cvector_from_json(v));
  frag.unitary = cmatrix_from_json(require(j, "unitary"));
  frag.psi = cvector_from_json(require(j, "psi"));
  frag.eigenprep_index = j.value("eigenprep_index", std::size_t{0});
  return frag;
}

nlohmann::json to_json(const OnticModel& model) {
  json j;
  j["space"] = {{"size", model.space.size},
                {"q_value", model.space.q_value},
                {"outcomes", model.space.outcomes}};
  json eigen = json::object();
  for (const auto& [q, generators] : model.eigen_densities) {
    json list = json::array();
    for (const Density& f : generators) list.push_back(f.mass);
    eigen[q] = list;
  }
  j["eigen_densities"] = eigen;
  json preps = json::object();
  for (const auto& [label, densities] : model.prep_densities) {
    json list = json::array();
    for (const Density& f : densities) list.push_back(f.mass);
    preps[label] = list;
  }
  j["prep_densities"] = preps;
  json kernels = json::object();
  for (const auto& [label, kernel] : model.kernels) kernels[label] = kernel.rows;
  j["kernels"] = kernels;
  json responses = json::object();
  for (const auto& [label, resp] : model.responses) {
    responses[label] = {{"outcomes", resp.outcomes}, {"rows", resp.rows}};
  }
  j["responses"] = responses;
  return j;
}

OnticModel model_from_json(const nlohmann::json& j) {
  OnticModel model;
  const json& space = require(j, "space");
  model.space.size = require(space, "size").get<std::size_t>();
  model.space.q_value = require(space, "q_value").get<std::vector<std::string>>();
  if (space.contains("outcomes")) {
    model.space.outcomes = space["outcomes"].get<std::vector<std::string>>();
  } else {
    // default: outcome labels in order of first appearance
    for (const std::string& q : model.space.q_value) {
      if (std::find(model.space.outcomes.begin(), model.space.outcomes.end(), q) ==
          model.space.outcomes.end()) {
        model.space.outcomes.push_back(q);
      }
    }
  }

  for (const auto& [q, list] : require(j, "eigen_densities").items()) {
    for (const auto& mass : list) {
      Density f;
      f.mass = doubles_from_json(mass, "eigen density");
      model.eigen_densities[q].push_back(f);
    }
  }
  for (const auto& [label, list] : require(j, "prep_densities").items()) {
    for (const auto& mass : list) {
      Density f;
      f.mass = doubles_from_json(mass, "preparation density");
      model.prep_densities[label].push_back(f);
    }
  }
  if (j.contains("kernels")) {
    for (const auto& [label, rows] : j["kernels"].items()) {
      MarkovKernel kernel;
      for (const auto& row : rows) {
        kernel.rows.push_back(doubles_from_json(row, "kernel row"));
      }
      model.kernels[label] = kernel;
    }
  }
  if (j.contains("responses")) {
    for (const auto& [label, resp_json] : j["responses"].items()) {
      ResponseFunction resp;
      resp.outcomes = require(resp_json, "outcomes").get<std::vector<std::string>>();
      for (const auto& row : require(resp_json, "rows")) {
        resp.rows.push_back(doubles_from_json(row, "response row"));
      }
      model.responses[label] = resp;
    }
  } else {
    // default macro-observable response: the indicator induced by q_value
    ResponseFunction resp;
    resp.outcomes = model.space.outcomes;
    resp.rows.assign(model.space.size,
                     std::vector<double>(model.space.outcomes.size(), 0.0));
    for (std::size_t l = 0; l < model.space.size && l < model.space.q_value.size(); ++l) {
      const auto it = std::find(model.space.outcomes.begin(),
                                model.space.outcomes.end(), model.space.q_value[l]);
      if (it != model.space.outcomes.end()) {
        resp.rows[l][static_cast<std::size_t>(it - model.space.outcomes.begin())] = 1.0;
      }
    }
    model.responses[kMeasQ] = resp;
  }
  return model;
}

nlohmann::json to_json(const ExperimentFrequencies& freqs) {
  return json{{"fQ1_P", freqs.fQ1_P},     {"fQ2_TP", freqs.fQ2_TP},
              {"fA1_TP", freqs.fA1_TP},   {"fA2_Pq1", freqs.fA2_Pq1},
              {"fA3_TPq1", freqs.fA3_TPq1}, {"fQ3_TPq1", freqs.fQ3_TPq1}};
}

ExperimentFrequencies frequencies_from_json(const nlohmann::json& j) {
  ExperimentFrequencies freqs;
  freqs.fQ1_P = require(j, "fQ1_P").get<double>();
  freqs.fQ2_TP = require(j, "fQ2_TP").get<double>();
  freqs.fA1_TP = require(j, "fA1_TP").get<double>();
  freqs.fA2_Pq1 = require(j, "fA2_Pq1").get<double>();
  freqs.fA3_TPq1 = require(j, "fA3_TPq1").get<double>();
  freqs.fQ3_TPq1 = require(j, "fQ3_TPq1").get<double>();
  const auto in_range = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_range(freqs.fQ1_P) || !in_range(freqs.fQ2_TP) || !in_range(freqs.fA1_TP) ||
      !in_range(freqs.fA2_Pq1) || !in_range(freqs.fA3_TPq1) ||
      !in_range(freqs.fQ3_TPq1)) {
    throw InputError("frequencies must lie in [0,1]");
  }
  return freqs;
}

nlohmann::json to_json(const PtmTable& table) {
  json j;
  j["outcomes"] = table.outcomes;
  j["rows"] = table.rows;
  return j;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

namespace {

template <typename T, typename Parse, typename Validate>
T load_validated(const std::string& path, Parse parse, Validate validate, double tol) {
  T value = parse(load_json_file(path));
  const std::vector<Violation> violations = validate(value, tol);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "'" << path << "' violates " << violations.size() << " invariant(s): ";
    msg << violations.front().what;
    InputError err(msg.str());
    err.violations = violations;
    throw err;
  }
  return value;
}

}  // namespace

QuantumFragment load_fragment(const std::string& path, double tol) {
  return load_validated<QuantumFragment>(
      path, [](const json& j) { return fragment_from_json(j); },
      [](const QuantumFragment& f, double t) { return validate_fragment(f, t); }, tol);
}

OnticModel load_model(const std::string& path, double tol) {
  return load_validated<OnticModel>(
      path, [](const json& j) { return model_from_json(j); },
      [](const OnticModel& m, double t) { return validate_model(m, t); }, tol);
}

ExperimentFrequencies load_frequencies(const std::string& path) {
  return frequencies_from_json(load_json_file(path));
}

}  // namespace macroreal
