#ifndef MACROREAL_JSON_IO_HPP
#define MACROREAL_JSON_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "macroreal/bounds.hpp"
#include "macroreal/fragment.hpp"
#include "macroreal/ontic.hpp"

namespace macroreal {

// Unreadable, unparseable or invariant-violating input. The CLI maps this to
// exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
  std::vector<Violation> violations;
};

// Complex numbers as [re, im]; matrices row-major.
nlohmann::json to_json(const QuantumFragment& frag);
QuantumFragment fragment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OnticModel& model);
OnticModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExperimentFrequencies& freqs);
ExperimentFrequencies frequencies_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PtmTable& table);

// Parse + validate at tol; throws InputError carrying the violation list.
QuantumFragment load_fragment(const std::string& path, double tol = 1e-10);
OnticModel load_model(const std::string& path, double tol = 1e-10);
ExperimentFrequencies load_frequencies(const std::string& path);

nlohmann::json load_json_file(const std::string& path);

}  // namespace macroreal

#endif
