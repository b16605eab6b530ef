#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "macroreal/bounds.hpp"
#include "macroreal/fragment.hpp"
#include "macroreal/json_io.hpp"
#include "macroreal/ontic.hpp"
#include "macroreal/overlap.hpp"
#include "macroreal/search.hpp"
#include "macroreal/support.hpp"

namespace macroreal::cli {

namespace {

using nlohmann::json;

// All emitted text is locale-independent; floats print with enough digits to
// round-trip.
std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
}

json violations_to_json(const std::vector<Violation>& violations) {
  json list = json::array();
  for (const Violation& v : violations) {
    list.push_back({{"what", v.what}, {"magnitude", v.magnitude}});
  }
  return list;
}

int input_error(const InputError& err) {
  json j;
  j["error"] = err.what();
  j["violations"] = violations_to_json(err.violations);
  std::cout << j.dump(2) << '\n';
  return kInputError;
}

QuantumFragment fragment_from_selector(const std::string& which,
                                       const std::string& input) {
  if (!input.empty()) return load_fragment(input);
  if (which == "t1") return paper_fragment_theorem1();
  if (which == "t2") return paper_fragment_theorem2();
  throw InputError("select a fragment with --which t1|t2 or --input <path>");
}

std::string table_csv(const PtmTable& table) {
  std::ostringstream out;
  out << "measurement,preparation,outcome,probability\n";
  for (const auto& [meas, by_prep] : table.rows) {
    const auto& labels = table.outcomes.at(meas);
    for (const auto& [prep, dist] : by_prep) {
      for (std::size_t m = 0; m < labels.size(); ++m) {
        out << meas << ',' << prep << ',' << labels[m] << ',' << fmt(dist[m]) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace

int cmd_fragment(const FragmentArgs& args) {
  try {
    const QuantumFragment frag = fragment_from_selector(args.which, args.input);
    const PtmTable table = fragment_to_ptm(frag);

    if (args.format == "csv") {
      emit(table_csv(table), args.out);
      return kOk;
    }

    json j;
    j["fragment"] = to_json(frag);
    j["table"] = to_json(table);
    j["gap"] = gap(table);
    j["premises"] = {
        {"P(a2|A,P_q1)", table.probability(kMeasA, kPrepPq1, "a2")},
        {"P(a3|A,T,P_q1)", table.probability(kMeasA, kPrepTPq1, "a3")},
        {"P(q3|Q,T,P_q1)", table.probability(kMeasQ, kPrepTPq1, "q3")},
    };
    j["premises_hold"] = theorem1_premises_hold(table, args.tol);
    j["premise_tolerance"] = args.tol;
    emit(j.dump(2), args.out);
    return kOk;
  } catch (const InputError& err) {
    return input_error(err);
  }
}

int cmd_curve(const CurveArgs& args) {
  try {
    const OnticModel model = load_model(args.model_path);
    const auto eigen_it = model.eigen_densities.find(args.q);
    if (eigen_it == model.eigen_densities.end() || eigen_it->second.empty()) {
      throw InputError("model has no eigen densities for outcome '" + args.q + "'");
    }
    const auto& densities = prep_generators(model, args.prep);

    std::ostringstream csv;
    if (eigen_it->second.size() == 1 && densities.size() == 1) {
      write_curve_csv(csv, support_curve(densities.front(), eigen_it->second.front()));
    } else {
      // multiple generators: grid evaluation of the hull supremum, closed by
      // the exact alpha -> infinity limit
      std::vector<double> grid;
      for (int i = 0; i < args.grid_points; ++i) {
        grid.push_back(args.grid_max * i / std::max(1, args.grid_points - 1));
      }
      const auto points = model_support_curve(model, args.prep, args.q, grid);
      csv << "alpha,omega\n";
      for (const auto& [alpha, value] : points) {
        csv << fmt(alpha) << ',' << fmt(value) << '\n';
      }
      double limit = std::numeric_limits<double>::infinity();
      for (const Density& f_P : densities) {
        double mass = 0.0;
        for (std::size_t l = 0; l < model.space.size; ++l) {
          bool in_support = false;
          for (const Density& f_q : eigen_it->second) {
            in_support |= f_q.mass[l] > 0.0;
          }
          if (in_support) mass += f_P.mass[l];
        }
        limit = std::min(limit, mass);
      }
      csv << fmt(2.0 * args.grid_max) << ',' << fmt(limit) << '\n';
    }
    emit(csv.str(), args.out);
    return kOk;
  } catch (const InputError& err) {
    return input_error(err);
  } catch (const std::out_of_range& err) {
    return input_error(InputError(err.what()));
  }
}

int cmd_exclude(const ExcludeArgs& args) {
  try {
    const ExperimentFrequencies freqs = load_frequencies(args.freqs_path);
    const ExclusionLine line = exclusion_line(freqs);

    json j;
    j["freqs"] = to_json(freqs);
    j["line"] = {{"intercept", line.intercept},
                 {"slope", line.slope},
                 {"target", line.target}};
    j["beta_bound_at_0"] = beta_bound(line, 0.0);

    bool verdict_failed = false;
    if (!args.model_path.empty()) {
      const OnticModel model = load_model(args.model_path);
      const auto eigen_it = model.eigen_densities.find(args.q);
      if (eigen_it == model.eigen_densities.end() || eigen_it->second.empty()) {
        throw InputError("model has no eigen densities for outcome '" + args.q + "'");
      }
      const auto& densities = prep_generators(model, args.prep);

      ExclusionVerdict verdict;
      if (eigen_it->second.size() == 1 && densities.size() == 1) {
        verdict = ruled_out(
            support_curve(densities.front(), eigen_it->second.front()), line);
      } else {
        std::vector<double> grid;
        for (int i = 0; i < args.grid_points; ++i) {
          grid.push_back(args.grid_max * i / std::max(1, args.grid_points - 1));
        }
        verdict =
            ruled_out(model_support_curve(model, args.prep, args.q, grid), line);
      }
      j["model"] = args.model_path;
      j["prep"] = args.prep;
      j["q"] = args.q;
      j["ruled_out"] = verdict.ruled_out;
      if (verdict.witness_alpha) {
        j["witness_alpha"] = *verdict.witness_alpha;
      } else {
        j["witness_alpha"] = nullptr;
      }
      verdict_failed = !verdict.ruled_out;
    }

    if (!args.out.empty()) {
      std::vector<double> grid;
      for (int i = 0; i < args.grid_points; ++i) {
        grid.push_back(args.grid_max * i / std::max(1, args.grid_points - 1));
      }
      std::ostringstream csv;
      write_region_csv(csv, line, grid);
      std::ofstream out(args.out);
      if (!out) throw InputError("cannot write '" + args.out + "'");
      out << csv.str();
      j["region_csv"] = args.out;
    }

    std::cout << j.dump(2) << '\n';
    return verdict_failed ? kVerdictFailure : kOk;
  } catch (const InputError& err) {
    return input_error(err);
  } catch (const std::out_of_range& err) {
    return input_error(InputError(err.what()));
  }
}

int cmd_epsilon(const EpsilonArgs& args) {
  try {
    EpsilonResult res;
    json source;
    if (!args.freqs.empty()) {
      const ExperimentFrequencies freqs = load_frequencies(args.freqs);
      res = worst_case_epsilon(freqs);
      source = to_json(freqs);
    } else {
      const QuantumFragment frag = fragment_from_selector(args.which, args.input);
      res = worst_case_epsilon(fragment_to_ptm(frag));
      source = args.input.empty() ? json(args.which) : json(args.input);
    }
    json j;
    j["epsilon"] = res.epsilon;
    j["quadratic"] = {{"a", res.quad_a}, {"b", res.quad_b}, {"c", res.quad_c}};
    j["residual"] = res.residual;
    j["source"] = source;
    emit(j.dump(2), args.out);
    return kOk;
  } catch (const InputError& err) {
    return input_error(err);
  }
}

int cmd_em_check(const EmCheckArgs& args) {
  try {
    const ExperimentFrequencies freqs = load_frequencies(args.freqs_path);
    const ExclusionLine line = exclusion_line(freqs);
    const bool excluded = em_ruled_out(freqs);
    json j;
    j["freqs"] = to_json(freqs);
    j["line"] = {{"intercept", line.intercept},
                 {"slope", line.slope},
                 {"target", line.target}};
    j["em_ruled_out"] = excluded;
    emit(j.dump(2), args.out);
    return excluded ? kOk : kVerdictFailure;
  } catch (const InputError& err) {
    return input_error(err);
  }
}

int cmd_search(const SearchArgs& args) {
  try {
    if (args.restarts < 1) throw InputError("--restarts must be >= 1");
    const SearchResult result = maximize_gap(args.restarts, args.seed);
    json j;
    j["best_value"] = result.best_value;
    j["best_fragment"] = to_json(decode(result.best_params));
    j["best_angles"] = result.best_params.angles;
    j["restarts"] = args.restarts;
    j["seed"] = args.seed;
    j["per_restart_values"] = result.per_restart_values;
    emit(j.dump(2), args.out);
    return kOk;
  } catch (const InputError& err) {
    return input_error(err);
  }
}

namespace {

struct Row {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

void print_rows(const std::vector<Row>& rows) {
  std::size_t w_name = 4, w_exp = 8, w_got = 8;
  for (const Row& r : rows) {
    w_name = std::max(w_name, r.name.size());
    w_exp = std::max(w_exp, r.expected.size());
    w_got = std::max(w_got, r.computed.size());
  }
  const auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  std::cout << pad("name", w_name) << "  " << pad("expected", w_exp) << "  "
            << pad("computed", w_got) << "  result\n";
  for (const Row& r : rows) {
    std::cout << pad(r.name, w_name) << "  " << pad(r.expected, w_exp) << "  "
              << pad(r.computed, w_got) << "  " << (r.pass ? "PASS" : "FAIL")
              << '\n';
  }
}

}  // namespace

int cmd_reproduce(const ReproduceArgs& args) {
  std::vector<Row> rows;
  const auto add = [&rows](const std::string& name, const std::string& expected,
                           const std::string& computed, bool pass) {
    rows.push_back({name, expected, computed, pass});
  };

  const double r3 = std::sqrt(3.0);

  {
    const PtmTable t1 = fragment_to_ptm(paper_fragment_theorem1());
    const double p_q1 = t1.probability(kMeasQ, kPrepP, "q1");
    add("t1 P(q1|Q,P)", "0.1", fmt(p_q1), std::abs(p_q1 - 0.1) <= 1e-12);
    const double p_q2 = t1.probability(kMeasQ, kPrepTP, "q2");
    const double p_a1 = t1.probability(kMeasA, kPrepTP, "a1");
    add("t1 P(q2|Q,T,P)", "<= 1e-12", fmt(p_q2), p_q2 <= 1e-12);
    add("t1 P(a1|A,T,P)", "<= 1e-12", fmt(p_a1), p_a1 <= 1e-12);
    add("t1 premises", "<= 1e-12", fmt(premise_sum(t1)),
        theorem1_premises_hold(t1, 1e-12));
    add("t1 gap", "0.1", fmt(gap(t1)), std::abs(gap(t1) - 0.1) <= 1e-12);
  }

  {
    const QuantumFragment frag = paper_fragment_theorem2();
    const PtmTable t2 = fragment_to_ptm(frag);
    const double expected_gap = (10.0 * r3 - 7.0) / 48.0;
    add("t2 gap", fmt(expected_gap), fmt(gap(t2)),
        std::abs(gap(t2) - expected_gap) <= 1e-12);
    add("t2 premises", "<= 1e-12", fmt(premise_sum(t2)),
        theorem1_premises_hold(t2, 1e-12));

    const CVector u_psi = apply_unitary(frag.unitary, frag.psi);
    const double q = std::sqrt(2.0) / 4.0;
    const CVector expected = {Complex{q * r3, 0}, Complex{q, 0}, Complex{2 * q, 0}};
    double dev = 0.0;
    for (std::size_t i = 0; i < 3; ++i) dev = std::max(dev, std::abs(u_psi[i] - expected[i]));
    add("t2 U|psi> vs (sqrt2/4)(sqrt3,1,2)", "<= 1e-12", fmt(dev), dev <= 1e-12);

    const EpsilonResult eps = worst_case_epsilon(t2);
    add("t2 epsilon*", "[0.0501, 0.0511]", fmt(eps.epsilon),
        eps.epsilon >= 0.0501 && eps.epsilon <= 0.0511);
    add("t2 epsilon* residual", "< 1e-10", fmt(eps.residual), eps.residual < 1e-10);

    const ExperimentFrequencies exact = frequencies_from_table(t2);
    add("t2 EM exclusion (exact freqs)", "true", em_ruled_out(exact) ? "true" : "false",
        em_ruled_out(exact));
    const ExperimentFrequencies noisy = perturb_worst_case(exact, 0.06);
    add("t2 EM exclusion (eps=0.06 worst case)", "false",
        em_ruled_out(noisy) ? "true" : "false", !em_ruled_out(noisy));
  }

  if (!args.fast) {
    const SearchResult result = maximize_gap(64, args.seed);
    add("search max gap (64 restarts)", "[0.231, 0.2365]", fmt(result.best_value),
        result.best_value >= 0.231 && result.best_value <= 0.2365);
  }

  print_rows(rows);
  bool all_pass = true;
  for (const Row& r : rows) all_pass &= r.pass;
  std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
  return all_pass ? kOk : kVerdictFailure;
}

int cmd_validate(const ValidateArgs& args) {
  try {
    const json j = load_json_file(args.input);
    std::string kind = args.kind;
    if (kind == "auto") {
      if (j.contains("q_basis")) {
        kind = "fragment";
      } else if (j.contains("space")) {
        kind = "model";
      } else {
        throw InputError("cannot detect input kind; pass --kind fragment|model");
      }
    }

    std::vector<Violation> violations;
    if (kind == "fragment") {
      violations = validate_fragment(fragment_from_json(j), args.tol);
    } else if (kind == "model") {
      violations = validate_model(model_from_json(j), args.tol);
    } else {
      throw InputError("unknown kind '" + kind + "'");
    }

    json out;
    out["input"] = args.input;
    out["kind"] = kind;
    out["valid"] = violations.empty();
    out["violations"] = violations_to_json(violations);
    std::cout << out.dump(2) << '\n';
    return violations.empty() ? kOk : kVerdictFailure;
  } catch (const InputError& err) {
    return input_error(err);
  }
}

}  // namespace macroreal::cli
