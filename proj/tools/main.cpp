#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical tests of macroscopic realism on finite ontic models"};
  app.require_subcommand(1);

  macroreal::cli::FragmentArgs fragment_args;
  auto* fragment = app.add_subcommand(
      "fragment", "Print a qutrit fragment, its probability table, gap and premises");
  fragment->add_option("--which", fragment_args.which, "Built-in fragment: t1 or t2");
  fragment->add_option("--input", fragment_args.input, "Fragment JSON file");
  fragment->add_option("--tol", fragment_args.tol, "Premise tolerance (default 1e-12)");
  fragment->add_option("--format", fragment_args.format, "json (default) or csv");
  fragment->add_option("--out", fragment_args.out, "Output path (default stdout)");

  macroreal::cli::CurveArgs curve_args;
  auto* curve = app.add_subcommand(
      "curve", "Support curve alpha -> omega(f_P, alpha f_q) of a model, as CSV");
  curve->add_option("--model", curve_args.model_path, "Model JSON file")->required();
  curve->add_option("--prep", curve_args.prep, "Preparation label (default P)");
  curve->add_option("--q", curve_args.q, "Q outcome label (default q1)");
  curve->add_option("--out", curve_args.out, "Output path (default stdout)");
  curve->add_option("--grid-max", curve_args.grid_max,
                    "Grid end for multi-generator models (default 5)");
  curve->add_option("--grid-points", curve_args.grid_points,
                    "Grid size for multi-generator models (default 101)");

  macroreal::cli::ExcludeArgs exclude_args;
  auto* exclude = app.add_subcommand(
      "exclude", "Exclusion line and region from frequencies; crossing verdict "
                 "when a model is given");
  exclude->add_option("--freqs", exclude_args.freqs_path, "Frequencies JSON file")
      ->required();
  exclude->add_option("--model", exclude_args.model_path, "Model JSON file");
  exclude->add_option("--prep", exclude_args.prep, "Preparation label (default P)");
  exclude->add_option("--q", exclude_args.q, "Q outcome label (default q1)");
  exclude->add_option("--out", exclude_args.out, "Region CSV path");
  exclude->add_option("--grid-max", exclude_args.grid_max, "Region grid end (default 5)");
  exclude->add_option("--grid-points", exclude_args.grid_points,
                      "Region grid size (default 101)");

  macroreal::cli::EpsilonArgs epsilon_args;
  auto* epsilon = app.add_subcommand(
      "epsilon", "Worst-case noise threshold for ruling out mixing models");
  epsilon->add_option("--which", epsilon_args.which, "Built-in fragment: t1 or t2");
  epsilon->add_option("--input", epsilon_args.input, "Fragment JSON file");
  epsilon->add_option("--freqs", epsilon_args.freqs, "Frequencies JSON file");
  epsilon->add_option("--out", epsilon_args.out, "Output path (default stdout)");

  macroreal::cli::EmCheckArgs em_args;
  auto* em = app.add_subcommand(
      "em-check", "Eigenpreparation-mixing exclusion criterion on frequencies");
  em->add_option("--freqs", em_args.freqs_path, "Frequencies JSON file")->required();
  em->add_option("--out", em_args.out, "Output path (default stdout)");

  macroreal::cli::SearchArgs search_args;
  auto* search = app.add_subcommand(
      "search", "Maximize the gap over premise-free real qutrit fragments");
  search->add_option("--restarts", search_args.restarts, "Restart count (default 64)");
  search->add_option("--seed", search_args.seed, "Seed (default 0)");
  search->add_option("--out", search_args.out, "Output path (default stdout)");

  macroreal::cli::ReproduceArgs repro_args;
  auto* repro = app.add_subcommand(
      "reproduce", "Check every closed-form and numerical headline value");
  repro->add_flag("--fast", repro_args.fast, "Skip the fragment search");
  repro->add_option("--seed", repro_args.seed, "Search seed (default 0)");

  macroreal::cli::ValidateArgs validate_args;
  auto* validate = app.add_subcommand(
      "validate", "Validate a fragment or model JSON file");
  validate->add_option("--input", validate_args.input, "JSON file")->required();
  validate->add_option("--kind", validate_args.kind, "fragment | model | auto");
  validate->add_option("--tol", validate_args.tol, "Invariant tolerance (default 1e-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 exits 0 for --help; anything else is an input error
    return code == 0 ? macroreal::cli::kOk : macroreal::cli::kInputError;
  }

  if (fragment->parsed()) return macroreal::cli::cmd_fragment(fragment_args);
  if (curve->parsed()) return macroreal::cli::cmd_curve(curve_args);
  if (exclude->parsed()) return macroreal::cli::cmd_exclude(exclude_args);
  if (epsilon->parsed()) return macroreal::cli::cmd_epsilon(epsilon_args);
  if (em->parsed()) return macroreal::cli::cmd_em_check(em_args);
  if (search->parsed()) return macroreal::cli::cmd_search(search_args);
  if (repro->parsed()) return macroreal::cli::cmd_reproduce(repro_args);
  if (validate->parsed()) return macroreal::cli::cmd_validate(validate_args);
  return macroreal::cli::kInputError;
}
