#ifndef MACROREAL_TOOLS_COMMANDS_HPP
#define MACROREAL_TOOLS_COMMANDS_HPP

#include <optional>
#include <string>

namespace macroreal::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kVerdictFailure = 1;
inline constexpr int kInputError = 2;

struct FragmentArgs {
  std::string which;  // "t1" | "t2" | "" when --input is used
  std::string input;
  double tol = 1e-12;
  std::string format = "json";  // json | csv (table as CSV)
  std::string out;
};
int cmd_fragment(const FragmentArgs& args);

struct CurveArgs {
  std::string model_path;
  std::string prep = "P";
  std::string q = "q1";
  std::string out;
  double grid_max = 5.0;
  int grid_points = 101;
};
int cmd_curve(const CurveArgs& args);

struct ExcludeArgs {
  std::string freqs_path;
  std::string model_path;  // optional
  std::string prep = "P";
  std::string q = "q1";
  std::string out;  // region CSV path; omitted -> boundary parameters in JSON only
  double grid_max = 5.0;
  int grid_points = 101;
};
int cmd_exclude(const ExcludeArgs& args);

struct EpsilonArgs {
  std::string which;  // "t1" | "t2" | ""
  std::string input;  // fragment JSON
  std::string freqs;  // frequencies JSON
  std::string out;
};
int cmd_epsilon(const EpsilonArgs& args);

struct EmCheckArgs {
  std::string freqs_path;
  std::string out;
};
int cmd_em_check(const EmCheckArgs& args);

struct SearchArgs {
  int restarts = 64;
  std::uint64_t seed = 0;
  std::string out;
};
int cmd_search(const SearchArgs& args);

struct ReproduceArgs {
  bool fast = false;
  std::uint64_t seed = 0;
};
int cmd_reproduce(const ReproduceArgs& args);

struct ValidateArgs {
  std::string input;
  std::string kind = "auto";  // fragment | model | auto
  double tol = 1e-10;
};
int cmd_validate(const ValidateArgs& args);

}  // namespace macroreal::cli

#endif
