#ifndef MACROREAL_VALIDATION_HPP
#define MACROREAL_VALIDATION_HPP

#include <string>

namespace macroreal {

// One violated invariant, with the size of the violation where meaningful.
struct Violation {
  std::string what;
  double magnitude = 0.0;
};

}  // namespace macroreal

#endif
