#pragma once

#include <stdexcept>
#include <string>

namespace eulerprod {

// Bad arguments or violated preconditions. The CLI maps this to exit status 1.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical guarantee failed to hold on computed data (e.g. |a(p)| > 2,
// or no witness for a polynomial that is not a dilated Chebyshev polynomial).
// This always means a bug in the computation. CLI exit status 2.
class Inconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eulerprod
