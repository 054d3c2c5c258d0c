#pragma once

#include <stdexcept>
#include <string>

namespace triple_couple {

// A rejection or oracle sampling budget ran out. Signals parameters for which
// the conditioning event is not rare enough to sample by rejection.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace triple_couple
