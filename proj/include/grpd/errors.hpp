#pragma once

#include <stdexcept>
#include <string>

namespace grpd {

// Caller broke an interface contract (dimension mismatch, bad argument).
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A smooth map produced non-finite values at the requested point.
struct evaluation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// d_H s is singular: the distribution is not transversal to ker(ds).
struct non_transversal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ds does not have the expected rank at the sampled point.
struct submersion_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pulled-back distribution has the wrong dimension.
struct pullback_degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conjugation or bracket left the span of the algebra basis.
struct closure_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace grpd
