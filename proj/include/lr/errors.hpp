#pragma once

#include <stdexcept>
#include <string>

namespace lr {

// A stated precondition of the mathematical setup does not hold (CLI exit 1).
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An identity that must hold by construction failed (CLI exit 2).
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace lr
