#pragma once

#include <cstdint>
#include <string>

#include "lr/exact/matrix.hpp"

namespace lr {

// l-adic valuation value; infinite only for zero.
struct Valuation {
  bool infinite = false;
  long value = 0;

  static Valuation inf() { return {true, 0}; }
  static Valuation of(long v) { return {false, v}; }
  bool operator==(const Valuation& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  bool operator<(const Valuation& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const Valuation& o) const { return !(o < *this); }
  Valuation operator+(const Valuation& o) const {
    if (infinite || o.infinite) return inf();
    return of(value + o.value);
  }
  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

inline Valuation vmin(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

Valuation v_ell(const Int& x, std::uint32_t ell);
Valuation v_ell(const Rat& x, std::uint32_t ell);
// Largest power of ell dividing x (x != 0), as an exponent.
long v_ell_finite(const Int& x, std::uint32_t ell);

}  // namespace lr
