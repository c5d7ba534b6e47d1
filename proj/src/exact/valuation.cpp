#include "lr/exact/valuation.hpp"

#include "lr/errors.hpp"

namespace lr {

long v_ell_finite(const Int& x, std::uint32_t ell) {
  ensure(x != 0, "v_ell_finite: zero input");
  ensure(ell >= 2, "v_ell_finite: bad prime");
  Int y = x;
  long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), ell)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), ell);
    ++v;
  }
  return v;
}

Valuation v_ell(const Int& x, std::uint32_t ell) {
  if (x == 0) return Valuation::inf();
  return Valuation::of(v_ell_finite(x, ell));
}

Valuation v_ell(const Rat& x, std::uint32_t ell) {
  if (x == 0) return Valuation::inf();
  return Valuation::of(v_ell_finite(x.get_num(), ell) - v_ell_finite(x.get_den(), ell));
}

}  // namespace lr
