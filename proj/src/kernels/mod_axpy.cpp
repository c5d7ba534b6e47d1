#include "lr/kernels/mod_axpy.hpp"

namespace lr::kernels {

void axpy_mod_scalar(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] = static_cast<std::uint32_t>((y[i] + static_cast<std::uint64_t>(a) * x[i]) % p);
}

void scale_mod_scalar(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * y[i]) % p);
}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p,
              std::size_t n) {
  if (a == 0) return;
  if (p < kVectorModulusLimit && avx2_available())
    axpy_mod_avx2(y, x, a, p, n);
  else
    axpy_mod_scalar(y, x, a, p, n);
}

void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n) {
  if (p < kVectorModulusLimit && avx2_available())
    scale_mod_avx2(y, a, p, n);
  else
    scale_mod_scalar(y, a, p, n);
}

}  // namespace lr::kernels
