#pragma once

#include <cstddef>
#include <cstdint>

namespace lr::kernels {

// Row kernels over Z/p with entries in [0, p). The vector path requires
// p < 2^15; larger moduli always take the scalar path.
constexpr std::uint32_t kVectorModulusLimit = 1u << 15;

// y <- y + a*x (mod p)
void axpy_mod_scalar(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p,
                     std::size_t n);
void axpy_mod_avx2(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p,
                   std::size_t n);
// y <- a*y (mod p)
void scale_mod_scalar(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n);
void scale_mod_avx2(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n);

bool avx2_available();

// Runtime-dispatched entry points.
void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p,
              std::size_t n);
void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n);

}  // namespace lr::kernels
