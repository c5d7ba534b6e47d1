#include "lr/kernels/mod_axpy.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace lr::kernels {

namespace {

// Reduces 8 lanes holding values in [0, 2^31) modulo p via a double-precision
// quotient estimate and one correction step each way.
inline __m256i reduce8(__m256i v, __m256d pd, __m256d inv, __m256i pv) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m256d dlo = _mm256_cvtepi32_pd(lo);
  __m256d dhi = _mm256_cvtepi32_pd(hi);
  __m256d qlo = _mm256_floor_pd(_mm256_mul_pd(dlo, inv));
  __m256d qhi = _mm256_floor_pd(_mm256_mul_pd(dhi, inv));
  __m256d rlo = _mm256_fnmadd_pd(qlo, pd, dlo);
  __m256d rhi = _mm256_fnmadd_pd(qhi, pd, dhi);
  __m128i ilo = _mm256_cvtpd_epi32(rlo);
  __m128i ihi = _mm256_cvtpd_epi32(rhi);
  __m256i r = _mm256_inserti128_si256(_mm256_castsi128_si256(ilo), ihi, 1);
  // r in (-p, 2p)
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, pv));
  __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(pv, _mm256_set1_epi32(1)));
  r = _mm256_sub_epi32(r, _mm256_and_si256(big, pv));
  return r;
}

}  // namespace

__attribute__((target("avx2,fma"))) void axpy_mod_avx2(std::uint32_t* y, const std::uint32_t* x,
                                                      std::uint32_t a, std::uint32_t p,
                                                      std::size_t n) {
  const __m256i av = _mm256_set1_epi32(static_cast<int>(a % p));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  const __m256d inv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    __m256i s = _mm256_add_epi32(yv, _mm256_mullo_epi32(av, xv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce8(s, pd, inv, pv));
  }
  axpy_mod_scalar(y + i, x + i, a, p, n - i);
}

__attribute__((target("avx2,fma"))) void scale_mod_avx2(std::uint32_t* y, std::uint32_t a,
                                                       std::uint32_t p, std::size_t n) {
  const __m256i av = _mm256_set1_epi32(static_cast<int>(a % p));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  const __m256d inv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i),
                        reduce8(_mm256_mullo_epi32(av, yv), pd, inv, pv));
  }
  scale_mod_scalar(y + i, a, p, n - i);
}

}  // namespace lr::kernels

#else

namespace lr::kernels {
void axpy_mod_avx2(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p,
                   std::size_t n) {
  axpy_mod_scalar(y, x, a, p, n);
}
void scale_mod_avx2(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n) {
  scale_mod_scalar(y, a, p, n);
}
}  // namespace lr::kernels

#endif
