// Compiled with -mavx2; only reached after the dispatcher has checked CPUID.
#include <immintrin.h>

#include "blowup/kernels.hpp"

namespace blowup::kernels::avx2 {

namespace {

inline __m256i load(const Monomial& m) {
  return _mm256_load_si256(reinterpret_cast<const __m256i*>(m.e.data()));
}

// a | b  <=>  max(a, b) == b in every byte
inline bool divides_v(__m256i a, __m256i b) {
  __m256i eq = _mm256_cmpeq_epi8(_mm256_max_epu8(a, b), b);
  return _mm256_movemask_epi8(eq) == -1;
}

}  // namespace

std::size_t find_divisor(const Monomial& m, std::span<const Monomial> candidates) {
  const __m256i target = load(m);
  const std::size_t n = candidates.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i c0 = load(candidates[i]);
    __m256i c1 = load(candidates[i + 1]);
    __m256i c2 = load(candidates[i + 2]);
    __m256i c3 = load(candidates[i + 3]);
    if (divides_v(c0, target)) return i;
    if (divides_v(c1, target)) return i + 1;
    if (divides_v(c2, target)) return i + 2;
    if (divides_v(c3, target)) return i + 3;
  }
  for (; i < n; ++i)
    if (divides_v(load(candidates[i]), target)) return i;
  return npos;
}

void lcm_batch(const Monomial& m, std::span<const Monomial> in, std::span<Monomial> out) {
  const __m256i a = load(m);
  for (std::size_t i = 0; i < in.size(); ++i) {
    __m256i l = _mm256_max_epu8(a, load(in[i]));
    _mm256_store_si256(reinterpret_cast<__m256i*>(out[i].e.data()), l);
  }
}

void divides_batch(const Monomial& m, std::span<const Monomial> in, std::span<unsigned char> out) {
  const __m256i a = load(m);
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = divides_v(a, load(in[i])) ? 1 : 0;
}

}  // namespace blowup::kernels::avx2
