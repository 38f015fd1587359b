#include "blowup/kernels.hpp"

namespace blowup::kernels::scalar {

std::size_t find_divisor(const Monomial& m, std::span<const Monomial> candidates) {
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (divides(candidates[i], m)) return i;
  return npos;
}

void lcm_batch(const Monomial& m, std::span<const Monomial> in, std::span<Monomial> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = lcm(m, in[i]);
}

void divides_batch(const Monomial& m, std::span<const Monomial> in, std::span<unsigned char> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = divides(m, in[i]) ? 1 : 0;
}

}  // namespace blowup::kernels::scalar
