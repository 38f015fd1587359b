#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>

#include "blowup/monomial.hpp"

// Batch monomial kernels used by reduction and pair bookkeeping. Each kernel has a
// scalar reference and an AVX2 variant; the variant is picked once at startup from
// CPUID and can be overridden (tests, BLOWUP_KERNELS=scalar).
namespace blowup::kernels {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

enum class Backend { scalar, avx2 };

bool backend_supported(Backend b);
Backend active_backend();
/// Throws PreconditionError when the CPU lacks the requested backend.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

/// Index of the first candidate dividing m, or npos.
std::size_t find_divisor(const Monomial& m, std::span<const Monomial> candidates);

/// out[i] = lcm(m, in[i]).
void lcm_batch(const Monomial& m, std::span<const Monomial> in, std::span<Monomial> out);

/// out[i] = 1 iff m divides in[i].
void divides_batch(const Monomial& m, std::span<const Monomial> in, std::span<unsigned char> out);

namespace scalar {
std::size_t find_divisor(const Monomial& m, std::span<const Monomial> candidates);
void lcm_batch(const Monomial& m, std::span<const Monomial> in, std::span<Monomial> out);
void divides_batch(const Monomial& m, std::span<const Monomial> in, std::span<unsigned char> out);
}  // namespace scalar

namespace avx2 {
std::size_t find_divisor(const Monomial& m, std::span<const Monomial> candidates);
void lcm_batch(const Monomial& m, std::span<const Monomial> in, std::span<Monomial> out);
void divides_batch(const Monomial& m, std::span<const Monomial> in, std::span<unsigned char> out);
}  // namespace avx2

}  // namespace blowup::kernels
