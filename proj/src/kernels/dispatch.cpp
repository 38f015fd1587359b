#include <atomic>
#include <cstdlib>
#include <cstring>

#include "blowup/errors.hpp"
#include "blowup/kernels.hpp"

namespace blowup::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(BLOWUP_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("BLOWUP_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool backend_supported(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b)) throw PreconditionError("kernel backend not supported on this CPU");
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

#if defined(BLOWUP_HAVE_AVX2)
#define BLOWUP_DISPATCH(fn, ...)                                             \
  (active_backend() == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define BLOWUP_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

std::size_t find_divisor(const Monomial& m, std::span<const Monomial> candidates) {
  return BLOWUP_DISPATCH(find_divisor, m, candidates);
}

void lcm_batch(const Monomial& m, std::span<const Monomial> in, std::span<Monomial> out) {
  BLOWUP_DISPATCH(lcm_batch, m, in, out);
}

void divides_batch(const Monomial& m, std::span<const Monomial> in, std::span<unsigned char> out) {
  BLOWUP_DISPATCH(divides_batch, m, in, out);
}

#if !defined(BLOWUP_HAVE_AVX2)
namespace avx2 {
std::size_t find_divisor(const Monomial& m, std::span<const Monomial> c) { return scalar::find_divisor(m, c); }
void lcm_batch(const Monomial& m, std::span<const Monomial> in, std::span<Monomial> out) {
  scalar::lcm_batch(m, in, out);
}
void divides_batch(const Monomial& m, std::span<const Monomial> in, std::span<unsigned char> out) {
  scalar::divides_batch(m, in, out);
}
}  // namespace avx2
#endif

}  // namespace blowup::kernels
