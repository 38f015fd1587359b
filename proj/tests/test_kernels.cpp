// Scalar and AVX2 monomial kernels must agree bit for bit.
#include <random>

#include "blowup/kernels.hpp"
#include "doctest.h"

using namespace blowup;

namespace {

std::vector<Monomial> random_monomials(std::mt19937_64& rng, std::size_t count, std::size_t nvars, int max_exp) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::vector<Monomial> out(count);
  for (auto& m : out)
    for (std::size_t v = 0; v < nvars; ++v) m.e[v] = static_cast<std::uint8_t>(e(rng));
  return out;
}

}  // namespace

TEST_CASE("dispatcher reports a supported backend") {
  CHECK(kernels::backend_supported(kernels::Backend::scalar));
  CHECK(kernels::backend_supported(kernels::active_backend()));
}

TEST_CASE("find_divisor: avx2 matches scalar") {
  if (!kernels::backend_supported(kernels::Backend::avx2)) return;
  std::mt19937_64 rng(7);
  for (std::size_t nvars : {3u, 11u, 32u}) {
    for (int round = 0; round < 300; ++round) {
      auto cands = random_monomials(rng, 1 + static_cast<std::size_t>(round % 23), nvars, 2);
      auto target = random_monomials(rng, 1, nvars, 4)[0];
      REQUIRE(kernels::avx2::find_divisor(target, cands) == kernels::scalar::find_divisor(target, cands));
    }
  }
  // high exponents exercise unsigned byte comparison
  Monomial big, small;
  big.e[0] = 200;
  small.e[0] = 100;
  std::vector<Monomial> c{big};
  CHECK(kernels::avx2::find_divisor(small, c) == kernels::npos);
  std::vector<Monomial> c2{small};
  CHECK(kernels::avx2::find_divisor(big, c2) == 0);
}

TEST_CASE("lcm_batch and divides_batch: avx2 matches scalar") {
  if (!kernels::backend_supported(kernels::Backend::avx2)) return;
  std::mt19937_64 rng(8);
  for (int round = 0; round < 200; ++round) {
    auto in = random_monomials(rng, 17, 32, 250);
    auto m = random_monomials(rng, 1, 32, 250)[0];
    std::vector<Monomial> a(in.size()), b(in.size());
    kernels::scalar::lcm_batch(m, in, a);
    kernels::avx2::lcm_batch(m, in, b);
    REQUIRE(a == b);

    auto small = random_monomials(rng, 40, 6, 2);
    auto probe = random_monomials(rng, 1, 6, 1)[0];
    std::vector<unsigned char> da(small.size()), db(small.size());
    kernels::scalar::divides_batch(probe, small, da);
    kernels::avx2::divides_batch(probe, small, db);
    REQUIRE(da == db);
  }
}

TEST_CASE("backend can be forced to scalar") {
  auto before = kernels::active_backend();
  kernels::set_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  kernels::set_backend(before);
}
