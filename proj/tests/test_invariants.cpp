#include <random>

#include "blowup/invariants.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace blowup;
using namespace blowup::testing;

namespace {

using QQ = RationalField;
using Fp = PrimeField;

template <class K>
LinearMatrix<K> matrix(const RingPtr<K>& r, std::size_t rows, std::size_t cols, std::vector<std::string> entries) {
  std::vector<Polynomial<K>> es;
  for (auto& e : entries) es.push_back(P(r, e));
  return LinearMatrix<K>(r, 0, rows, cols, std::move(es));
}

// x1 on the first u diagonal entries, every entry plus a random form in x2..xd
LinearMatrix<Fp> shaped(const RingPtr<Fp>& r, std::mt19937_64& rng, std::size_t n, std::size_t u) {
  std::uniform_int_distribution<std::uint32_t> c(0, 32002);
  const std::size_t d = r->num_vars();
  std::vector<Polynomial<Fp>> es;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) {
      std::vector<Term<Fp>> ts;
      for (std::size_t v = 1; v < d; ++v) ts.push_back({Monomial::variable(v), c(rng)});
      if (i == j && i < u) ts.push_back({Monomial::variable(0), 1});
      es.push_back(Polynomial<Fp>::from_terms(r, std::move(ts)));
    }
  return LinearMatrix<Fp>(r, 0, n, n - 1, std::move(es));
}

LinearMatrix<Fp> generic(const RingPtr<Fp>& r, std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> c(0, 32002);
  std::vector<Polynomial<Fp>> es;
  for (std::size_t i = 0; i < n * (n - 1); ++i) {
    std::vector<Term<Fp>> ts;
    for (std::size_t v = 0; v < r->num_vars(); ++v) ts.push_back({Monomial::variable(v), c(rng)});
    es.push_back(Polynomial<Fp>::from_terms(r, std::move(ts)));
  }
  return LinearMatrix<Fp>(r, 0, n, n - 1, std::move(es));
}

}  // namespace

TEST_CASE("rees ideal of (x1, x2)") {
  auto rings = BlowupRings<QQ>::make(QQ(), {"x1", "x2"}, 2);
  auto phi = matrix(rings.x, 2, 1, {"x2", "-x1"});
  auto gens = maximal_minor_generators(phi);
  CHECK(gens[0] == P(rings.x, "-x1"));
  CHECK(gens[1] == P(rings.x, "-x2"));
  auto r = rees_ideal(phi, rings);
  CHECK(ideal_equal(r.rees, ideal(rings.xt, {"x1*t2 - x2*t1"})));
  CHECK(r.fiber.is_zero());
  CHECK(analytic_spread(r) == 2);
}

TEST_CASE("rees ideal of (x^2, xy, y^2)") {
  auto rings = BlowupRings<QQ>::make(QQ(), {"x", "y"}, 3);
  auto phi = matrix(rings.x, 3, 2, {"y", "0", "-x", "y", "0", "-x"});
  auto gens = maximal_minor_generators(phi);
  CHECK(gens[0] == P(rings.x, "x^2"));
  CHECK(gens[1] == P(rings.x, "x*y"));
  CHECK(gens[2] == P(rings.x, "y^2"));
  // frozen from an independent CAS elimination
  auto expected = ideal(rings.xt, {"t2*x - t1*y", "t3*x - t2*y", "t1*t3 - t2^2"});
  auto r = rees_ideal(phi, rings);
  CHECK(ideal_equal(r.rees, expected));
  CHECK(ideal_equal(r.fiber, ideal(rings.t, {"t1*t3 - t2^2"})));
  CHECK(analytic_spread(r) == 2);
  auto e = rees_from_generators(rings, gens);
  CHECK(ideal_equal(e.rees, expected));
}

TEST_CASE("rees ideal of a principal ideal is zero") {
  auto rings = BlowupRings<QQ>::make(QQ(), {"x"}, 1);
  auto r = rees_from_generators(rings, {P(rings.x, "x^3")});
  CHECK(r.rees.is_zero());
}

TEST_CASE("reserved names are rejected") {
  CHECK_THROWS_AS(BlowupRings<QQ>::make(QQ(), {"x", "t2"}, 3), PreconditionError);
  CHECK_THROWS_AS(BlowupRings<QQ>::make(QQ(), {"w", "x"}, 3), PreconditionError);
  CHECK_NOTHROW(BlowupRings<QQ>::make(QQ(), {"x", "t4"}, 3));
}

TEST_CASE("saturation agrees with elimination") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 12; ++round) {
    std::size_t d = 3, n = 4 + round % 2, u = 1 + round % 2;
    auto rings = BlowupRings<Fp>::make(Fp(), names("x", d), n);
    auto phi = round % 3 == 2 ? generic(rings.x, rng, n) : shaped(rings.x, rng, n, u);
    auto sat = rees_ideal(phi, rings);
    auto elim = rees_ideal(phi, rings, {}, ReesMethod::elimination);
    REQUIRE(ideal_equal(sat.rees, elim.rees));
    REQUIRE(ideal_equal(sat.fiber, elim.fiber));
    // Rees algebra of a nonzero ideal has dimension d + 1
    REQUIRE(dimension(sat.rees) == static_cast<int>(d + 1));
    REQUIRE(ideal_contains(sat.rees, symmetric_ideal(phi, rings)));
  }
}

TEST_CASE("saturation of an inhomogeneous ideal") {
  auto r = ring(QQ(), {"x", "y"});
  auto i = ideal(r, {"x*y - x", "x^2"});
  // (x(y-1), x^2) : x^inf = unit
  auto s = saturate(i, P(r, "x"));
  CHECK(ideal_equal(s, ideal(r, {"1"})));
  auto h = saturate(ideal(r, {"x^2*y", "x*y^2"}), P(r, "x"));
  CHECK(ideal_equal(h, ideal(r, {"y"})));
}

TEST_CASE("G_s conditions and u") {
  std::mt19937_64 rng(62);
  auto rings = BlowupRings<Fp>::make(Fp(), names("x", 3), 5);
  for (std::size_t u : {1u, 2u}) {
    MinorHeights<Fp> h(shaped(rings.x, rng, 5, u));
    CHECK(check_Gs_ideal(h, 2).holds);
    auto g3 = check_Gs_ideal(h, 3);
    CHECK_FALSE(g3.holds);
    REQUIRE(g3.failing_j);
    CHECK(*g3.failing_j == 3);
    CHECK(compute_u(h) == u);
    CHECK(h.height(5 - 3 + 1) == 2);
  }
  // s = 1 checks nothing
  MinorHeights<Fp> g(generic(rings.x, rng, 5));
  auto g1 = check_Gs_ideal(g, 1);
  CHECK(g1.holds);
  CHECK(g1.checks.empty());
  CHECK(check_Gs_ideal(g, 3).holds);
  CHECK_THROWS_AS(compute_u(g), HypothesisError);
  CHECK_THROWS_AS(g.height(0), PreconditionError);
}

TEST_CASE("G_s for a module matches the ideal case at rank one") {
  std::mt19937_64 rng(63);
  auto rings = BlowupRings<Fp>::make(Fp(), names("x", 3), 4);
  MinorHeights<Fp> h(shaped(rings.x, rng, 4, 1));
  for (std::size_t s = 1; s <= 4; ++s) {
    auto a = check_Gs_ideal(h, s);
    auto b = check_Gs_module(h, s, 1);
    CHECK(a.holds == b.holds);
    CHECK(a.checks.size() == b.checks.size());
  }
}

TEST_CASE("symmetric algebra dimension") {
  auto rings = BlowupRings<QQ>::make(QQ(), {"x", "y"}, 3);
  auto phi = matrix(rings.x, 3, 2, {"y", "0", "-x", "y", "0", "-x"});
  // two components: the Rees algebra and k[t] over the origin, both of dimension 3
  CHECK(sym_dimension(phi) == 3);
  std::mt19937_64 rng(64);
  auto r3 = BlowupRings<Fp>::make(Fp(), names("x", 3), 5);
  for (std::size_t u : {1u, 2u}) CHECK(sym_dimension(shaped(r3.x, rng, 5, u)) == 5);
}
