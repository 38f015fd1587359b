#include <random>

#include "blowup/linmatrix.hpp"
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

RingPtr<Fp> xt_ring(std::size_t d, std::size_t n) {
  return Ring<Fp>::make(Fp(), {{names("x", d), BlockRole::x}, {names("t", n), BlockRole::t}});
}

LinearMatrix<Fp> random_linear(const RingPtr<Fp>& r, std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<std::uint32_t> c(0, 32002);
  auto vars = r->block_vars(0);
  std::vector<Polynomial<Fp>> es;
  for (std::size_t i = 0; i < rows * cols; ++i) {
    std::vector<Term<Fp>> ts;
    for (auto v : vars) ts.push_back({Monomial::variable(v), c(rng)});
    es.push_back(Polynomial<Fp>::from_terms(r, std::move(ts)));
  }
  return LinearMatrix<Fp>(r, 0, rows, cols, std::move(es));
}

ScalarMatrix<Fp> random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> c(0, 32002);
  while (true) {
    ScalarMatrix<Fp> m(Fp(), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = c(rng);
    if (m.determinant() != 0) return m;
  }
}

}  // namespace

TEST_CASE("minors examples") {
  auto r = ring(QQ(), {"x", "y", "z"});
  auto m = matrix(r, 3, 2, {"x", "y", "y", "z", "z", "0"});
  // frozen from an independent CAS run
  CHECK(ideal_equal(minors(m, 2), ideal(r, {"x*z - y^2", "y*z", "z^2"})));
  CHECK(ideal_equal(minors(m, 1), ideal(r, {"x", "y", "z"})));
  CHECK(minors(m, 3).is_zero());
  auto sq = matrix(r, 2, 2, {"x", "y", "z", "x"});
  CHECK(determinant(sq) == P(r, "x^2 - y*z"));
}

TEST_CASE("signed maximal minors example") {
  auto r = Ring<QQ>::make(QQ(), {{{"t1", "t2", "t3"}, BlockRole::t}});
  auto b = matrix(r, 3, 2, {"t1", "0", "t2", "t1", "t3", "t2"});
  auto s = signed_maximal_minors(b);
  REQUIRE(s.delta.size() == 3);
  CHECK(s.delta[0] == P(r, "t2^2 - t1*t3"));
  CHECK(s.delta[1] == P(r, "-t1*t2"));
  CHECK(s.delta[2] == P(r, "t1^2"));
  CHECK_THROWS_AS(signed_maximal_minors(matrix(r, 2, 2, {"t1", "0", "0", "t1"})), ShapeError);
}

TEST_CASE("jacobian dual example") {
  auto r = Ring<QQ>::make(QQ(), {{{"x1", "x2", "x3"}, BlockRole::x}, {{"t1", "t2", "t3"}, BlockRole::t}});
  auto phi = matrix(r, 3, 2, {"x1", "x2", "x2", "x3", "x3", "x1"});
  auto b = jacobian_dual(phi, r, 1);
  std::vector<std::string> expected{"t1", "t3", "t2", "t1", "t3", "t2"};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(b.at(i, j) == P(r, expected[i * 2 + j]));
  CHECK(dual_identity_holds(phi, b));
  auto wrong = LinearMatrix<QQ>(r, 1, 3, 2,
                                {P(r, "t1"), P(r, "t3"), P(r, "t2"), P(r, "t1"), P(r, "t3"), P(r, "t1")});
  CHECK_FALSE(dual_identity_holds(phi, wrong));
}

TEST_CASE("non-linear entries and bad shapes are rejected") {
  auto r = ring(QQ(), {"x", "y"});
  CHECK_THROWS_AS(matrix(r, 1, 1, {"x^2"}), ShapeError);
  CHECK_THROWS_AS(matrix(r, 1, 1, {"x + 1"}), ShapeError);
  CHECK_THROWS_AS(matrix(r, 2, 1, {"x"}), ShapeError);
  CHECK_NOTHROW(matrix(r, 1, 2, {"0", "x - 3*y"}));
}

TEST_CASE("rank modulo an ideal") {
  auto r = ring(QQ(), {"x", "y"});
  auto m = matrix(r, 2, 2, {"x", "y", "y", "x"});
  CHECK(rank_mod<QQ>(m, nullptr) == 2);
  auto g = buchberger(ideal(r, {"x^2 - y^2"}));
  auto [rank, witness] = rank_mod_witness(m, &g);
  CHECK(rank == 1);
  CHECK(witness.rows.size() == 1);
  auto unit = buchberger(ideal(r, {"1"}));
  CHECK(rank_mod(m, &unit) == 0);
}

TEST_CASE("singular conjugation is rejected") {
  ScalarMatrix<Fp> a(Fp(), 2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(1, 0) = 2;
  a.at(1, 1) = 4;
  CHECK_THROWS_AS(ScalarConjugation<Fp>(a, ScalarMatrix<Fp>::identity(Fp(), 1)), PreconditionError);
}

TEST_CASE("rank factorization normalizes random scalar matrices") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::uint32_t> c(0, 4);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + round % 5, k = 1 + (round / 5) % 5;
    ScalarMatrix<Fp> m(Fp(), n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) m.at(i, j) = c(rng) < 2 ? 0 : c(rng);
    auto f = rank_factorization(m);
    auto p = f.left * m * f.right;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) REQUIRE(p.at(i, j) == (i == j && i < f.rank ? 1u : 0u));
    REQUIRE(f.left.determinant() != 0);
    REQUIRE(f.right.determinant() != 0);
  }
}

TEST_CASE("determinant agrees with evaluation at random points") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint32_t> c(0, 32002);
  auto r = xt_ring(3, 1);
  for (int round = 0; round < 30; ++round) {
    std::size_t n = 1 + round % 4;
    auto m = random_linear(r, rng, n, n);
    auto det = determinant(m);
    for (int probe = 0; probe < 3; ++probe) {
      std::vector<std::uint32_t> pt(r->num_vars());
      for (auto& v : pt) v = c(rng);
      ScalarMatrix<Fp> s(Fp(), n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.at(i, j) = evaluate(m.at(i, j), pt);
      REQUIRE(evaluate(det, pt) == s.determinant());
    }
  }
}

TEST_CASE("minor ideals are invariant under scalar conjugation") {
  std::mt19937_64 rng(43);
  auto r = xt_ring(3, 1);
  for (int round = 0; round < 8; ++round) {
    std::size_t n = 3 + round % 2;
    auto m = random_linear(r, rng, n, n - 1);
    ScalarConjugation<Fp> s(random_invertible(rng, n), random_invertible(rng, n - 1));
    auto c = conjugate(m, s);
    for (std::size_t k = 1; k < n; ++k) {
      REQUIRE(ideal_equal(minors(m, k), minors(c, k)));
      if (k + 1 < n) REQUIRE(ideal_contains(minors(m, k), minors(m, k + 1)));
    }
  }
}

TEST_CASE("signed minors annihilate the columns") {
  std::mt19937_64 rng(44);
  for (std::size_t d = 2; d <= 5; ++d) {
    auto r = xt_ring(3, 1);
    auto m = random_linear(r, rng, d, d - 1);
    auto s = signed_maximal_minors(m);
    // Laplace expansion of [column j | m] has a repeated column and vanishes
    for (std::size_t j = 0; j + 1 < d; ++j) {
      Polynomial<Fp> acc(r);
      for (std::size_t i = 0; i < d; ++i) acc += s.delta[i] * m.at(i, j);
      REQUIRE(acc.is_zero());
    }
  }
}

TEST_CASE("jacobian dual identity on random matrices") {
  std::mt19937_64 rng(45);
  for (int round = 0; round < 20; ++round) {
    std::size_t d = 2 + round % 3, n = d + 1 + round % 3;
    auto r = xt_ring(d, n);
    auto phi = random_linear(r, rng, n, n - 1);
    auto b = jacobian_dual(phi, r, 1);
    REQUIRE(b.rows() == d);
    REQUIRE(b.cols() == n - 1);
    REQUIRE(dual_identity_holds(phi, b));
  }
}

TEST_CASE("canonical form of a scrambled normal-shape matrix") {
  std::mt19937_64 rng(46);
  std::uniform_int_distribution<std::uint32_t> c(0, 32002);
  for (std::size_t u : {1u, 2u}) {
    const std::size_t d = 3, n = 5;
    auto r = xt_ring(d, 1);
    // x1 on the first u diagonal entries, everything else in x2, x3
    std::vector<Polynomial<Fp>> es;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j) {
        std::vector<Term<Fp>> ts{{Monomial::variable(1), c(rng)}, {Monomial::variable(2), c(rng)}};
        if (i == j && i < u) ts.push_back({Monomial::variable(0), 1});
        es.push_back(Polynomial<Fp>::from_terms(r, std::move(ts)));
      }
    LinearMatrix<Fp> shaped(r, 0, n, n - 1, es);
    REQUIRE(has_canonical_shape(shaped, u));

    // scramble by a coordinate change and conjugation; the point moves accordingly
    auto coords = random_invertible(rng, d);
    ScalarConjugation<Fp> s(random_invertible(rng, n), random_invertible(rng, n - 1));
    auto scrambled = conjugate(change_coordinates(shaped, coords), s);
    REQUIRE_FALSE(has_canonical_shape(scrambled, u));
    // y = coords^-1 x, so the image of (1:0:0) is the first column of coords^-1
    auto rf = rank_factorization(coords);
    auto inv = rf.right * rf.left;
    std::vector<std::uint32_t> point{inv.at(0, 0), inv.at(1, 0), inv.at(2, 0)};

    auto cf = canonical_form(scrambled, point, u);
    CHECK(cf.u == u);
    CHECK(has_canonical_shape(cf.matrix, u));
    for (std::size_t k = 1; k <= u + 1; ++k) CHECK(ideal_equal(minors(cf.matrix, k), minors(change_coordinates(scrambled, cf.coordinates), k)));
    for (std::size_t x = 0; x < d; ++x) CHECK(cf.coordinates.at(x, 0) == point[x]);
  }
}

TEST_CASE("canonical form rejects points that are not zeros of the expected minors") {
  auto r = xt_ring(2, 1);
  auto m = matrix(r, 3, 2, {"x1", "0", "0", "x1", "x2", "x2"});
  CHECK_THROWS_AS(canonical_form<Fp>(m, {1, 0}, std::size_t{1}), PreconditionError);
  CHECK_THROWS_AS(canonical_form<Fp>(m, {0, 0}), PreconditionError);
  auto cf = canonical_form<Fp>(m, {1, 0});
  CHECK(cf.u == 2);
  CHECK(has_canonical_shape(cf.matrix, 2));
}
