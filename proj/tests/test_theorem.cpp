#include <chrono>

#include "blowup/theorem.hpp"
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

const std::vector<std::string> kFlags{"fiber_type", "expected_form", "birational", "det_identity_all",
                                      "specialization_MU"};

}  // namespace

TEST_CASE("find_point") {
  auto r = ring(Fp(), {"x1", "x2", "x3"});
  auto p = find_point(ideal(r, {"x2", "x3"}));
  REQUIRE(p);
  CHECK(*p == std::vector<std::uint32_t>{1, 0, 0});
  auto z = find_point(Ideal<Fp>(r, {}));
  REQUIRE(z);
  CHECK(*z == std::vector<std::uint32_t>{1, 0, 0});
  auto r11 = ring(Fp(11), {"x1", "x2", "x3"});
  auto q = find_point(ideal(r11, {"x1", "x3 - 2*x2"}));
  REQUIRE(q);
  CHECK(*q == std::vector<std::uint32_t>{0, 1, 2});
  CHECK_THROWS_AS(find_point(ideal(r, {"x1 - 1"})), PreconditionError);
  CHECK_THROWS_AS(find_point(ideal(r, {"x1", "x2", "x3"}), 1000), BudgetExceeded);

  // brute force over the 8 points of P^1(F_7)
  auto r7 = ring(Fp(7), {"x1", "x2"});
  bool any = false;
  for (std::uint32_t a = 0; a < 7; ++a) any = any || (1 + a * a) % 7 == 0;
  CHECK_FALSE(any);
  CHECK_FALSE(find_point(ideal(r7, {"x1^2 + x2^2"})));
  // over F_5, 2^2 = -1
  auto r5 = ring(Fp(5), {"x1", "x2"});
  auto f5 = find_point(ideal(r5, {"x1^2 + x2^2"}));
  REQUIRE(f5);
  CHECK(*f5 == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("solve_point agrees with enumeration") {
  auto r = ring(Fp(), {"x1", "x2", "x3"});
  auto p = solve_point(ideal(r, {"x1 - 5*x2", "x3 + 7*x2"}));
  REQUIRE(p);
  // x2 = 1/5, x3 = -7/5
  CHECK(*p == std::vector<std::uint32_t>{1, 19202, 25601});
  CHECK_FALSE(solve_point(ideal(r, {"x1", "x2", "x3"})));
  auto r7 = ring(Fp(7), {"x1", "x2", "x3"});
  CHECK_FALSE(solve_point(ideal(r7, {"x1^2 + x2^2", "x3"})));
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    // two random quadrics through a random point of P^2(F_13)
    auto r13 = ring(Fp(13), {"x1", "x2", "x3"});
    std::vector<Polynomial<Fp>> gens;
    for (int g = 0; g < 2; ++g) gens.push_back(random_poly(r13, rng, 4, 2));
    std::vector<Polynomial<Fp>> homog;
    for (auto& g : gens) {
      std::vector<Term<Fp>> ts;
      for (auto t : g.terms())
        if (t.m.degree() == 2) ts.push_back(t);
      homog.push_back(Polynomial<Fp>::from_terms(r13, std::move(ts)));
    }
    Ideal<Fp> j(r13, homog);
    auto a = find_point(j);
    auto b = solve_point(j, 13);
    CHECK(a.has_value() == b.has_value());
    if (b) {
      for (const auto& g : homog) CHECK(evaluate(g, *b) == 0);
    }
  }
}

TEST_CASE("fiber type and expected form of (x^2, xy, y^2)") {
  auto rings = BlowupRings<QQ>::make(QQ(), {"x", "y"}, 3);
  auto phi = matrix(rings.x, 3, 2, {"y", "0", "-x", "y", "0", "-x"});
  auto rees = rees_ideal(phi, rings);
  auto sym = symmetric_ideal(phi, rings);
  CHECK(is_fiber_type(rees, sym));
  auto b = jacobian_dual(phi, rings.t, 0);
  // d = 2 and I_2(B) = (t1 t3 - t2^2) = Q
  CHECK(is_expected_form(rees, sym, b));
  auto gq = buchberger(rees.fiber);
  auto bc = birationality_check(b, gq);
  CHECK(bc.birational);
  CHECK(bc.rank == 1);
  CHECK(bc.witness.rows.size() == 1);
  auto unit = buchberger(Ideal<QQ>(rings.t, {Polynomial<QQ>::from_int(rings.t, 1)}));
  CHECK_THROWS_AS(birationality_check(b, unit), PreconditionError);
  CHECK_THROWS_AS(inverse_representatives(b, unit), PreconditionError);
}

TEST_CASE("linear type ideal is of fiber type") {
  auto rings = BlowupRings<QQ>::make(QQ(), {"x1", "x2"}, 2);
  auto phi = matrix(rings.x, 2, 1, {"x2", "-x1"});
  auto rees = rees_ideal(phi, rings);
  CHECK(rees.fiber.is_zero());
  CHECK(is_fiber_type(rees, symmetric_ideal(phi, rings)));
}

TEST_CASE("generated instances have the requested u") {
  for (auto [d, n, u] : std::vector<std::array<std::size_t, 3>>{{3, 4, 1}, {3, 5, 2}, {3, 5, 1}}) {
    auto phi = generate_instance(d, n, u, Fp(), 7);
    CHECK(has_canonical_shape(phi, u));
    MinorHeights<Fp> h(phi);
    CHECK(compute_u(h) == u);
    CHECK(h.height(n - 1) == 2);
  }
  CHECK_THROWS_AS(generate_instance(2, 4, 1, Fp(), 1), PreconditionError);
  CHECK_THROWS_AS(generate_instance(3, 3, 1, Fp(), 1), PreconditionError);
  CHECK_THROWS_AS(generate_instance(3, 5, 3, Fp(), 1), PreconditionError);
  CHECK(generate_instance(3, 4, 1, Fp(), 11) == generate_instance(3, 4, 1, Fp(), 11));
}

TEST_CASE("specialization of a generated instance") {
  auto phi = generate_instance(3, 5, 1, Fp(), 21);
  auto rings = BlowupRings<Fp>::make(Fp(), {"x1", "x2", "x3"}, 5);
  phi = phi.in_ring(rings.x, 0);
  auto b = jacobian_dual(phi, rings.t, 0);
  auto rees = rees_ideal(phi, rings);
  auto gq = buchberger(rees.fiber);

  // b = 0 drops the first row of B
  auto zero = make_specialization(phi, b, {0, 0});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(zero.b_bar.at(i, j) == b.at(i + 1, j));
  auto det0 = verify_det_identity(zero, b, gq);
  CHECK(det0.identity_all);
  CHECK(det0.selections == 6);

  auto s = specialization_form(phi, b, 5);
  CHECK(avoids_minimal_primes(phi, s.form));
  CHECK(s.phi_bar.block_vars().size() == 2);
  CHECK(s.b_bar.rows() == 2);
  auto xt = BlowupRings<Fp>::make(Fp(), {"x2", "x3"}, 5).xt;
  CHECK(dual_identity_holds(s.phi_bar, s.b_bar.in_ring(xt, 1)));
  CHECK(specialization_sound(phi, s));
  CHECK(verify_specialized_MU(s));
  auto det = verify_det_identity(s, b, gq);
  CHECK(det.identity_all);
  CHECK(det.deficient_in_fiber);

  // random b also satisfy the determinant identity, avoiding or not
  auto other = make_specialization(phi, b, {3, 32000});
  CHECK(verify_det_identity(other, b, gq).identity_all);

}

TEST_CASE("specialized hypotheses are checked") {
  auto bar = ring(QQ(), {"x2", "x3"});
  auto t = Ring<QQ>::make(QQ(), {{{"t1", "t2", "t3"}, BlockRole::t}});
  SpecializationData<QQ> s;
  s.phi_bar = matrix(bar, 3, 2, {"x2", "0", "0", "x2", "0", "0"});
  s.b_bar = matrix(t, 1, 2, {"t1", "t2"});
  CHECK_THROWS_AS(verify_specialized_MU(s), HypothesisError);
}

TEST_CASE("inverse representatives are proportional modulo Q") {
  auto phi = generate_instance(3, 5, 2, Fp(), 3);
  auto rings = BlowupRings<Fp>::make(Fp(), {"x1", "x2", "x3"}, 5);
  phi = phi.in_ring(rings.x, 0);
  auto b = jacobian_dual(phi, rings.t, 0);
  auto gq = buchberger(rees_ideal(phi, rings).fiber);
  auto bc = birationality_check(b, gq);
  REQUIRE(bc.birational);
  CHECK(bc.witness.rows.size() == 2);
  auto inv = inverse_representatives(b, gq);
  CHECK_FALSE(inv.listed.empty());
  CHECK(inv.listed.size() + inv.excluded.size() == 6);
  CHECK(inv.cross_compatible);
  CHECK(inv.excluded_in_fiber);
  bool found = false;
  for (const auto& r : inv.listed) found = found || r.cols == bc.witness.cols;
  CHECK(found);
}

TEST_CASE("main theorem on generated instances") {
  for (auto [d, n, u] : std::vector<std::array<std::size_t, 3>>{{3, 4, 1}, {3, 5, 2}, {4, 5, 1}}) {
    auto phi = generate_instance(d, n, u, Fp(), 100 + d + n + u);
    VerifyOptions o;
    o.seed = 9;
    auto rep = verify_main_theorem(phi, o);
    CHECK(rep.mode == "theorem");
    REQUIRE(rep.u);
    CHECK(*rep.u == u);
    for (const auto& c : rep.claims) {
      INFO(c.name << " " << c.observed.reason);
      CHECK(c.observed.evaluated());
      CHECK(c.consistent());
    }
    for (const auto& f : kFlags) CHECK(rep.claim(f));
    CHECK(rep.budget_notes.empty());
    CHECK(rep.indeg_q == d - 1);
    CHECK(rep.spread == static_cast<int>(d));
    CHECK(rep.sym_dim == static_cast<int>(n));
    CHECK(rep.module_sym_dim == static_cast<int>(n + 1));
    CHECK(rep.consistent());
  }
}

TEST_CASE("main theorem after a coordinate change") {
  auto phi = generate_instance(3, 4, 1, Fp(), 44);
  // x1 -> x1 + 2 x2 + 3 x3 moves the point off (1:0:0)
  ScalarMatrix<Fp> c = ScalarMatrix<Fp>::identity(Fp(), 3);
  c.at(0, 1) = 5;
  c.at(1, 0) = 7;
  auto moved = change_coordinates(phi, c);
  VerifyOptions o;
  auto rep = verify_main_theorem(moved, o);
  CHECK(rep.consistent());
  REQUIRE(rep.point);
  CHECK(rep.flag("birational").value());
  CHECK(rep.flag("fiber_type").value());
}

TEST_CASE("G_d input is checked for the expected form") {
  for (std::size_t d : {3u, 4u}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto phi = generate_generic(d, d + 1, Fp(), seed);
      MinorHeights<Fp> h(phi);
      REQUIRE(check_Gs_ideal(h, d).holds);
      auto rep = verify_main_theorem(phi);
      CHECK(rep.mode == "expected-form");
      CHECK_FALSE(rep.notices.empty());
      CHECK(rep.flag("expected_form").value());
      CHECK(rep.flag("fiber_type").value());
      CHECK_FALSE(rep.flag("birational").evaluated());
      CHECK(rep.consistent());
      CHECK((rep.fiber.empty() || rep.indeg_q == d));
    }
  }
}

TEST_CASE("hypothesis failures") {
  auto rings = BlowupRings<QQ>::make(QQ(), {"x", "y"}, 3);
  // (x^2, xy, y^2) has n = d + 1 = 3 but I_1 is maximal and G_2 holds
  auto phi = matrix(rings.x, 3, 2, {"y", "0", "-x", "y", "0", "-x"});
  auto rep = verify_main_theorem(phi);
  CHECK(rep.mode == "expected-form");
  auto r3 = ring(QQ(), {"x1", "x2", "x3"});
  // I_1 misses x3
  auto bad = matrix(r3, 4, 3, {"x1", "0", "0", "x2", "x1", "0", "0", "x2", "x1", "0", "0", "x2"});
  CHECK_THROWS_AS(verify_main_theorem(bad), HypothesisError);
  auto big = generate_generic(5, 6, Fp(), 1);
  CHECK_THROWS_AS(verify_main_theorem(big), PreconditionError);
}

TEST_CASE("reports are deterministic") {
  auto phi = generate_instance(3, 5, 1, Fp(), 8);
  VerifyOptions o;
  o.seed = 77;
  auto a = verify_main_theorem(phi, o);
  auto b = verify_main_theorem(phi, o);
  CHECK(a.input_hash == b.input_hash);
  CHECK(a.specialization_b == b.specialization_b);
  CHECK(a.fiber == b.fiber);
  CHECK(a.canonical == b.canonical);
  CHECK(input_hash(phi) != input_hash(generate_instance(3, 5, 1, Fp(), 9)));
}
