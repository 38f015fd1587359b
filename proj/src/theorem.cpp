#include "blowup/theorem.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

namespace blowup {

std::string Flag::to_string() const {
  switch (state) {
    case State::yes: return "true";
    case State::no: return "false";
    default: return "not-evaluated";
  }
}

const Claim* VerificationReport::claim(const std::string& name) const {
  for (const auto& c : claims)
    if (c.name == name) return &c;
  return nullptr;
}

Flag VerificationReport::flag(const std::string& name) const {
  if (auto c = claim(name)) return c->observed;
  return Flag::skipped("not part of this report");
}

bool VerificationReport::consistent() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.consistent(); });
}

std::optional<std::vector<std::uint32_t>> find_point(const Ideal<PrimeField>& j, std::uint64_t point_cap) {
  if (!j.is_homogeneous()) throw PreconditionError("find_point needs a homogeneous ideal");
  const std::size_t d = j.ring()->num_vars();
  const std::uint32_t p = j.ring()->field().modulus();
  std::uint64_t tried = 0;
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::vector<std::uint32_t> pt(d, 0);
    pt[lead] = 1;
    for (;;) {
      if (++tried > point_cap)
        throw BudgetExceeded("point search passed the cap of " + std::to_string(point_cap) + " points");
      bool zero = std::all_of(j.generators().begin(), j.generators().end(),
                              [&](const Polynomial<PrimeField>& g) { return evaluate(g, pt) == 0; });
      if (zero) return pt;
      bool carry = true;
      for (std::size_t i = d; carry && i-- > lead + 1;) {
        if (++pt[i] == p)
          pt[i] = 0;
        else
          carry = false;
      }
      if (carry) break;
    }
  }
  return std::nullopt;
}

namespace {

using FpPoly = Polynomial<PrimeField>;

FpPoly fix_variable(const FpPoly& g, std::size_t v, std::uint32_t c) {
  const auto& k = g.field();
  std::vector<Term<PrimeField>> ts;
  for (auto t : g.terms()) {
    for (auto e = t.m.e[v]; e > 0; --e) t.c = k.mul(t.c, c);
    t.m.e[v] = 0;
    if (t.c) ts.push_back(t);
  }
  return FpPoly::from_terms(g.ring(), std::move(ts));
}

// Assigns variables last to first; under lex the basis contains the eliminant in the
// last unassigned variable whenever that variable is constrained.
bool solve_affine(const RingPtr<PrimeField>& ring, std::vector<FpPoly> eqs, std::size_t unassigned,
                  std::vector<std::uint32_t>& values, std::size_t free_values, const GroebnerBudget& budget) {
  auto gb = buchberger(Ideal<PrimeField>(ring, std::move(eqs)), budget);
  if (gb.is_unit()) return false;
  if (unassigned == 0) return true;
  const std::size_t v = unassigned - 1;
  std::optional<FpPoly> eliminant;
  for (const auto& g : gb.elements()) {
    bool only_v = std::all_of(g.terms().begin(), g.terms().end(), [&](const Term<PrimeField>& t) {
      return support_mask(t.m) == 0 || support_mask(t.m) == (1u << v);
    });
    if (only_v) eliminant = g;
  }
  const std::uint32_t p = ring->field().modulus();
  const std::uint64_t limit = eliminant ? p : std::min<std::uint64_t>(p, free_values);
  std::vector<std::uint32_t> probe(ring->num_vars(), 0);
  for (std::uint64_t c = 0; c < limit; ++c) {
    probe[v] = static_cast<std::uint32_t>(c);
    if (eliminant && evaluate(*eliminant, probe) != 0) continue;
    std::vector<FpPoly> rest;
    for (const auto& g : gb.elements()) rest.push_back(fix_variable(g, v, probe[v]));
    values[v] = probe[v];
    if (solve_affine(ring, std::move(rest), v, values, free_values, budget)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> solve_point(const Ideal<PrimeField>& j, std::size_t free_values,
                                                      const GroebnerBudget& budget) {
  if (!j.is_homogeneous()) throw PreconditionError("solve_point needs a homogeneous ideal");
  const std::size_t d = j.ring()->num_vars();
  auto lex = j.ring()->with_order(MonomialOrder::lex(d));
  for (std::size_t lead = 0; lead < d; ++lead) {
    // chart x_lead = 1 and x_i = 0 for i < lead
    std::vector<FpPoly> eqs;
    for (const auto& g : j.generators()) {
      auto h = g.reordered(lex);
      for (std::size_t i = 0; i < lead; ++i) h = fix_variable(h, i, 0);
      eqs.push_back(fix_variable(h, lead, 1));
    }
    std::vector<std::uint32_t> values(d, 0);
    if (solve_affine(lex, std::move(eqs), d, values, free_values, budget)) {
      for (std::size_t i = 0; i <= lead; ++i) values[i] = i == lead ? 1 : 0;
      return values;
    }
  }
  return std::nullopt;
}

namespace {

PrimeField::Element draw(const PrimeField& k, std::mt19937_64& rng) {
  return static_cast<PrimeField::Element>(rng() % k.modulus());
}

RationalField::Element draw(const RationalField& k, std::mt19937_64& rng) {
  return k.from_int(static_cast<long long>(rng() % 19) - 9);
}

template <class K>
std::vector<std::string> block_names(const LinearMatrix<K>& m) {
  std::vector<std::string> out;
  for (auto v : m.block_vars()) out.push_back(m.ring()->names()[v]);
  return out;
}

template <class K>
Ideal<K> mapped(const Ideal<K>& i, const RingPtr<K>& target) {
  std::vector<Polynomial<K>> gens;
  for (const auto& g : i.generators()) gens.push_back(map_by_name(g, target));
  return Ideal<K>(target, std::move(gens));
}

template <class K>
Polynomial<K> linear_form(const RingPtr<K>& r, const std::vector<std::string>& vars,
                          const std::vector<typename K::Element>& coeffs) {
  std::vector<Term<K>> ts;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!K::is_zero(coeffs[i])) ts.push_back({Monomial::variable(r->require_index(vars[i])), coeffs[i]});
  return Polynomial<K>::from_terms(r, std::move(ts));
}

// x1 -> b_2 x2 + ... + b_d xd, into k[x2..xd]
template <class K>
Polynomial<K> specialize(const Polynomial<K>& p, const std::string& x1, const RingPtr<K>& bar,
                         const std::vector<typename K::Element>& b) {
  std::map<std::string, Polynomial<K>> images;
  images.emplace(x1, linear_form(bar, bar->names(), b));
  return substitute(p, images, bar);
}

template <class K>
std::vector<std::pair<Ideal<K>, int>> prime_avoidance_targets(const LinearMatrix<K>& phi,
                                                              const GroebnerBudget& budget) {
  const std::size_t d = phi.block_vars().size(), n = phi.rows();
  std::vector<std::pair<Ideal<K>, int>> out;
  for (std::size_t j = n - d + 2; j <= n - 1; ++j) {
    auto i = minors(phi, j);
    out.emplace_back(i, height(i, budget));
  }
  return out;
}

template <class K>
bool avoids(const std::vector<std::pair<Ideal<K>, int>>& targets, const Polynomial<K>& form,
            const GroebnerBudget& budget) {
  for (const auto& [i, h] : targets)
    if (height(i + Ideal<K>(i.ring(), {form}), budget) != h + 1) return false;
  return true;
}

}  // namespace

template <class K>
bool is_fiber_type(const ReesData<K>& rees, const Ideal<K>& sym, const GroebnerBudget& budget) {
  return ideal_equal(rees.rees, sym + mapped(rees.fiber, sym.ring()), budget);
}

template <class K>
bool is_expected_form(const ReesData<K>& rees, const Ideal<K>& sym, const LinearMatrix<K>& b,
                      const GroebnerBudget& budget) {
  return ideal_equal(rees.rees, sym + minors(b.in_ring(sym.ring(), 1), b.rows()), budget);
}

template <class K>
BirationalityResult birationality_check(const LinearMatrix<K>& b, const GroebnerBasis<K>& q) {
  if (q.is_unit()) throw PreconditionError("the fiber ideal must be proper");
  BirationalityResult out;
  const std::size_t d = b.rows();
  out.rank = rank_mod(b, &q);
  out.birational = out.rank + 1 >= d;
  if (!out.birational || d < 2) return out;
  MinorCache<K> cache(b);
  for (const auto& rows : subsets(d, d - 1))
    for (const auto& cols : subsets(b.cols(), d - 1))
      if (!q.normal_form(cache.minor(rows, cols)).is_zero()) {
        out.witness = {rows, cols};
        return out;
      }
  throw TheoremViolation("rank modulo Q is at least d-1 but every (d-1)-minor lies in Q");
}

template <class K>
InverseData<K> inverse_representatives(const LinearMatrix<K>& b, const GroebnerBasis<K>& q) {
  if (q.is_unit()) throw PreconditionError("the fiber ideal must be proper");
  const std::size_t d = b.rows();
  InverseData<K> out;
  for (const auto& cols : subsets(b.cols(), d - 1)) {
    auto delta = signed_maximal_minors(b.select_columns(cols)).delta;
    bool outside = std::any_of(delta.begin(), delta.end(), [&](const Polynomial<K>& p) { return !q.contains(p); });
    if (outside)
      out.listed.push_back({cols, std::move(delta)});
    else
      out.excluded.push_back(cols);
  }
  if (out.listed.empty()) throw TheoremViolation("no d x (d-1) submatrix of B has rank d-1 modulo Q");
  for (std::size_t a = 0; a < out.listed.size() && out.cross_compatible; ++a)
    for (std::size_t c = a + 1; c < out.listed.size() && out.cross_compatible; ++c) {
      const auto& x = out.listed[a].delta;
      const auto& y = out.listed[c].delta;
      for (std::size_t i = 0; i < d && out.cross_compatible; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          if (!q.contains(x[i] * y[j] - x[j] * y[i])) {
            out.cross_compatible = false;
            break;
          }
    }
  return out;
}

template <class K>
SpecializationData<K> make_specialization(const LinearMatrix<K>& phi, const LinearMatrix<K>& b_matrix,
                                          std::vector<typename K::Element> b) {
  const auto& r = phi.ring();
  const K& k = r->field();
  auto names = block_names(phi);
  const std::size_t d = names.size(), n = phi.rows();
  if (d < 2) throw PreconditionError("specialization needs at least two variables");
  if (b.size() != d - 1) throw PreconditionError("need one coefficient per variable x2..xd");
  if (b_matrix.rows() != d || b_matrix.cols() != phi.cols()) throw ShapeError("B must be d x (n-1)");

  SpecializationData<K> s;
  std::vector<std::string> rest(names.begin() + 1, names.end());
  auto bar = Ring<K>::make(k, {{rest, BlockRole::x}});
  std::vector<typename K::Element> form_coeffs{k.one()};
  for (const auto& c : b) form_coeffs.push_back(k.neg(c));
  s.form = linear_form(r, names, form_coeffs);

  std::vector<Polynomial<K>> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) entries.push_back(specialize(phi.at(i, j), names[0], bar, b));
  s.phi_bar = LinearMatrix<K>(bar, 0, n, phi.cols(), std::move(entries));

  std::vector<Polynomial<K>> rows;
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = 0; j < b_matrix.cols(); ++j)
      rows.push_back(b_matrix.at(i + 1, j) + b_matrix.at(0, j).scaled(b[i]));
  s.b_bar = LinearMatrix<K>(b_matrix.ring(), b_matrix.block(), d - 1, b_matrix.cols(), std::move(rows));
  s.b = std::move(b);
  return s;
}

template <class K>
bool avoids_minimal_primes(const LinearMatrix<K>& phi, const Polynomial<K>& form, const GroebnerBudget& budget) {
  return avoids(prime_avoidance_targets(phi, budget), form, budget);
}

template <class K>
SpecializationData<K> specialization_form(const LinearMatrix<K>& phi, const LinearMatrix<K>& b_matrix,
                                          std::uint64_t seed, std::size_t max_tries, const GroebnerBudget& budget) {
  const K& k = phi.ring()->field();
  const std::size_t d = phi.block_vars().size();
  auto targets = prime_avoidance_targets(phi, budget);
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<typename K::Element> b(d - 1, k.zero());
    if (attempt > 0)
      for (auto& c : b) c = draw(k, rng);
    auto s = make_specialization(phi, b_matrix, std::move(b));
    if (avoids(targets, s.form, budget)) {
      s.attempts = attempt + 1;
      return s;
    }
  }
  throw BudgetExceeded("no specializing linear form found in " + std::to_string(max_tries) + " tries");
}

template <class K>
bool verify_specialized_MU(const SpecializationData<K>& s, const GroebnerBudget& budget) {
  const auto& pb = s.phi_bar;
  const std::size_t n = pb.rows(), dbar = pb.block_vars().size();
  MinorHeights<K> h(pb, budget);
  if (h.height(n - 1) != 2) throw HypothesisError("the specialized ideal does not have height 2");
  if (!check_Gs_ideal(h, dbar).holds) throw HypothesisError("the specialized ideal does not satisfy G_{d-1}");
  auto rings = BlowupRings<K>::make(pb.ring()->field(), block_names(pb), n);
  auto rees = rees_ideal(pb, rings, budget);
  auto expected = symmetric_ideal(pb, rings) + minors(s.b_bar.in_ring(rings.xt, 1), dbar);
  return ideal_equal(rees.rees, expected, budget);
}

template <class K>
bool specialization_sound(const LinearMatrix<K>& phi, const SpecializationData<K>& s, const GroebnerBudget& budget) {
  const auto& bar = s.phi_bar.ring();
  const auto x1 = phi.ring()->names()[phi.block_vars()[0]];
  std::vector<Polynomial<K>> image;
  for (const auto& g : maximal_minor_generators(phi)) image.push_back(specialize(g, x1, bar, s.b));
  return ideal_equal(Ideal<K>(bar, std::move(image)), Ideal<K>(bar, maximal_minor_generators(s.phi_bar)), budget);
}

template <class K>
DetIdentityResult verify_det_identity(const SpecializationData<K>& s, const LinearMatrix<K>& b,
                                      const GroebnerBasis<K>& q) {
  const std::size_t d = b.rows();
  DetIdentityResult out;
  for (const auto& cols : subsets(b.cols(), d - 1)) {
    ++out.selections;
    auto delta = signed_maximal_minors(b.select_columns(cols)).delta;
    auto lhs = determinant(s.b_bar.select_columns(cols));
    auto rhs = delta[0];
    for (std::size_t i = 1; i < d; ++i) rhs -= delta[i].scaled(s.b[i - 1]);
    out.identity_all = out.identity_all && lhs == rhs;
    bool deficient = std::all_of(delta.begin(), delta.end(), [&](const Polynomial<K>& p) { return q.contains(p); });
    if (deficient) {
      ++out.deficient;
      out.deficient_in_fiber = out.deficient_in_fiber && q.contains(lhs);
    }
  }
  return out;
}

namespace {

template <class K>
RingPtr<K> x_ring(const K& field, std::size_t d) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  return Ring<K>::make(field, {{names, BlockRole::x}});
}

template <class K>
Polynomial<K> random_form(const RingPtr<K>& r, std::mt19937_64& rng, std::size_t first_var) {
  std::vector<Term<K>> ts;
  for (std::size_t v = first_var; v < r->num_vars(); ++v) {
    auto c = draw(r->field(), rng);
    if (!K::is_zero(c)) ts.push_back({Monomial::variable(v), c});
  }
  return Polynomial<K>::from_terms(r, std::move(ts));
}

}  // namespace

template <class K>
LinearMatrix<K> generate_instance(std::size_t d, std::size_t n, std::size_t u, const K& field, std::uint64_t seed,
                                  std::size_t max_tries, const GroebnerBudget& budget) {
  if (d < 3 || d > kMaxVars) throw PreconditionError("need 3 <= d <= 32");
  if (n < d + 1) throw PreconditionError("need n >= d + 1");
  if (u < 1 || u > n - d) throw PreconditionError("need 1 <= u <= n - d");
  auto r = x_ring(field, d);
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<Polynomial<K>> es;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j) {
        auto e = random_form(r, rng, 1);
        if (i == j && i < u) e += Polynomial<K>::variable(r, std::size_t{0});
        es.push_back(std::move(e));
      }
    LinearMatrix<K> m(r, 0, n, n - 1, std::move(es));
    MinorHeights<K> h(m, budget);
    if (h.height(1) != static_cast<int>(d) || h.height(n - 1) != 2 || !check_Gs_ideal(h, d - 1).holds) continue;
    if (check_Gs_ideal(h, d).holds) throw TheoremViolation("a matrix of the generated shape satisfies G_d");
    if (compute_u(h) == u) return m;
  }
  throw BudgetExceeded("no instance accepted in " + std::to_string(max_tries) + " tries");
}

template <class K>
LinearMatrix<K> generate_generic(std::size_t d, std::size_t n, const K& field, std::uint64_t seed) {
  if (d < 1 || d > kMaxVars || n < 2) throw PreconditionError("need 1 <= d <= 32 and n >= 2");
  auto r = x_ring(field, d);
  std::mt19937_64 rng(seed);
  std::vector<Polynomial<K>> es;
  for (std::size_t i = 0; i < n * (n - 1); ++i) es.push_back(random_form(r, rng, 0));
  return LinearMatrix<K>(r, 0, n, n - 1, std::move(es));
}

template <class K>
std::uint64_t input_hash(const LinearMatrix<K>& phi) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  feed(phi.ring()->field().descriptor().to_string());
  for (const auto& name : block_names(phi)) feed(name);
  for (const auto& row : phi.to_strings()) {
    for (const auto& e : row) feed(e);
    feed("\n");
  }
  return h;
}

namespace {

template <class K>
std::vector<std::string> strings(const std::vector<Polynomial<K>>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

class Stages {
 public:
  explicit Stages(VerificationReport& rep) : rep_(rep) {}

  void claim(std::string name, Flag f, bool expected = true) {
    rep_.claims.push_back({std::move(name), std::move(f), expected});
  }

  // Runs `fn`; on a budget overrun the claims in `covers` that `fn` did not record are
  // marked not evaluated. Budget overruns in essential stages propagate.
  bool run(const std::string& name, const std::vector<std::pair<std::string, bool>>& covers,
           const std::function<void()>& fn, bool essential = false) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      fn();
    } catch (const BudgetExceeded& e) {
      if (essential) throw;
      ok = false;
      rep_.budget_notes.push_back(name + ": " + e.what());
      skip(covers, std::string("budget exceeded in ") + name);
    }
    rep_.timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return ok;
  }

  void skip(const std::vector<std::pair<std::string, bool>>& covers, const std::string& why) {
    for (const auto& [n, expected] : covers)
      if (!rep_.claim(n)) claim(n, Flag::skipped(why), expected);
  }

 private:
  VerificationReport& rep_;
};

template <class K>
void expected_form_path(VerificationReport& rep, Stages& st, const LinearMatrix<K>& phi, const BlowupRings<K>& rings,
                        const VerifyOptions& o) {
  const std::size_t d = rings.d;
  rep.mode = "expected-form";
  rep.notices.push_back("input satisfies G_d; the G_{d-1}-not-G_d hypothesis fails, checking the expected form instead");
  ReesData<K> rees;
  st.run("rees", {}, [&] { rees = rees_ideal(phi, rings, o.budget, o.rees_method); }, true);
  rep.rees_dim = static_cast<int>(d + 1);
  rep.rees_stats = rees.stats;
  auto b = jacobian_dual(phi, rings.t, 0);
  rep.dual = b.to_strings();
  std::optional<GroebnerBasis<K>> gq;
  st.run("fiber", {}, [&] {
    rep.spread = analytic_spread(rees, o.budget);
    gq = buchberger(rees.fiber, o.budget);
    rep.fiber = strings(gq->elements());
    rep.indeg_q = gq->initial_degree();
    rep.rank_b = rank_mod(b, static_cast<const GroebnerBasis<K>*>(nullptr));
  }, true);
  auto sym = symmetric_ideal(phi, rings);
  st.run("expected_form", {{"expected_form", true}, {"fiber_type", true}}, [&] {
    st.claim("expected_form", Flag::of(is_expected_form(rees, sym, b, o.budget)));
    st.claim("fiber_type", Flag::of(is_fiber_type(rees, sym, o.budget)));
  });
  st.claim("minors_B_in_Q", Flag::of(gq->contains(minors(b, d))));
  st.claim("indeg_Q_is_d", Flag::of(gq->is_zero() || rep.indeg_q == d));
  const std::string why = "input satisfies G_d";
  st.skip({{"birational", true}, {"det_identity_all", true}, {"specialization_MU", true}}, why);
}

}  // namespace

template <class K>
VerificationReport verify_main_theorem(const LinearMatrix<K>& phi_in, const VerifyOptions& o,
                                       std::optional<std::vector<typename K::Element>> point) {
  const K& k = phi_in.ring()->field();
  const auto names = block_names(phi_in);
  const std::size_t d = names.size(), n = phi_in.rows();
  if (n < 2 || phi_in.cols() + 1 != n) throw ShapeError("expected an n x (n-1) matrix");
  if (d > o.max_d || n > o.max_n)
    throw PreconditionError("instance exceeds the size caps d <= " + std::to_string(o.max_d) +
                            ", n <= " + std::to_string(o.max_n));

  VerificationReport rep;
  rep.field = k.descriptor().to_string();
  rep.variables = names;
  rep.input = phi_in.to_strings();
  rep.input_hash = input_hash(phi_in);
  rep.seed = o.seed;
  rep.d = d;
  rep.n = n;
  Stages st(rep);

  auto rings = BlowupRings<K>::make(k, names, n);
  auto phi = phi_in.in_ring(rings.x, 0);
  MinorHeights<K> h(phi, o.budget);
  st.run("heights", {}, [&] {
    for (std::size_t j = 1; j < n; ++j) rep.heights[j] = h.height(j);
    for (std::size_t s = 1; s <= d; ++s) rep.gs[s] = check_Gs_ideal(h, s).holds;
  }, true);
  for (std::size_t j = 1; j + 1 < n; ++j)
    if (rep.heights[j + 1] > rep.heights[j]) throw TheoremViolation("heights of the minor ideals are not monotone");

  if (n < d + 1) throw HypothesisError("need at least d + 1 generators");
  if (rep.heights[1] != static_cast<int>(d)) throw HypothesisError("I_1(phi) is not the maximal ideal");
  if (rep.heights[n - 1] != 2) throw HypothesisError("I_{n-1}(phi) does not have height 2");
  if (d >= 2 && !rep.gs[d - 1]) throw HypothesisError("phi does not satisfy G_{d-1}");
  if (rep.gs[d]) {
    expected_form_path(rep, st, phi, rings, o);
    return rep;
  }
  rep.mode = "theorem";

  const std::size_t u = compute_u(h);
  rep.u = u;
  st.claim("u_in_range", Flag::of(u >= 1 && u <= n - d));
  st.claim("height_I_n_minus_d_plus_1_is_d_minus_1", Flag::of(h.height(n - d + 1) == static_cast<int>(d) - 1));

  std::vector<typename K::Element> pt;
  if (point) {
    pt = *point;
  } else if (phi.coefficient_matrix(0).rank() <= u) {
    pt.assign(d, k.zero());
    pt[0] = k.one();
  } else if constexpr (std::is_same_v<K, PrimeField>) {
    std::optional<std::vector<std::uint32_t>> found;
    st.run("find_point", {}, [&] {
      auto ideal = minors(phi, u + 1);
      double points = 0;
      for (std::size_t i = 0; i < d; ++i) points = points * k.modulus() + 1;
      found = points <= static_cast<double>(o.point_cap) ? find_point(ideal, o.point_cap)
                                                         : solve_point(ideal, 64, o.budget);
    }, true);
    if (!found) throw PreconditionError("V(I_{u+1}(phi)) has no point over the prime field");
    pt = *found;
  } else {
    throw PreconditionError("over QQ the input must be in canonical shape or come with a point");
  }
  rep.point.emplace();
  for (const auto& c : pt) rep.point->push_back(Polynomial<K>::constant(rings.x, c).to_string());

  auto cf = canonical_form(phi, pt, u);
  if (cf.u != u) throw TheoremViolation("rank of phi at the point differs from u");
  const auto& phic = cf.matrix;
  rep.canonical = phic.to_strings();

  auto bxt = jacobian_dual(phic, rings.xt, 1);
  st.claim("dual_identity", Flag::of(dual_identity_holds(phic, bxt)));
  auto b = bxt.in_ring(rings.t, 0);
  rep.dual = b.to_strings();
  {
    bool ok = true;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto want = j < u ? Polynomial<K>::variable(rings.t, j) : Polynomial<K>(rings.t);
      ok = ok && b.at(0, j) == want;
    }
    st.claim("dual_first_row", Flag::of(ok));
  }
  std::vector<std::size_t> rows_b, cols_b;
  for (std::size_t i = 1; i < d; ++i) rows_b.push_back(i);
  for (std::size_t j = u; j < n - 1; ++j) cols_b.push_back(j);
  auto bprime = b.submatrix(rows_b, cols_b);

  st.run("sym_dim", {{"sym_dim_is_n", true}}, [&] {
    rep.sym_dim = sym_dimension(phic, o.budget);
    st.claim("sym_dim_is_n", Flag::of(*rep.sym_dim == static_cast<int>(n)));
  });

  ReesData<K> rees;
  st.run("rees", {}, [&] { rees = rees_ideal(phic, rings, o.budget, o.rees_method); }, true);
  rep.rees_dim = static_cast<int>(d + 1);
  rep.rees_stats = rees.stats;

  std::optional<GroebnerBasis<K>> gq;
  st.run("fiber", {}, [&] {
    rep.spread = analytic_spread(rees, o.budget);
    gq = buchberger(rees.fiber, o.budget);
  }, true);
  rep.fiber = strings(gq->elements());
  rep.indeg_q = gq->initial_degree();
  st.claim("spread_is_d", Flag::of(*rep.spread == static_cast<int>(d)));

  const GroebnerBasis<K>* none = nullptr;
  rep.rank_b = rank_mod(b, none);
  rep.rank_b_prime = rank_mod(bprime, none);
  st.claim("rank_B_is_d", Flag::of(*rep.rank_b == d));
  st.claim("rank_Bprime_is_d_minus_1", Flag::of(*rep.rank_b_prime == d - 1));
  st.claim("minors_Bprime_in_Q", Flag::of(gq->contains(minors(bprime, d - 1))));
  st.claim("minors_B_in_Q", Flag::of(gq->contains(minors(b, d))));
  st.claim("indeg_Q_is_d_minus_1", Flag::of(rep.indeg_q == d - 1));

  auto sym = symmetric_ideal(phic, rings);
  st.run("fiber_type", {{"fiber_type", true}}, [&] {
    st.claim("fiber_type", Flag::of(is_fiber_type(rees, sym, o.budget)));
  });
  st.run("expected_form", {{"expected_form_contained", true}, {"expected_form", false}}, [&] {
    auto expected = sym + minors(b.in_ring(rings.xt, 1), d);
    st.claim("expected_form_contained", Flag::of(ideal_contains(rees.rees, expected, o.budget)));
    // proper because Q has a generator of degree d-1 while I_d(B) starts in degree d
    bool equal = is_expected_form(rees, sym, b, o.budget);
    st.claim("expected_form", Flag::of(equal), false);
  });

  BirationalityResult bir;
  st.run("birational", {{"birational", true}}, [&] {
    bir = birationality_check(b, *gq);
    rep.rank_b_mod_q = bir.rank;
    if (bir.birational) rep.birational_witness = bir.witness;
    st.claim("birational", Flag::of(bir.birational));
  });

  st.run("inverse_representatives",
         {{"inverse_representatives_nonempty", true}, {"witness_listed", true}, {"inverse_cross_compatible", true},
          {"excluded_selections_in_Q", true}},
         [&] {
           try {
             auto inv = inverse_representatives(b, *gq);
             st.claim("inverse_representatives_nonempty", Flag::of(true));
             bool listed = false;
             for (const auto& r : inv.listed) {
               rep.inverse_representatives.push_back({r.cols, strings(r.delta)});
               listed = listed || r.cols == bir.witness.cols;
             }
             st.claim("witness_listed", bir.birational ? Flag::of(listed) : Flag::skipped("not birational"));
             st.claim("inverse_cross_compatible", Flag::of(inv.cross_compatible));
             st.claim("excluded_selections_in_Q", Flag::of(inv.excluded_in_fiber));
           } catch (const TheoremViolation& e) {
             st.claim("inverse_representatives_nonempty", Flag::of(false, e.what()));
           }
         });

  const std::vector<std::pair<std::string, bool>> spec_claims{{"specialization_sound", true},
                                                              {"specialization_MU", true},
                                                              {"det_identity_all", true},
                                                              {"deficient_dets_in_Q", true}};
  st.run("specialization", spec_claims, [&] {
    auto s = specialization_form(phic, b, o.seed, o.specialization_tries, o.budget);
    for (const auto& c : s.b) rep.specialization_b.push_back(Polynomial<K>::constant(rings.x, c).to_string());
    rep.specialization_form = s.form.to_string();
    st.claim("specialization_sound", Flag::of(specialization_sound(phic, s, o.budget)));
    try {
      st.claim("specialization_MU", Flag::of(verify_specialized_MU(s, o.budget)));
    } catch (const HypothesisError& e) {
      st.claim("specialization_MU", Flag::of(false, e.what()));
    }
    auto det = verify_det_identity(s, b, *gq);
    st.claim("det_identity_all", Flag::of(det.identity_all));
    st.claim("deficient_dets_in_Q", Flag::of(det.deficient_in_fiber));
  });

  st.run("module", {{"module_G_d_minus_1", true}, {"module_sym_dim_is_n_plus_1", true}}, [&] {
    auto phiu = phic.drop_columns(u);
    MinorHeights<K> hm(phiu, o.budget);
    rep.module_gs = check_Gs_module(hm, d - 1, u + 1);
    st.claim("module_G_d_minus_1", Flag::of(rep.module_gs->holds));
    rep.module_sym_dim = sym_dimension(phiu, o.budget);
    st.claim("module_sym_dim_is_n_plus_1", Flag::of(*rep.module_sym_dim == static_cast<int>(n + 1)));
  });

  st.run("open_questions", {}, [&] {
    rep.open_questions["fiber_is_minors_of_Bprime"] =
        Flag::of(ideal_equal(rees.fiber, minors(bprime, d - 1), o.budget));
  });
  return rep;
}

#define BLOWUP_INSTANTIATE(K)                                                                                   \
  template bool is_fiber_type(const ReesData<K>&, const Ideal<K>&, const GroebnerBudget&);                      \
  template bool is_expected_form(const ReesData<K>&, const Ideal<K>&, const LinearMatrix<K>&,                   \
                                 const GroebnerBudget&);                                                        \
  template BirationalityResult birationality_check(const LinearMatrix<K>&, const GroebnerBasis<K>&);            \
  template InverseData<K> inverse_representatives(const LinearMatrix<K>&, const GroebnerBasis<K>&);             \
  template SpecializationData<K> make_specialization(const LinearMatrix<K>&, const LinearMatrix<K>&,            \
                                                     std::vector<K::Element>);                                  \
  template bool avoids_minimal_primes(const LinearMatrix<K>&, const Polynomial<K>&, const GroebnerBudget&);     \
  template SpecializationData<K> specialization_form(const LinearMatrix<K>&, const LinearMatrix<K>&,            \
                                                     std::uint64_t, std::size_t, const GroebnerBudget&);        \
  template bool verify_specialized_MU(const SpecializationData<K>&, const GroebnerBudget&);                     \
  template bool specialization_sound(const LinearMatrix<K>&, const SpecializationData<K>&,                      \
                                     const GroebnerBudget&);                                                    \
  template DetIdentityResult verify_det_identity(const SpecializationData<K>&, const LinearMatrix<K>&,          \
                                                 const GroebnerBasis<K>&);                                      \
  template LinearMatrix<K> generate_instance(std::size_t, std::size_t, std::size_t, const K&, std::uint64_t,    \
                                             std::size_t, const GroebnerBudget&);                               \
  template LinearMatrix<K> generate_generic(std::size_t, std::size_t, const K&, std::uint64_t);                 \
  template std::uint64_t input_hash(const LinearMatrix<K>&);                                                    \
  template VerificationReport verify_main_theorem(const LinearMatrix<K>&, const VerifyOptions&,                 \
                                                  std::optional<std::vector<K::Element>>);

BLOWUP_INSTANTIATE(RationalField)
BLOWUP_INSTANTIATE(PrimeField)

}  // namespace blowup
