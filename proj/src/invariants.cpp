#include "blowup/invariants.hpp"

#include <algorithm>

namespace blowup {

template <class K>
BlowupRings<K> BlowupRings<K>::make(const K& field, const std::vector<std::string>& x_names, std::size_t n) {
  BlowupRings r;
  r.d = x_names.size();
  r.n = n;
  std::vector<std::string> t_names;
  for (std::size_t i = 1; i <= n; ++i) t_names.push_back("t" + std::to_string(i));
  for (const auto& x : x_names)
    if (x == "w" || std::find(t_names.begin(), t_names.end(), x) != t_names.end())
      throw PreconditionError("variable name '" + x + "' is reserved");
  r.x = Ring<K>::make(field, {{x_names, BlockRole::x}});
  r.t = Ring<K>::make(field, {{t_names, BlockRole::t}});
  r.xt = Ring<K>::make(field, {{x_names, BlockRole::x}, {t_names, BlockRole::t}});
  std::vector<std::uint32_t> grading(1 + r.d, 1);
  grading.resize(1 + r.d + n, static_cast<std::uint32_t>(n));
  r.wxt = Ring<K>::make(field, {{{"w"}, BlockRole::auxiliary}, {x_names, BlockRole::x}, {t_names, BlockRole::t}},
                        std::nullopt, grading);
  return r;
}

namespace {

template <class K>
LinearMatrix<K> in_own_ring(const LinearMatrix<K>& m) {
  const auto& src = m.ring();
  if (src->blocks().size() == 1) return m;
  std::vector<std::string> names;
  for (auto v : m.block_vars()) names.push_back(src->names()[v]);
  return m.in_ring(Ring<K>::make(src->field(), {{names, src->blocks()[m.block()].role}}), 0);
}

}  // namespace

template <class K>
MinorHeights<K>::MinorHeights(LinearMatrix<K> m, GroebnerBudget budget)
    : m_(in_own_ring(m)), budget_(budget) {}

template <class K>
int MinorHeights<K>::height(std::size_t j) {
  if (j == 0) throw PreconditionError("minor size must be positive");
  if (auto it = heights_.find(j); it != heights_.end()) return it->second;
  int h = blowup::height(minors(m_, j), budget_);
  heights_.emplace(j, h);
  return h;
}

template <class K>
GsProfile check_Gs_module(MinorHeights<K>& heights, std::size_t s, std::size_t e) {
  const long m = static_cast<long>(heights.matrix().rows());
  const long se = static_cast<long>(s), ee = static_cast<long>(e);
  GsProfile p;
  p.s = s;
  p.rank = e;
  for (long j = std::max(1L, m - se - (ee - 2)); j <= m - ee; ++j) {
    HeightCheck c{static_cast<std::size_t>(j), heights.height(static_cast<std::size_t>(j)),
                  static_cast<int>(m - j - (ee - 2))};
    p.checks.push_back(c);
    if (!c.ok() && p.holds) {
      p.holds = false;
      p.failing_j = c.j;
    }
  }
  return p;
}

template <class K>
GsProfile check_Gs_ideal(MinorHeights<K>& heights, std::size_t s) {
  return check_Gs_module(heights, s, 1);
}

template <class K>
std::size_t compute_u(MinorHeights<K>& heights) {
  const std::size_t d = heights.matrix().block_vars().size();
  const std::size_t n = heights.matrix().rows();
  if (n < d + 1) throw HypothesisError("need at least d + 1 generators");
  if (heights.height(1) != static_cast<int>(d)) throw HypothesisError("I_1(phi) is not the maximal ideal");
  if (!check_Gs_ideal(heights, d - 1).holds) throw HypothesisError("phi does not satisfy G_{d-1}");
  if (check_Gs_ideal(heights, d).holds) throw HypothesisError("phi satisfies G_d");
  const int dd = static_cast<int>(d);
  if (heights.height(n - d + 1) != dd - 1)
    throw TheoremViolation("Ht I_{n-d+1}(phi) = " + std::to_string(heights.height(n - d + 1)) + ", expected d-1");
  for (std::size_t u = 1; u <= n - d; ++u) {
    int h = heights.height(u + 1);
    if (h == dd - 1) return u;
    if (h != dd) throw TheoremViolation("Ht I_" + std::to_string(u + 1) + "(phi) = " + std::to_string(h));
  }
  throw TheoremViolation("no u in [1, n-d] with Ht I_{u+1} = d-1");
}

template <class K>
int sym_dimension(const LinearMatrix<K>& psi, const GroebnerBudget& budget) {
  std::vector<std::string> xs;
  for (auto v : psi.block_vars()) xs.push_back(psi.ring()->names()[v]);
  auto rings = BlowupRings<K>::make(psi.ring()->field(), xs, psi.rows());
  return dimension(symmetric_ideal(psi, rings), budget);
}

template <class K>
Ideal<K> symmetric_ideal(const LinearMatrix<K>& phi, const BlowupRings<K>& rings) {
  const auto& r = rings.xt;
  auto ts = r->block_vars(1);
  if (ts.size() != phi.rows()) throw ShapeError("t-block size must equal the number of rows");
  std::vector<Polynomial<K>> gens;
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    Polynomial<K> acc(r);
    for (std::size_t i = 0; i < phi.rows(); ++i)
      acc += Polynomial<K>::variable(r, ts[i]) * map_by_name(phi.at(i, j), r);
    gens.push_back(std::move(acc));
  }
  return Ideal<K>(r, std::move(gens));
}

template <class K>
std::vector<Polynomial<K>> maximal_minor_generators(const LinearMatrix<K>& phi) {
  if (phi.rows() < 2 || phi.cols() + 1 != phi.rows()) throw ShapeError("expected an n x (n-1) matrix");
  return signed_maximal_minors(phi).delta;
}

template <class K>
ReesData<K> rees_from_generators(const BlowupRings<K>& rings, const std::vector<Polynomial<K>>& gens,
                                 const GroebnerBudget& budget, const std::vector<Polynomial<K>>& known) {
  if (gens.size() != rings.n) throw ShapeError("generator count must equal the number of t variables");
  int top = 0;
  for (const auto& g : gens) top = std::max(top, g.total_degree());
  const std::size_t d = rings.d, n = rings.n;
  std::vector<std::uint32_t> grading(1 + d, 1);
  grading.resize(1 + d + n, static_cast<std::uint32_t>(top + 1));
  std::vector<std::size_t> w{0}, xs, ts;
  for (std::size_t i = 0; i < d; ++i) xs.push_back(1 + i);
  for (std::size_t i = 0; i < n; ++i) ts.push_back(1 + d + i);
  auto ring = rings.wxt->with_order(MonomialOrder::product({w, xs, ts}, OrderKind::grevlex, grading), grading);

  auto wv = Polynomial<K>::variable(ring, std::size_t{0});
  std::vector<Polynomial<K>> eqs;
  for (std::size_t i = 0; i < n; ++i)
    eqs.push_back(Polynomial<K>::variable(ring, ts[i]) - wv * map_by_name(gens[i], ring));
  for (const auto& r : known) eqs.push_back(map_by_name(r, ring));
  auto gb = buchberger(Ideal<K>(ring, std::move(eqs)), budget);

  std::vector<Polynomial<K>> j_gens, q_gens;
  for (const auto& g : gb.elements()) {
    bool has_w = false, has_x = false;
    for (const auto& t : g.terms()) {
      has_w = has_w || t.m.e[0];
      for (auto v : xs) has_x = has_x || t.m.e[v];
    }
    if (has_w) continue;
    j_gens.push_back(map_by_name(g, rings.xt));
    if (!has_x) q_gens.push_back(map_by_name(g, rings.t));
  }
  ReesData<K> out{rings, {}, Ideal<K>(rings.xt, std::move(j_gens)), Ideal<K>(rings.t, std::move(q_gens)),
                  gb.stats()};
  for (const auto& g : gens) out.generators.push_back(map_by_name(g, rings.x));
  return out;
}

template <class K>
ReesData<K> rees_ideal(const LinearMatrix<K>& phi, const BlowupRings<K>& rings, const GroebnerBudget& budget,
                       ReesMethod method) {
  auto gens = maximal_minor_generators(phi.in_ring(rings.x, 0));
  auto nonzero = std::find_if(gens.begin(), gens.end(), [](const Polynomial<K>& g) { return !g.is_zero(); });
  if (nonzero == gens.end()) throw PreconditionError("every maximal minor of phi vanishes");
  auto sym = symmetric_ideal(phi, rings);
  ReesData<K> out{rings, gens, {}, {}, {}};
  Ideal<K> j;
  if (method == ReesMethod::saturation) {
    // Sym(I) and Rees(I) agree after inverting a generator of I
    j = saturate(sym, map_by_name(*nonzero, rings.xt), budget, &out.stats);
  } else {
    auto e = rees_from_generators(rings, gens, budget, sym.generators());
    j = e.rees;
    out.stats = e.stats;
  }
  auto gb = buchberger(j, budget);
  out.rees = Ideal<K>(rings.xt, gb.elements());
  if (gb.dimension() != static_cast<int>(rings.d + 1))
    throw TheoremViolation("Rees algebra has dimension " + std::to_string(gb.dimension()) + ", expected d+1");
  out.fiber = contract(eliminate_block(out.rees, 0, budget), rings.t);
  return out;
}

template <class K>
int analytic_spread(const ReesData<K>& rees, const GroebnerBudget& budget) {
  return dimension(rees.fiber, budget);
}

#define BLOWUP_INSTANTIATE(K)                                                                                \
  template struct BlowupRings<K>;                                                                            \
  template class MinorHeights<K>;                                                                            \
  template GsProfile check_Gs_module(MinorHeights<K>&, std::size_t, std::size_t);                            \
  template GsProfile check_Gs_ideal(MinorHeights<K>&, std::size_t);                                          \
  template std::size_t compute_u(MinorHeights<K>&);                                                          \
  template int sym_dimension(const LinearMatrix<K>&, const GroebnerBudget&);                                 \
  template Ideal<K> symmetric_ideal(const LinearMatrix<K>&, const BlowupRings<K>&);                          \
  template std::vector<Polynomial<K>> maximal_minor_generators(const LinearMatrix<K>&);                      \
  template ReesData<K> rees_from_generators(const BlowupRings<K>&, const std::vector<Polynomial<K>>&,        \
                                            const GroebnerBudget&, const std::vector<Polynomial<K>>&);       \
  template ReesData<K> rees_ideal(const LinearMatrix<K>&, const BlowupRings<K>&, const GroebnerBudget&, ReesMethod);     \
  template int analytic_spread(const ReesData<K>&, const GroebnerBudget&);

BLOWUP_INSTANTIATE(RationalField)
BLOWUP_INSTANTIATE(PrimeField)

}  // namespace blowup
