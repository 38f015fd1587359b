#include "blowup/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

#include "blowup/kernels.hpp"

namespace blowup {

GroebnerBudget GroebnerBudget::from_env() {
  GroebnerBudget b;
  if (const char* s = std::getenv("BLOWUP_MAX_PAIRS")) {
    long long v = std::atoll(s);
    if (v > 0) b.max_pairs = static_cast<std::size_t>(v);
  }
  if (const char* s = std::getenv("BLOWUP_MAX_DEGREE")) {
    long long v = std::atoll(s);
    if (v > 0 && v < 256) b.max_degree = static_cast<unsigned>(v);
  }
  return b;
}

// ---------------------------------------------------------------- Ideal

template <class K>
Ideal<K>::Ideal(RingPtr<K> ring, std::vector<Polynomial<K>> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (g.ring() != ring_ && !g.ring()->equivalent(*ring_))
      throw AmbientMismatch("ideal generator lives in another ring");
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) homogeneous_ = false;
    generators_.push_back(std::move(g));
  }
}

template <class K>
Ideal<K> Ideal<K>::reordered(RingPtr<K> target) const {
  std::vector<Polynomial<K>> gens;
  gens.reserve(generators_.size());
  for (const auto& g : generators_) gens.push_back(g.reordered(target));
  return Ideal(std::move(target), std::move(gens));
}

template <class K>
Ideal<K> Ideal<K>::operator+(const Ideal& other) const {
  if (ring_ != other.ring_ && !ring_->equivalent(*other.ring_))
    throw AmbientMismatch("sum of ideals in different rings");
  auto gens = generators_;
  gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
  return Ideal(ring_, std::move(gens));
}

// ---------------------------------------------------------------- reduction

namespace {

template <class K>
std::uint64_t sugar_of(const Polynomial<K>& p) {
  std::uint64_t s = 0;
  for (const auto& t : p.terms()) s = std::max(s, p.ring()->weighted_degree(t.m));
  return s;
}

/// Sum of sorted term runs of geometrically growing size. Each run is ascending, so the
/// largest term sits at the back.
template <class K>
class GeoBucket {
 public:
  GeoBucket(const K& k, const MonomialOrder& ord) : k_(k), ord_(ord) {}

  /// this += c * m * (terms of g from index `from` on)
  void add(const typename K::Element& c, const Monomial& m, const Polynomial<K>& g, std::size_t from) {
    const auto& gt = g.terms();
    if (from >= gt.size()) return;
    std::vector<Term<K>> run;
    run.reserve(gt.size() - from);
    const bool unit = K::is_one(c);
    const bool plain = m.is_one();
    for (std::size_t i = gt.size(); i-- > from;)
      run.push_back({plain ? gt[i].m : gt[i].m * m, unit ? gt[i].c : k_.mul(c, gt[i].c)});
    insert(std::move(run));
  }

  /// Adds terms given in descending order.
  void add_terms(const std::vector<Term<K>>& desc, std::size_t from = 0) {
    if (from >= desc.size()) return;
    std::vector<Term<K>> run(desc.rbegin(), desc.rend() - static_cast<std::ptrdiff_t>(from));
    insert(std::move(run));
  }

  /// Largest surviving term, or nullptr when the sum is zero.
  Term<K>* lead() {
    while (true) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(runs_.size()); ++i) {
        auto& r = runs_[static_cast<std::size_t>(i)];
        if (r.empty()) continue;
        if (best < 0) {
          best = i;
          continue;
        }
        auto& b = runs_[static_cast<std::size_t>(best)];
        int c = ord_.compare(r.back().m, b.back().m);
        if (c > 0) {
          best = i;
        } else if (c == 0) {
          b.back().c = k_.add(b.back().c, r.back().c);
          r.pop_back();
        }
      }
      if (best < 0) return nullptr;
      auto& b = runs_[static_cast<std::size_t>(best)];
      if (K::is_zero(b.back().c)) {
        b.pop_back();
        continue;
      }
      lead_run_ = static_cast<std::size_t>(best);
      return &b.back();
    }
  }

  /// Drops the term returned by the last lead().
  void pop_lead() { runs_[lead_run_].pop_back(); }

  /// Remaining terms in descending order.
  std::vector<Term<K>> drain() {
    std::vector<Term<K>> out;
    while (auto* t = lead()) {
      out.push_back(std::move(*t));
      pop_lead();
    }
    return out;
  }

 private:
  static std::size_t capacity(std::size_t i) { return std::size_t{8} << (2 * i); }

  void insert(std::vector<Term<K>> run) {
    std::size_t i = 0;
    while (capacity(i) < run.size()) ++i;
    while (true) {
      if (runs_.size() <= i) runs_.resize(i + 1);
      if (!runs_[i].empty()) run = merge(std::move(runs_[i]), std::move(run));
      runs_[i].clear();
      if (run.size() <= capacity(i)) {
        runs_[i] = std::move(run);
        return;
      }
      ++i;
    }
  }

  std::vector<Term<K>> merge(std::vector<Term<K>> a, std::vector<Term<K>> b) {
    std::vector<Term<K>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      int c = ord_.compare(a[i].m, b[j].m);
      if (c < 0) {
        out.push_back(std::move(a[i++]));
      } else if (c > 0) {
        out.push_back(std::move(b[j++]));
      } else {
        auto v = k_.add(a[i].c, b[j].c);
        if (!K::is_zero(v)) out.push_back({a[i].m, std::move(v)});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
    for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
    return out;
  }

  const K& k_;
  const MonomialOrder& ord_;
  std::vector<std::vector<Term<K>>> runs_;
  std::size_t lead_run_ = 0;
};

/// Reducer over a list of monic polynomials with their lead monomials laid out
/// contiguously for the divisor-scan kernel.
template <class K>
class Reducer {
 public:
  void add(const Polynomial<K>* g) {
    polys_.push_back(g);
    leads_.push_back(g->lead_monomial());
  }
  void clear() {
    polys_.clear();
    leads_.clear();
  }

  /// Top-reduces until the lead term is irreducible. Returns steps taken.
  std::size_t top_reduce(GeoBucket<K>& w, const K& k, const Ring<K>& ring, std::uint64_t* sugar) const {
    std::size_t steps = 0;
    while (auto* t = w.lead()) {
      std::size_t idx = kernels::find_divisor(t->m, leads_);
      if (idx == kernels::npos) break;
      const auto* g = polys_[idx];
      Monomial q = quotient(t->m, leads_[idx]);
      auto c = k.neg(t->c);  // g is monic
      if (sugar) *sugar = std::max(*sugar, sugar_of(*g) + ring.weighted_degree(q));
      w.pop_lead();
      w.add(c, q, *g, 1);
      ++steps;
    }
    return steps;
  }

  /// Full reduction: returns the remainder, all of whose terms are irreducible.
  std::vector<Term<K>> full_reduce(GeoBucket<K>& w, const K& k, std::size_t* steps) const {
    std::vector<Term<K>> rem;
    while (auto* t = w.lead()) {
      std::size_t idx = kernels::find_divisor(t->m, leads_);
      if (idx == kernels::npos) {
        rem.push_back(std::move(*t));
        w.pop_lead();
        continue;
      }
      Monomial q = quotient(t->m, leads_[idx]);
      auto c = k.neg(t->c);
      w.pop_lead();
      w.add(c, q, *polys_[idx], 1);
      if (steps) ++*steps;
    }
    return rem;
  }

  bool empty() const { return polys_.empty(); }

 private:
  std::vector<const Polynomial<K>*> polys_;
  std::vector<Monomial> leads_;
};

struct PairKey {
  std::uint64_t sugar;
  Monomial lcm;
  std::size_t i, j;  // j == npos marks an input generator
};

constexpr std::size_t kGenerator = static_cast<std::size_t>(-1);

}  // namespace

template <class K>
Polynomial<K> GroebnerBasis<K>::normal_form(const Polynomial<K>& p) const {
  if (p.ring() != ring_ && !p.ring()->equivalent(*ring_)) {
    if (!p.ring()->same_variables(*ring_)) throw AmbientMismatch("normal form across rings");
    return normal_form(p.reordered(ring_));
  }
  Reducer<K> red;
  for (const auto& g : elements_) red.add(&g);
  GeoBucket<K> w(ring_->field(), ring_->order());
  w.add_terms(p.terms());
  auto rem = red.full_reduce(w, ring_->field(), nullptr);
  return Polynomial<K>::from_terms(ring_, std::move(rem));
}

template <class K>
bool GroebnerBasis<K>::contains(const Ideal<K>& other) const {
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

template <class K>
Polynomial<K> reduce_by(const Polynomial<K>& p, const std::vector<Polynomial<K>>& divisors) {
  std::vector<Polynomial<K>> monic;
  for (const auto& d : divisors)
    if (!d.is_zero()) monic.push_back(d.monic());
  Reducer<K> red;
  for (const auto& g : monic) red.add(&g);
  GeoBucket<K> w(p.field(), p.ring()->order());
  w.add_terms(p.terms());
  auto rem = red.full_reduce(w, p.field(), nullptr);
  return Polynomial<K>::from_terms(p.ring(), std::move(rem));
}

// ---------------------------------------------------------------- Buchberger

template <class K>
GroebnerBasis<K> buchberger(const Ideal<K>& ideal, const GroebnerBudget& budget) {
  const auto& ring = ideal.ring();
  const K& k = ring->field();
  const MonomialOrder& ord = ring->order();

  GroebnerBasis<K> out;
  out.ring_ = ring;
  out.source_ = ideal;
  GroebnerStats& stats = out.stats_;

  auto cmp = [&ord](const PairKey& a, const PairKey& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ord.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<PairKey, decltype(cmp)> pairs(cmp);

  std::vector<Polynomial<K>> inputs;
  for (const auto& g : ideal.generators()) inputs.push_back(g.monic());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    pairs.insert(PairKey{sugar_of(inputs[i]), inputs[i].lead_monomial(), i, kGenerator});

  std::vector<Polynomial<K>> basis;
  std::vector<std::uint64_t> sugars;
  std::vector<Monomial> leads;
  std::vector<bool> active;
  Reducer<K> reducer;
  bool reducer_dirty = false;

  auto rebuild_reducer = [&] {
    reducer.clear();
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (active[i]) reducer.add(&basis[i]);
    reducer_dirty = false;
  };

  auto update = [&](std::size_t h) {
    const Monomial& lh = leads[h];
    std::vector<std::size_t> cand;
    for (std::size_t g = 0; g < h; ++g)
      if (active[g]) cand.push_back(g);
    std::vector<Monomial> cand_leads(cand.size());
    for (std::size_t a = 0; a < cand.size(); ++a) cand_leads[a] = leads[cand[a]];
    std::vector<Monomial> lcms(cand.size());
    kernels::lcm_batch(lh, cand_leads, lcms);

    // Gebauer-Möller: keep (h, g1) unless another (h, g2) still pending or kept has an
    // lcm dividing lcm(h, g1). Coprime pairs are kept here and dropped afterwards.
    enum : unsigned char { pending, kept, dropped };
    std::vector<unsigned char> state(cand.size(), pending);
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool keep = coprime(lh, cand_leads[a]);
      if (!keep) {
        keep = true;
        for (std::size_t b = 0; b < cand.size(); ++b) {
          if (b == a || state[b] == dropped) continue;
          if (divides(lcms[b], lcms[a])) {
            keep = false;
            break;
          }
        }
      }
      state[a] = keep ? kept : dropped;
      if (!keep) ++stats.chain_criterion;
    }

    // chain criterion on old pairs
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (it->j != kGenerator && divides(lh, it->lcm)) {
        Monomial l1 = lcm(leads[it->i], lh);
        Monomial l2 = lcm(leads[it->j], lh);
        if (!(l1 == it->lcm) && !(l2 == it->lcm)) {
          it = pairs.erase(it);
          ++stats.chain_criterion;
          continue;
        }
      }
      ++it;
    }

    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (state[a] != kept) continue;
      if (coprime(lh, cand_leads[a])) {
        ++stats.product_criterion;
        continue;
      }
      std::size_t g = cand[a];
      Monomial l = lcms[a];
      std::uint64_t s = std::max(sugars[g] + ring->weighted_degree(quotient(l, leads[g])),
                                 sugars[h] + ring->weighted_degree(quotient(l, lh)));
      pairs.insert(PairKey{s, l, g, h});
    }

    std::vector<unsigned char> divisible(cand.size());
    kernels::divides_batch(lh, cand_leads, divisible);
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (divisible[a]) {
        active[cand[a]] = false;
        reducer_dirty = true;
      }
    }
  };

  while (!pairs.empty()) {
    PairKey pk = *pairs.begin();
    pairs.erase(pairs.begin());
    if (++stats.pairs_processed > budget.max_pairs)
      throw BudgetExceeded("Gröbner basis exceeded the pair budget (" + std::to_string(budget.max_pairs) + ")");
    if (pk.lcm.degree() > budget.max_degree)
      throw BudgetExceeded("Gröbner basis exceeded the degree cap (" + std::to_string(budget.max_degree) + ")");

    GeoBucket<K> w(k, ord);
    std::uint64_t sugar = pk.sugar;
    if (pk.j == kGenerator) {
      w.add_terms(inputs[pk.i].terms());
    } else {
      // both leads are monic and cancel
      w.add(k.one(), quotient(pk.lcm, leads[pk.i]), basis[pk.i], 1);
      w.add(k.neg(k.one()), quotient(pk.lcm, leads[pk.j]), basis[pk.j], 1);
    }
    if (reducer_dirty) rebuild_reducer();
    stats.reduction_steps += reducer.top_reduce(w, k, *ring, &sugar);
    auto ts = w.drain();
    if (ts.empty()) {
      ++stats.zero_reductions;
      continue;
    }
    auto h = Polynomial<K>::from_terms(ring, std::move(ts)).monic();
    basis.push_back(std::move(h));
    sugars.push_back(sugar);
    leads.push_back(basis.back().lead_monomial());
    active.push_back(true);
    update(basis.size() - 1);
    // basis may have reallocated: reducer pointers must be refreshed
    rebuild_reducer();
  }

  // minimal basis: active elements; then tail-reduce against each other
  std::vector<Polynomial<K>> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (active[i]) minimal.push_back(basis[i]);
  std::sort(minimal.begin(), minimal.end(), [&](const Polynomial<K>& a, const Polynomial<K>& b) {
    return ord.compare(a.lead_monomial(), b.lead_monomial()) > 0;
  });
  std::vector<Polynomial<K>> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    Reducer<K> red;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) red.add(&minimal[j]);
    GeoBucket<K> w(k, ord);
    w.add_terms(minimal[i].terms(), 1);
    auto rem = red.full_reduce(w, k, &stats.reduction_steps);
    std::vector<Term<K>> ts;
    ts.reserve(rem.size() + 1);
    ts.push_back(minimal[i].lead());
    for (auto& t : rem) ts.push_back(std::move(t));
    reduced.push_back(Polynomial<K>::from_terms(ring, std::move(ts)));
  }

  out.elements_ = std::move(reduced);
  for (const auto& g : out.elements_) out.leads_.push_back(g.lead_monomial());
  stats.basis_size = out.elements_.size();
  out.dimension_ = monomial_dimension(out.leads_, ring->num_vars());
  for (const auto& g : out.elements_) {
    auto d = static_cast<unsigned>(g.total_degree());
    if (!out.initial_degree_ || d < *out.initial_degree_) out.initial_degree_ = d;
  }
  return out;
}

// ---------------------------------------------------------------- ideal operations

namespace {

template <class K>
RingPtr<K> canonical_ring(const RingPtr<K>& ring) {
  return ring->with_order(MonomialOrder::grevlex(ring->num_vars(), ring->grading()));
}

}  // namespace

template <class K>
bool ideal_equal(const Ideal<K>& a, const Ideal<K>& b, const GroebnerBudget& budget) {
  if (!a.ring()->same_variables(*b.ring())) throw AmbientMismatch("ideal comparison across rings");
  auto ring = canonical_ring(a.ring());
  auto ga = buchberger(a.reordered(ring), budget);
  auto gb = buchberger(b.reordered(ring), budget);
  if (ga.elements().size() != gb.elements().size()) return false;
  for (std::size_t i = 0; i < ga.elements().size(); ++i)
    if (!(ga.elements()[i] == gb.elements()[i])) return false;
  return true;
}

template <class K>
bool ideal_contains(const Ideal<K>& b, const Ideal<K>& a, const GroebnerBudget& budget) {
  if (!a.ring()->same_variables(*b.ring())) throw AmbientMismatch("ideal containment across rings");
  auto gb = buchberger(b, budget);
  for (const auto& g : a.generators())
    if (!gb.contains(g)) return false;
  return true;
}

template <class K>
Ideal<K> eliminate(const Ideal<K>& ideal, std::span<const std::size_t> vars, const GroebnerBudget& budget) {
  const auto& ring = ideal.ring();
  if (vars.empty()) return ideal;
  std::vector<bool> gone(ring->num_vars(), false);
  for (auto v : vars) {
    if (v >= ring->num_vars()) throw UnknownVariable("#" + std::to_string(v));
    gone[v] = true;
  }
  std::vector<std::size_t> elim, kept;
  for (std::size_t v = 0; v < ring->num_vars(); ++v) (gone[v] ? elim : kept).push_back(v);
  auto elim_ring = ring->with_order(
      MonomialOrder::block_elimination(elim, kept, OrderKind::grevlex, ring->grading()));
  auto gb = buchberger(ideal.reordered(elim_ring), budget);
  std::vector<Polynomial<K>> gens;
  for (const auto& g : gb.elements()) {
    bool free = true;
    for (const auto& t : g.terms()) {
      for (auto v : elim)
        if (t.m.e[v]) free = false;
      if (!free) break;
    }
    if (free) gens.push_back(g.reordered(ring));
  }
  return Ideal<K>(ring, std::move(gens));
}

template <class K>
Ideal<K> eliminate_block(const Ideal<K>& ideal, std::size_t block, const GroebnerBudget& budget) {
  auto vars = ideal.ring()->block_vars(block);
  return eliminate(ideal, vars, budget);
}

template <class K>
Ideal<K> saturate(const Ideal<K>& ideal, const Polynomial<K>& f, const GroebnerBudget& budget, GroebnerStats* stats) {
  const auto& ring = ideal.ring();
  if (f.is_zero()) throw PreconditionError("saturation by zero");
  if (f.ring() != ring && !f.ring()->equivalent(*ring)) throw AmbientMismatch("saturating element in another ring");
  if (ideal.is_zero()) return ideal;
  std::string z = "z";
  while (ring->index_of(z)) z += "_";
  auto blocks = ring->blocks();
  blocks.push_back({{z}, BlockRole::auxiliary});
  const std::size_t zi = ring->num_vars();
  auto grading = ring->grading();

  if (ideal.is_homogeneous() && f.is_homogeneous()) {
    // z is last in grevlex, so z | lead(g) implies z | g for homogeneous g
    grading.push_back(static_cast<std::uint32_t>(ring->weighted_degree(f.lead_monomial())));
    auto big = Ring<K>::make(ring->field(), blocks, std::nullopt, grading);
    std::vector<Polynomial<K>> gens;
    for (const auto& g : ideal.generators()) gens.push_back(map_by_name(g, big));
    gens.push_back(Polynomial<K>::variable(big, zi) - map_by_name(f, big));
    auto gb = buchberger(Ideal<K>(big, std::move(gens)), budget);
    if (stats) *stats = gb.stats();
    std::map<std::string, Polynomial<K>> back{{z, f}};
    std::vector<Polynomial<K>> out;
    for (const auto& g : gb.elements()) {
      unsigned low = 255;
      for (const auto& t : g.terms()) low = std::min<unsigned>(low, t.m.e[zi]);
      Monomial q = Monomial::variable(zi, static_cast<std::uint8_t>(low));
      std::vector<Term<K>> ts;
      for (const auto& t : g.terms()) ts.push_back({quotient(t.m, q), t.c});
      auto h = Polynomial<K>::from_terms(big, std::move(ts));
      // z - f itself maps to zero
      out.push_back(substitute(h, back, ring));
    }
    return Ideal<K>(ring, std::move(out));
  }

  grading.push_back(1);
  auto big = Ring<K>::make(ring->field(), blocks, std::nullopt, grading);
  std::vector<Polynomial<K>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(map_by_name(g, big));
  gens.push_back(Polynomial<K>::variable(big, zi) * map_by_name(f, big) - Polynomial<K>::from_int(big, 1));
  std::vector<std::size_t> zv{zi};
  auto elim = eliminate(Ideal<K>(big, std::move(gens)), zv, budget);
  std::vector<Polynomial<K>> out;
  for (const auto& g : elim.generators()) out.push_back(map_by_name(g, ring));
  return Ideal<K>(ring, std::move(out));
}

template <class K>
Ideal<K> contract(const Ideal<K>& ideal, const RingPtr<K>& subring) {
  std::vector<Polynomial<K>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(map_by_name(g, subring));
  return Ideal<K>(subring, std::move(gens));
}

template <class K>
int dimension(const Ideal<K>& ideal, const GroebnerBudget& budget) {
  if (ideal.is_zero()) return static_cast<int>(ideal.ring()->num_vars());
  return buchberger(ideal, budget).dimension();
}

template <class K>
int height(const Ideal<K>& ideal, const GroebnerBudget& budget) {
  return static_cast<int>(ideal.ring()->num_vars()) - dimension(ideal, budget);
}

template <class K>
unsigned initial_degree(const Ideal<K>& ideal, const GroebnerBudget& budget) {
  if (ideal.is_zero()) throw PreconditionError("the zero ideal has no initial degree");
  return *buchberger(ideal, budget).initial_degree();
}

int monomial_dimension(std::span<const Monomial> generators, std::size_t nvars) {
  std::vector<std::uint32_t> supports;
  for (const auto& m : generators) {
    std::uint32_t s = support_mask(m);
    if (s == 0) return -1;
    supports.push_back(s);
  }
  // keep only minimal supports
  std::sort(supports.begin(), supports.end(),
            [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::vector<std::uint32_t> minimal;
  for (auto s : supports) {
    bool redundant = false;
    for (auto m : minimal)
      if ((m & s) == m) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(s);
  }
  int best = 0;
  // depth-first over variables; `chosen` must not contain any minimal support
  auto independent = [&](std::uint32_t chosen) {
    for (auto m : minimal)
      if ((m & chosen) == m) return false;
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t v, std::uint32_t chosen, int size) -> void {
    if (size + static_cast<int>(nvars - v) <= best) return;
    if (v == nvars) {
      best = size;
      return;
    }
    std::uint32_t with = chosen | (1u << v);
    if (independent(with)) self(self, v + 1, with, size + 1);
    self(self, v + 1, chosen, size);
  };
  dfs(dfs, 0, 0u, 0);
  return best;
}

#define BLOWUP_INSTANTIATE(K)                                                                   \
  template class Ideal<K>;                                                                      \
  template class GroebnerBasis<K>;                                                              \
  template GroebnerBasis<K> buchberger(const Ideal<K>&, const GroebnerBudget&);                 \
  template Polynomial<K> reduce_by(const Polynomial<K>&, const std::vector<Polynomial<K>>&);    \
  template bool ideal_equal(const Ideal<K>&, const Ideal<K>&, const GroebnerBudget&);           \
  template bool ideal_contains(const Ideal<K>&, const Ideal<K>&, const GroebnerBudget&);        \
  template Ideal<K> eliminate(const Ideal<K>&, std::span<const std::size_t>, const GroebnerBudget&); \
  template Ideal<K> eliminate_block(const Ideal<K>&, std::size_t, const GroebnerBudget&);       \
  template Ideal<K> contract(const Ideal<K>&, const RingPtr<K>&);                               \
  template Ideal<K> saturate(const Ideal<K>&, const Polynomial<K>&, const GroebnerBudget&, GroebnerStats*);                               \
  template int dimension(const Ideal<K>&, const GroebnerBudget&);                               \
  template int height(const Ideal<K>&, const GroebnerBudget&);                                  \
  template unsigned initial_degree(const Ideal<K>&, const GroebnerBudget&);

BLOWUP_INSTANTIATE(RationalField)
BLOWUP_INSTANTIATE(PrimeField)

}  // namespace blowup
