#include "blowup/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace blowup {

// ---------------------------------------------------------------- Ring

template <class K>
RingPtr<K> Ring<K>::make(K field, std::vector<VariableBlock> blocks, std::optional<MonomialOrder> order,
                         std::vector<std::uint32_t> grading) {
  std::shared_ptr<Ring<K>> r(new Ring<K>());
  r->field_ = std::move(field);
  r->blocks_ = std::move(blocks);
  std::unordered_set<std::string> seen;
  for (const auto& b : r->blocks_) {
    for (const auto& n : b.names) {
      if (n.empty()) throw PreconditionError("empty variable name");
      if (!seen.insert(n).second) throw PreconditionError("duplicate variable name '" + n + "'");
      r->names_.push_back(n);
    }
  }
  if (r->names_.size() > kMaxVars) throw PreconditionError("too many variables (max 32)");
  if (grading.empty()) grading.assign(r->names_.size(), 1);
  if (grading.size() != r->names_.size()) throw PreconditionError("grading length mismatch");
  r->grading_ = std::move(grading);
  r->order_ = order ? std::move(*order) : MonomialOrder::grevlex(r->names_.size(), r->grading_);
  if (r->order_.num_vars() != r->names_.size()) throw PreconditionError("order does not match ring size");
  return r;
}

template <class K>
std::vector<std::size_t> Ring<K>::block_vars(std::size_t b) const {
  std::size_t start = 0;
  for (std::size_t i = 0; i < b; ++i) start += blocks_.at(i).names.size();
  std::vector<std::size_t> out(blocks_.at(b).names.size());
  std::iota(out.begin(), out.end(), start);
  return out;
}

template <class K>
std::optional<std::size_t> Ring<K>::find_block(BlockRole role) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].role == role) return i;
  return std::nullopt;
}

template <class K>
std::optional<std::size_t> Ring<K>::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

template <class K>
std::size_t Ring<K>::require_index(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw UnknownVariable(std::string(name));
  return *i;
}

template <class K>
RingPtr<K> Ring<K>::with_order(MonomialOrder order, std::vector<std::uint32_t> grading) const {
  return make(field_, blocks_, std::move(order), grading.empty() ? grading_ : std::move(grading));
}

template <class K>
bool Ring<K>::same_variables(const Ring& other) const {
  return field_ == other.field_ && names_ == other.names_;
}

template <class K>
bool Ring<K>::equivalent(const Ring& other) const {
  if (this == &other) return true;
  if (!same_variables(other)) return false;
  const auto& a = order_.blocks();
  const auto& b = other.order_.blocks();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].vars != b[i].vars || a[i].weights != b[i].weights || a[i].kind != b[i].kind) return false;
  return true;
}

template <class K>
std::uint64_t Ring<K>::weighted_degree(const Monomial& m) const {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < names_.size(); ++i) d += std::uint64_t{grading_[i]} * m.e[i];
  return d;
}

template <class K>
std::string Ring<K>::monomial_to_string(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += '*';
    s += names_[i];
    if (m.e[i] > 1) s += '^' + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- Polynomial

template <class K>
Polynomial<K> Polynomial<K>::constant(RingPtr<K> ring, const Element& c) {
  Polynomial p(std::move(ring));
  if (!K::is_zero(c)) p.terms_.push_back({Monomial{}, c});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::from_int(RingPtr<K> ring, long long c) {
  auto e = ring->field().from_int(c);
  return constant(std::move(ring), e);
}

template <class K>
Polynomial<K> Polynomial<K>::variable(RingPtr<K> ring, std::size_t index) {
  if (index >= ring->num_vars()) throw PreconditionError("variable index out of range");
  Polynomial p(ring);
  p.terms_.push_back({Monomial::variable(index), ring->field().one()});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::variable(RingPtr<K> ring, std::string_view name) {
  std::size_t i = ring->require_index(name);
  return variable(std::move(ring), i);
}

template <class K>
Polynomial<K> Polynomial<K>::monomial(RingPtr<K> ring, const Monomial& m, const Element& c) {
  Polynomial p(std::move(ring));
  if (!K::is_zero(c)) p.terms_.push_back({m, c});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::from_terms(RingPtr<K> ring, std::vector<Term<K>> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  p.sort_terms();
  return p;
}

template <class K>
void Polynomial<K>::sort_terms() {
  const auto& ord = ring_->order();
  const K& k = ring_->field();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term<K>& a, const Term<K>& b) { return ord.compare(a.m, b.m) > 0; });
  std::vector<Term<K>> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = k.add(out.back().c, t.c);
    } else {
      if (!out.empty() && K::is_zero(out.back().c)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && K::is_zero(out.back().c)) out.pop_back();
  terms_ = std::move(out);
}

template <class K>
void Polynomial<K>::require_same_ring(const Polynomial& o) const {
  if (!ring_ || !o.ring_) throw AmbientMismatch("polynomial without a ring");
  if (ring_ != o.ring_ && !ring_->equivalent(*o.ring_))
    throw AmbientMismatch("operands live in different rings");
}

template <class K>
int Polynomial<K>::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.degree()));
  return d;
}

template <class K>
bool Polynomial<K>::is_homogeneous() const {
  if (terms_.empty()) return true;
  auto d = ring_->weighted_degree(terms_.front().m);
  for (const auto& t : terms_)
    if (ring_->weighted_degree(t.m) != d) return false;
  return true;
}

template <class K>
std::optional<std::pair<unsigned, unsigned>> Polynomial<K>::bidegree(std::size_t block_a,
                                                                     std::size_t block_b) const {
  auto va = ring_->block_vars(block_a);
  auto vb = ring_->block_vars(block_b);
  std::optional<std::pair<unsigned, unsigned>> out;
  for (const auto& t : terms_) {
    unsigned da = 0, db = 0;
    for (auto v : va) da += t.m.e[v];
    for (auto v : vb) db += t.m.e[v];
    if (!out) out = std::make_pair(da, db);
    else if (out->first != da || out->second != db) return std::nullopt;
  }
  if (!out) out = std::make_pair(0u, 0u);
  return out;
}

template <class K>
typename K::Element Polynomial<K>::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.m == m) return t.c;
  return field().zero();
}

template <class K>
Polynomial<K> Polynomial<K>::operator+(const Polynomial& o) const {
  require_same_ring(o);
  Polynomial r(*this);
  r.sub_mul(field().neg(field().one()), Monomial{}, o);
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::operator-(const Polynomial& o) const {
  require_same_ring(o);
  Polynomial r(*this);
  r.sub_mul(field().one(), Monomial{}, o);
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.c = field().neg(t.c);
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::operator*(const Polynomial& o) const {
  require_same_ring(o);
  const K& k = field();
  if (terms_.empty() || o.terms_.empty()) return Polynomial(ring_);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].m, o.terms_[0].c);
  if (terms_.size() == 1) return o.mul_term(terms_[0].m, terms_[0].c);
  std::unordered_map<Monomial, Element, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Monomial m = a.m * b.m;
      auto c = k.mul(a.c, b.c);
      auto [it, inserted] = acc.try_emplace(m, c);
      if (!inserted) it->second = k.add(it->second, c);
    }
  }
  std::vector<Term<K>> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!K::is_zero(c)) ts.push_back({m, std::move(c)});
  return from_terms(ring_, std::move(ts));
}

template <class K>
Polynomial<K> Polynomial<K>::scaled(const Element& c) const {
  if (K::is_zero(c)) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.c = field().mul(t.c, c);
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::mul_term(const Monomial& m, const Element& c) const {
  if (K::is_zero(c)) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  // multiplying by a monomial preserves the order of the terms
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, field().mul(t.c, c)});
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::monic() const {
  if (terms_.empty() || K::is_one(lead_coeff())) return *this;
  return scaled(field().inv(lead_coeff()));
}

template <class K>
Polynomial<K> Polynomial<K>::pow(unsigned e) const {
  Polynomial result = from_int(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

template <class K>
void Polynomial<K>::sub_mul(const Element& c, const Monomial& m, const Polynomial& g) {
  if (K::is_zero(c) || g.terms_.empty()) return;
  const K& k = field();
  const auto& ord = ring_->order();
  const bool unit_shift = m.is_one();
  std::vector<Term<K>> out;
  out.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  Monomial gm;
  bool have_gm = false;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j < g.terms_.size() && !have_gm) {
      gm = unit_shift ? g.terms_[j].m : g.terms_[j].m * m;
      have_gm = true;
    }
    if (j >= g.terms_.size()) {
      out.push_back(std::move(terms_[i++]));
      continue;
    }
    if (i >= terms_.size()) {
      out.push_back({gm, k.neg(k.mul(c, g.terms_[j].c))});
      ++j;
      have_gm = false;
      continue;
    }
    int cmp = ord.compare(terms_[i].m, gm);
    if (cmp > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (cmp < 0) {
      out.push_back({gm, k.neg(k.mul(c, g.terms_[j].c))});
      ++j;
      have_gm = false;
    } else {
      auto v = k.sub(terms_[i].c, k.mul(c, g.terms_[j].c));
      if (!K::is_zero(v)) out.push_back({gm, std::move(v)});
      ++i;
      ++j;
      have_gm = false;
    }
  }
  terms_ = std::move(out);
}

template <class K>
Polynomial<K> Polynomial<K>::reordered(RingPtr<K> target) const {
  if (!target->same_variables(*ring_)) throw AmbientMismatch("reordering needs identical variables");
  Polynomial r(std::move(target));
  r.terms_ = terms_;
  r.sort_terms();
  return r;
}

template <class K>
bool Polynomial<K>::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (ring_ && o.ring_ && ring_ != o.ring_ && !ring_->equivalent(*o.ring_)) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || !(terms_[i].c == o.terms_[i].c)) return false;
  return true;
}

template <class K>
std::string Polynomial<K>::to_string() const {
  if (terms_.empty()) return "0";
  const K& k = field();
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    bool neg = k.is_negative(t.c);
    auto mag = neg ? k.neg(t.c) : t.c;
    if (i == 0) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    bool unit = K::is_one(mag);
    if (t.m.is_one()) {
      s += k.to_string(mag);
    } else {
      if (!unit) s += k.to_string(mag) + "*";
      s += ring_->monomial_to_string(t.m);
    }
  }
  return s;
}

// ---------------------------------------------------------------- maps

template <class K>
Polynomial<K> substitute(const Polynomial<K>& p, const std::map<std::string, Polynomial<K>>& images,
                         const RingPtr<K>& target) {
  const auto& src = p.ring();
  for (const auto& [name, img] : images) {
    if (!src->index_of(name)) throw UnknownVariable(name);
    if (img.ring() != target && !img.ring()->equivalent(*target))
      throw AmbientMismatch("image of '" + name + "' is not in the target ring");
  }
  std::vector<Polynomial<K>> image_of(src->num_vars());
  std::vector<bool> used(src->num_vars(), false);
  for (const auto& t : p.terms())
    for (std::size_t v = 0; v < src->num_vars(); ++v)
      if (t.m.e[v]) used[v] = true;
  for (std::size_t v = 0; v < src->num_vars(); ++v) {
    if (!used[v]) continue;
    const auto& name = src->names()[v];
    auto it = images.find(name);
    if (it != images.end()) {
      image_of[v] = it->second;
    } else {
      auto ti = target->index_of(name);
      if (!ti) throw UnknownVariable(name);
      image_of[v] = Polynomial<K>::variable(target, *ti);
    }
  }
  // powers cached per variable
  std::vector<std::vector<Polynomial<K>>> powers(src->num_vars());
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial<K>& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(Polynomial<K>::from_int(target, 1));
    while (pw.size() <= e) pw.push_back(pw.back() * image_of[v]);
    return pw[e];
  };
  Polynomial<K> result(target);
  for (const auto& t : p.terms()) {
    Polynomial<K> term = Polynomial<K>::constant(target, t.c);
    for (std::size_t v = 0; v < src->num_vars(); ++v)
      if (t.m.e[v]) term = term * power(v, t.m.e[v]);
    result += term;
  }
  return result;
}

template <class K>
Polynomial<K> embed(const Polynomial<K>& p, const RingPtr<K>& target, const std::vector<std::size_t>& index_map) {
  std::vector<Term<K>> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < p.ring()->num_vars(); ++v) {
      if (!t.m.e[v]) continue;
      if (v >= index_map.size() || index_map[v] >= target->num_vars())
        throw AmbientMismatch("embedding does not cover variable " + p.ring()->names()[v]);
      m.e[index_map[v]] = t.m.e[v];
    }
    ts.push_back({m, t.c});
  }
  return Polynomial<K>::from_terms(target, std::move(ts));
}

template <class K>
Polynomial<K> map_by_name(const Polynomial<K>& p, const RingPtr<K>& target) {
  const auto& src = p.ring();
  if (src == target) return p;
  std::vector<std::size_t> idx(src->num_vars(), kMaxVars);
  for (std::size_t v = 0; v < src->num_vars(); ++v) {
    auto ti = target->index_of(src->names()[v]);
    if (ti) idx[v] = *ti;
  }
  return embed(p, target, idx);
}

template <class K>
typename K::Element evaluate(const Polynomial<K>& p, const std::vector<typename K::Element>& point) {
  const K& k = p.field();
  if (point.size() != p.ring()->num_vars()) throw PreconditionError("point has wrong dimension");
  auto sum = k.zero();
  for (const auto& t : p.terms()) {
    auto v = t.c;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (unsigned e = 0; e < t.m.e[i]; ++e) v = k.mul(v, point[i]);
    sum = k.add(sum, v);
  }
  return sum;
}

#define BLOWUP_INSTANTIATE(K)                                                                          \
  template class Ring<K>;                                                                              \
  template class Polynomial<K>;                                                                        \
  template Polynomial<K> substitute(const Polynomial<K>&, const std::map<std::string, Polynomial<K>>&, \
                                    const RingPtr<K>&);                                                \
  template Polynomial<K> embed(const Polynomial<K>&, const RingPtr<K>&, const std::vector<std::size_t>&); \
  template Polynomial<K> map_by_name(const Polynomial<K>&, const RingPtr<K>&);                        \
  template K::Element evaluate(const Polynomial<K>&, const std::vector<K::Element>&);

BLOWUP_INSTANTIATE(RationalField)
BLOWUP_INSTANTIATE(PrimeField)

}  // namespace blowup
