#include "blowup/linmatrix.hpp"

#include <algorithm>
#include <bit>

namespace blowup {

// ---------------------------------------------------------------- ScalarMatrix

template <class K>
ScalarMatrix<K>::ScalarMatrix(K field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

template <class K>
ScalarMatrix<K> ScalarMatrix<K>::identity(K field, std::size_t n) {
  ScalarMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
  return m;
}

template <class K>
ScalarMatrix<K> ScalarMatrix<K>::operator*(const ScalarMatrix& o) const {
  if (cols_ != o.rows_) throw ShapeError("scalar matrix product shape mismatch");
  ScalarMatrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (K::is_zero(at(i, k))) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) = field_.add(r.at(i, j), field_.mul(at(i, k), o.at(k, j)));
    }
  return r;
}

template <class K>
std::size_t ScalarMatrix<K>::rank() const {
  return rank_factorization(*this).rank;
}

template <class K>
typename K::Element ScalarMatrix<K>::determinant() const {
  if (rows_ != cols_) throw ShapeError("determinant of a non-square matrix");
  ScalarMatrix a = *this;
  Element det = field_.one();
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t p = c;
    while (p < rows_ && K::is_zero(a.at(p, c))) ++p;
    if (p == rows_) return field_.zero();
    if (p != c) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a.at(p, j), a.at(c, j));
      det = field_.neg(det);
    }
    det = field_.mul(det, a.at(c, c));
    Element inv = field_.inv(a.at(c, c));
    for (std::size_t r = c + 1; r < rows_; ++r) {
      if (K::is_zero(a.at(r, c))) continue;
      Element f = field_.mul(a.at(r, c), inv);
      for (std::size_t j = c; j < cols_; ++j) a.at(r, j) = field_.sub(a.at(r, j), field_.mul(f, a.at(c, j)));
    }
  }
  return det;
}

template <class K>
RankFactorization<K> rank_factorization(const ScalarMatrix<K>& m) {
  const K& k = m.field();
  const std::size_t n = m.rows(), c = m.cols();
  ScalarMatrix<K> a = m;
  ScalarMatrix<K> left = ScalarMatrix<K>::identity(k, n);
  ScalarMatrix<K> right = ScalarMatrix<K>::identity(k, c);
  std::size_t r = 0;
  while (r < n && r < c) {
    std::size_t pi = n, pj = c;
    for (std::size_t i = r; i < n && pi == n; ++i)
      for (std::size_t j = r; j < c; ++j)
        if (!K::is_zero(a.at(i, j))) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n) break;
    if (pi != r) {
      for (std::size_t j = 0; j < c; ++j) std::swap(a.at(pi, j), a.at(r, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(left.at(pi, j), left.at(r, j));
    }
    if (pj != r) {
      for (std::size_t i = 0; i < n; ++i) std::swap(a.at(i, pj), a.at(i, r));
      for (std::size_t i = 0; i < c; ++i) std::swap(right.at(i, pj), right.at(i, r));
    }
    auto inv = k.inv(a.at(r, r));
    for (std::size_t j = 0; j < c; ++j) a.at(r, j) = k.mul(a.at(r, j), inv);
    for (std::size_t j = 0; j < n; ++j) left.at(r, j) = k.mul(left.at(r, j), inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || K::is_zero(a.at(i, r))) continue;
      auto f = a.at(i, r);
      for (std::size_t j = 0; j < c; ++j) a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(r, j)));
      for (std::size_t j = 0; j < n; ++j) left.at(i, j) = k.sub(left.at(i, j), k.mul(f, left.at(r, j)));
    }
    for (std::size_t j = 0; j < c; ++j) {
      if (j == r || K::is_zero(a.at(r, j))) continue;
      auto f = a.at(r, j);
      // column j -= f * column r; row r is the only nonzero entry of column r now
      for (std::size_t i = 0; i < n; ++i) a.at(i, j) = k.sub(a.at(i, j), k.mul(f, a.at(i, r)));
      for (std::size_t i = 0; i < c; ++i) right.at(i, j) = k.sub(right.at(i, j), k.mul(f, right.at(i, r)));
    }
    ++r;
  }
  return {std::move(left), std::move(right), r};
}

// ---------------------------------------------------------------- LinearMatrix

template <class K>
LinearMatrix<K>::LinearMatrix(RingPtr<K> ring, std::size_t block, std::size_t rows, std::size_t cols,
                              std::vector<Polynomial<K>> entries)
    : ring_(std::move(ring)), block_(block), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) throw ShapeError("entry count does not match the shape");
  if (block_ >= ring_->blocks().size()) throw ShapeError("unknown variable block");
  vars_ = ring_->block_vars(block_);
  std::vector<bool> in_block(ring_->num_vars(), false);
  for (auto v : vars_) in_block[v] = true;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    if (e.ring() != ring_) {
      if (!e.ring() || !e.ring()->equivalent(*ring_)) throw AmbientMismatch("matrix entry in another ring");
    }
    for (const auto& t : e.terms()) {
      bool ok = t.m.degree() == 1;
      for (std::size_t v = 0; ok && v < ring_->num_vars(); ++v)
        if (t.m.e[v] && !in_block[v]) ok = false;
      if (!ok)
        throw ShapeError("entry (" + std::to_string(i / cols + 1) + "," + std::to_string(i % cols + 1) +
                         ") is not a linear form in block '" +
                         (vars_.empty() ? std::string() : ring_->names()[vars_.front()]) + "...': " + e.to_string());
    }
  }
}

template <class K>
typename K::Element LinearMatrix<K>::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
  return at(i, j).coefficient(Monomial::variable(vars_.at(k)));
}

template <class K>
ScalarMatrix<K> LinearMatrix<K>::coefficient_matrix(std::size_t k) const {
  ScalarMatrix<K> m(ring_->field(), rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = coefficient(i, j, k);
  return m;
}

template <class K>
LinearMatrix<K> LinearMatrix<K>::submatrix(const std::vector<std::size_t>& rows,
                                           const std::vector<std::size_t>& cols) const {
  std::vector<Polynomial<K>> es;
  es.reserve(rows.size() * cols.size());
  for (auto i : rows)
    for (auto j : cols) es.push_back(at(i, j));
  return LinearMatrix(ring_, block_, rows.size(), cols.size(), std::move(es));
}

template <class K>
LinearMatrix<K> LinearMatrix<K>::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i) rows[i] = i;
  return submatrix(rows, cols);
}

template <class K>
LinearMatrix<K> LinearMatrix<K>::drop_columns(std::size_t first_count) const {
  std::vector<std::size_t> cols;
  for (std::size_t j = first_count; j < cols_; ++j) cols.push_back(j);
  return select_columns(cols);
}

template <class K>
LinearMatrix<K> LinearMatrix<K>::in_ring(const RingPtr<K>& target, std::size_t target_block) const {
  std::vector<Polynomial<K>> es;
  es.reserve(entries_.size());
  for (const auto& e : entries_) es.push_back(map_by_name(e, target));
  return LinearMatrix(target, target_block, rows_, cols_, std::move(es));
}

template <class K>
std::vector<std::vector<std::string>> LinearMatrix<K>::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(at(i, j).to_string());
  return out;
}

template <class K>
bool LinearMatrix<K>::operator==(const LinearMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

// ---------------------------------------------------------------- minors

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

template <class K>
const Polynomial<K>& MinorCache<K>::minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() != cols.size() || rows.empty()) throw ShapeError("minor needs equal, nonzero row/column counts");
  std::uint32_t rm = 0, cm = 0;
  for (auto r : rows) rm |= 1u << r;
  for (auto c : cols) cm |= 1u << c;
  return minor_masks(rm, cm);
}

template <class K>
const Polynomial<K>& MinorCache<K>::minor_masks(std::uint32_t rows, std::uint32_t cols) {
  std::uint64_t key = (std::uint64_t{rows} << 32) | cols;
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Polynomial<K> det(m_.ring());
  const int r0 = std::countr_zero(rows);
  if (std::popcount(rows) == 1) {
    det = m_.at(static_cast<std::size_t>(r0), static_cast<std::size_t>(std::countr_zero(cols)));
  } else {
    const std::uint32_t rest = rows & ~(1u << r0);
    bool negative = false;
    for (std::uint32_t c = cols; c; c &= c - 1) {
      const int j = std::countr_zero(c);
      const auto& e = m_.at(static_cast<std::size_t>(r0), static_cast<std::size_t>(j));
      if (!e.is_zero()) {
        const auto& sub = minor_masks(rest, cols & ~(1u << j));
        if (!sub.is_zero()) {
          auto term = e * sub;
          det = negative ? det - term : det + term;
        }
      }
      negative = !negative;
    }
  }
  return memo_.emplace(key, std::move(det)).first->second;
}

template <class K>
std::vector<Polynomial<K>> all_minors(const LinearMatrix<K>& m, std::size_t r) {
  std::vector<Polynomial<K>> out;
  if (r == 0 || r > m.rows() || r > m.cols()) return out;
  MinorCache<K> cache(m);
  auto rs = subsets(m.rows(), r);
  auto cs = subsets(m.cols(), r);
  for (const auto& rows : rs)
    for (const auto& cols : cs) out.push_back(cache.minor(rows, cols));
  return out;
}

template <class K>
Ideal<K> minors(const LinearMatrix<K>& m, std::size_t r) {
  return Ideal<K>(m.ring(), all_minors(m, r));
}

template <class K>
Polynomial<K> determinant(const LinearMatrix<K>& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of a non-square matrix");
  MinorCache<K> cache(m);
  std::vector<std::size_t> idx(m.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return cache.minor(idx, idx);
}

template <class K>
SignedMinorVector<K> signed_maximal_minors(const LinearMatrix<K>& m) {
  if (m.rows() < 2 || m.cols() + 1 != m.rows())
    throw ShapeError("signed maximal minors need a d x (d-1) matrix");
  const std::size_t d = m.rows();
  MinorCache<K> cache(m);
  std::vector<std::size_t> cols(d - 1);
  for (std::size_t j = 0; j < d - 1; ++j) cols[j] = j;
  SignedMinorVector<K> out{m, {}};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < d; ++r)
      if (r != i) rows.push_back(r);
    auto minor = cache.minor(rows, cols);
    out.delta.push_back(i % 2 == 0 ? minor : -minor);
  }
  return out;
}

template <class K>
std::pair<std::size_t, MinorWitness> rank_mod_witness(const LinearMatrix<K>& m, const GroebnerBasis<K>* modulus) {
  MinorCache<K> cache(m);
  for (std::size_t r = std::min(m.rows(), m.cols()); r >= 1; --r) {
    for (const auto& rows : subsets(m.rows(), r)) {
      for (const auto& cols : subsets(m.cols(), r)) {
        const auto& mi = cache.minor(rows, cols);
        if (mi.is_zero()) continue;
        if (modulus && modulus->normal_form(mi).is_zero()) continue;
        return {r, MinorWitness{rows, cols}};
      }
    }
  }
  return {0, {}};
}

template <class K>
std::size_t rank_mod(const LinearMatrix<K>& m, const GroebnerBasis<K>* modulus) {
  return rank_mod_witness(m, modulus).first;
}

// ---------------------------------------------------------------- conjugation

template <class K>
ScalarConjugation<K>::ScalarConjugation(ScalarMatrix<K> left, ScalarMatrix<K> right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (left_.rows() != left_.cols() || right_.rows() != right_.cols())
    throw PreconditionError("conjugation matrices must be square");
  if (K::is_zero(left_.determinant()) || K::is_zero(right_.determinant()))
    throw PreconditionError("conjugation matrices must be invertible");
}

template <class K>
ScalarConjugation<K> ScalarConjugation<K>::identity(K field, std::size_t rows, std::size_t cols) {
  return ScalarConjugation(ScalarMatrix<K>::identity(field, rows), ScalarMatrix<K>::identity(field, cols));
}

template <class K>
LinearMatrix<K> conjugate(const LinearMatrix<K>& phi, const ScalarConjugation<K>& s) {
  const auto& a = s.left();
  const auto& c = s.right();
  if (a.rows() != phi.rows() || c.rows() != phi.cols()) throw ShapeError("conjugation shape mismatch");
  const K& k = phi.ring()->field();
  // A·φ first
  std::vector<Polynomial<K>> tmp;
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      Polynomial<K> acc(phi.ring());
      for (std::size_t l = 0; l < phi.rows(); ++l)
        if (!K::is_zero(a.at(i, l))) acc += phi.at(l, j).scaled(a.at(i, l));
      tmp.push_back(std::move(acc));
    }
  std::vector<Polynomial<K>> out;
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      Polynomial<K> acc(phi.ring());
      for (std::size_t l = 0; l < phi.cols(); ++l)
        if (!K::is_zero(c.at(l, j))) acc += tmp[i * phi.cols() + l].scaled(c.at(l, j));
      out.push_back(std::move(acc));
    }
  (void)k;
  return LinearMatrix<K>(phi.ring(), phi.block(), phi.rows(), phi.cols(), std::move(out));
}

// ---------------------------------------------------------------- Jacobian dual

template <class K>
LinearMatrix<K> jacobian_dual(const LinearMatrix<K>& phi, const RingPtr<K>& target, std::size_t t_block) {
  const auto t_vars = target->block_vars(t_block);
  if (t_vars.size() != phi.rows()) throw ShapeError("t-block size must equal the number of rows");
  const std::size_t d = phi.block_vars().size();
  const K& k = target->field();
  std::vector<Polynomial<K>> entries;
  entries.reserve(d * phi.cols());
  for (std::size_t xk = 0; xk < d; ++xk) {
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      std::vector<Term<K>> ts;
      for (std::size_t i = 0; i < phi.rows(); ++i) {
        auto c = phi.coefficient(i, j, xk);
        if (!K::is_zero(c)) ts.push_back({Monomial::variable(t_vars[i]), c});
      }
      entries.push_back(Polynomial<K>::from_terms(target, std::move(ts)));
    }
  }
  (void)k;
  return LinearMatrix<K>(target, t_block, d, phi.cols(), std::move(entries));
}

template <class K>
bool dual_identity_holds(const LinearMatrix<K>& phi, const LinearMatrix<K>& b) {
  const auto& ring = b.ring();
  const auto& t_vars = b.block_vars();
  if (t_vars.size() != phi.rows() || b.rows() != phi.block_vars().size() || b.cols() != phi.cols()) return false;
  std::vector<Polynomial<K>> xs;
  for (auto v : phi.block_vars()) xs.push_back(Polynomial<K>::variable(ring, phi.ring()->names()[v]));
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    Polynomial<K> lhs(ring), rhs(ring);
    for (std::size_t i = 0; i < phi.rows(); ++i)
      lhs += Polynomial<K>::variable(ring, t_vars[i]) * map_by_name(phi.at(i, j), ring);
    for (std::size_t k = 0; k < b.rows(); ++k) rhs += xs[k] * b.at(k, j);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- canonical form

template <class K>
bool has_canonical_shape(const LinearMatrix<K>& phi, std::size_t u) {
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      auto c = phi.coefficient(i, j, 0);
      bool diag = i == j && i < u;
      if (diag ? !K::is_one(c) : !K::is_zero(c)) return false;
    }
  return true;
}

template <class K>
LinearMatrix<K> change_coordinates(const LinearMatrix<K>& phi, const ScalarMatrix<K>& coordinates) {
  const std::size_t d = phi.block_vars().size();
  if (coordinates.rows() != d || coordinates.cols() != d) throw ShapeError("coordinate matrix must be d x d");
  const K& k = phi.ring()->field();
  std::vector<Polynomial<K>> out;
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      std::vector<Term<K>> ts;
      for (std::size_t y = 0; y < d; ++y) {
        auto c = k.zero();
        for (std::size_t x = 0; x < d; ++x) c = k.add(c, k.mul(phi.coefficient(i, j, x), coordinates.at(x, y)));
        if (!K::is_zero(c)) ts.push_back({Monomial::variable(phi.block_vars()[y]), c});
      }
      out.push_back(Polynomial<K>::from_terms(phi.ring(), std::move(ts)));
    }
  return LinearMatrix<K>(phi.ring(), phi.block(), phi.rows(), phi.cols(), std::move(out));
}

template <class K>
CanonicalForm<K> canonical_form(const LinearMatrix<K>& phi, const std::vector<typename K::Element>& point,
                                std::optional<std::size_t> expected_u) {
  const K& k = phi.ring()->field();
  const std::size_t d = phi.block_vars().size();
  if (point.size() != d) throw PreconditionError("point must have one coordinate per block variable");
  std::size_t pivot = d;
  for (std::size_t i = 0; i < d; ++i)
    if (!K::is_zero(point[i])) {
      pivot = i;
      break;
    }
  if (pivot == d) throw PreconditionError("the zero vector is not a projective point");

  // value of φ at the point = x1-coefficient matrix after the coordinate change
  ScalarMatrix<K> at_point(k, phi.rows(), phi.cols());
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      auto v = k.zero();
      for (std::size_t x = 0; x < d; ++x) v = k.add(v, k.mul(phi.coefficient(i, j, x), point[x]));
      at_point.at(i, j) = v;
    }
  auto rf = rank_factorization(at_point);
  if (expected_u && rf.rank > *expected_u)
    throw PreconditionError("point is not a zero of I_" + std::to_string(*expected_u + 1) + "(phi)");

  ScalarMatrix<K> coords(k, d, d);
  for (std::size_t x = 0; x < d; ++x) coords.at(x, 0) = point[x];
  std::size_t col = 1;
  for (std::size_t x = 0; x < d; ++x)
    if (x != pivot) coords.at(x, col++) = k.one();

  auto moved = change_coordinates(phi, coords);
  ScalarConjugation<K> conj(rf.left, rf.right);
  auto result = conjugate(moved, conj);
  if (!has_canonical_shape(result, rf.rank)) throw TheoremViolation("canonical form construction failed");
  return CanonicalForm<K>{std::move(coords), std::move(conj), std::move(result), rf.rank};
}

#define BLOWUP_INSTANTIATE(K)                                                                              \
  template class ScalarMatrix<K>;                                                                          \
  template RankFactorization<K> rank_factorization(const ScalarMatrix<K>&);                                \
  template class LinearMatrix<K>;                                                                          \
  template class MinorCache<K>;                                                                            \
  template std::vector<Polynomial<K>> all_minors(const LinearMatrix<K>&, std::size_t);                     \
  template Ideal<K> minors(const LinearMatrix<K>&, std::size_t);                                           \
  template Polynomial<K> determinant(const LinearMatrix<K>&);                                              \
  template SignedMinorVector<K> signed_maximal_minors(const LinearMatrix<K>&);                             \
  template std::pair<std::size_t, MinorWitness> rank_mod_witness(const LinearMatrix<K>&, const GroebnerBasis<K>*); \
  template std::size_t rank_mod(const LinearMatrix<K>&, const GroebnerBasis<K>*);                          \
  template class ScalarConjugation<K>;                                                                     \
  template LinearMatrix<K> conjugate(const LinearMatrix<K>&, const ScalarConjugation<K>&);                 \
  template LinearMatrix<K> jacobian_dual(const LinearMatrix<K>&, const RingPtr<K>&, std::size_t);          \
  template bool dual_identity_holds(const LinearMatrix<K>&, const LinearMatrix<K>&);                       \
  template bool has_canonical_shape(const LinearMatrix<K>&, std::size_t);                                  \
  template LinearMatrix<K> change_coordinates(const LinearMatrix<K>&, const ScalarMatrix<K>&);             \
  template CanonicalForm<K> canonical_form(const LinearMatrix<K>&, const std::vector<K::Element>&,        \
                                           std::optional<std::size_t>);

BLOWUP_INSTANTIATE(RationalField)
BLOWUP_INSTANTIATE(PrimeField)

}  // namespace blowup
