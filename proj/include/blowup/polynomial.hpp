#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/field.hpp"
#include "blowup/monomial.hpp"

namespace blowup {

enum class BlockRole { x, t, auxiliary };

struct VariableBlock {
  std::vector<std::string> names;
  BlockRole role = BlockRole::auxiliary;
};

template <class K>
class Ring;

template <class K>
using RingPtr = std::shared_ptr<const Ring<K>>;

/// Polynomial ring over K: variable blocks, a monomial order and a positive grading.
/// Immutable once built; share it through RingPtr.
template <class K>
class Ring {
 public:
  /// Default order is grevlex on all variables with `grading` as weights.
  static RingPtr<K> make(K field, std::vector<VariableBlock> blocks,
                         std::optional<MonomialOrder> order = std::nullopt,
                         std::vector<std::uint32_t> grading = {});

  const K& field() const { return field_; }
  std::size_t num_vars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<VariableBlock>& blocks() const { return blocks_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<std::uint32_t>& grading() const { return grading_; }

  /// Variable indices of block b.
  std::vector<std::size_t> block_vars(std::size_t b) const;
  std::optional<std::size_t> find_block(BlockRole role) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  /// Same variables and field, different order (and optionally grading).
  RingPtr<K> with_order(MonomialOrder order, std::vector<std::uint32_t> grading = {}) const;

  /// Same field, variable names in the same positions, same order.
  bool equivalent(const Ring& other) const;
  bool same_variables(const Ring& other) const;

  std::uint64_t weighted_degree(const Monomial& m) const;
  std::string monomial_to_string(const Monomial& m) const;

 private:
  Ring() = default;

  K field_;
  std::vector<VariableBlock> blocks_;
  std::vector<std::string> names_;
  MonomialOrder order_;
  std::vector<std::uint32_t> grading_;
};

template <class K>
struct Term {
  Monomial m;
  typename K::Element c;
};

/// Exact multivariate polynomial. Terms are kept sorted by the ring order,
/// descending, with no zero coefficients.
template <class K>
class Polynomial {
 public:
  using Element = typename K::Element;

  Polynomial() = default;
  explicit Polynomial(RingPtr<K> ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr<K> ring, const Element& c);
  static Polynomial from_int(RingPtr<K> ring, long long c);
  static Polynomial variable(RingPtr<K> ring, std::size_t index);
  static Polynomial variable(RingPtr<K> ring, std::string_view name);
  static Polynomial monomial(RingPtr<K> ring, const Monomial& m, const Element& c);
  /// Sorts and merges duplicates; terms need not be ordered.
  static Polynomial from_terms(RingPtr<K> ring, std::vector<Term<K>> terms);

  const RingPtr<K>& ring() const { return ring_; }
  const K& field() const { return ring_->field(); }
  const std::vector<Term<K>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

  const Term<K>& lead() const { return terms_.front(); }
  const Monomial& lead_monomial() const { return terms_.front().m; }
  const Element& lead_coeff() const { return terms_.front().c; }

  /// Largest total (unweighted) degree; -1 for zero.
  int total_degree() const;
  /// Homogeneous for the ring grading (zero counts as homogeneous).
  bool is_homogeneous() const;
  /// Degree in the ring grading of the leading term.
  std::uint64_t weighted_degree() const { return ring_->weighted_degree(lead_monomial()); }
  /// (degree in vars of block a, degree in vars of block b) when every term agrees.
  std::optional<std::pair<unsigned, unsigned>> bidegree(std::size_t block_a, std::size_t block_b) const;
  /// Coefficient of a monomial (zero when absent).
  Element coefficient(const Monomial& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Element& c) const;
  Polynomial mul_term(const Monomial& m, const Element& c) const;
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  /// *this -= c * m * g, in place (merge of two sorted term lists).
  void sub_mul(const Element& c, const Monomial& m, const Polynomial& g);

  /// Same polynomial in a ring with the same variables but another order.
  Polynomial reordered(RingPtr<K> target) const;

  bool operator==(const Polynomial& o) const;

  std::string to_string() const;

 private:
  void require_same_ring(const Polynomial& o) const;
  void sort_terms();

  RingPtr<K> ring_;
  std::vector<Term<K>> terms_;
};

/// Ring homomorphism determined by images of variables. Variables without an explicit
/// image go to the variable of the same name in `target`.
template <class K>
Polynomial<K> substitute(const Polynomial<K>& p, const std::map<std::string, Polynomial<K>>& images,
                         const RingPtr<K>& target);

/// Renames variables by position: source variable i becomes target variable index_map[i].
template <class K>
Polynomial<K> embed(const Polynomial<K>& p, const RingPtr<K>& target,
                    const std::vector<std::size_t>& index_map);

/// Maps a polynomial into `target` by matching variable names (all must exist there).
template <class K>
Polynomial<K> map_by_name(const Polynomial<K>& p, const RingPtr<K>& target);

template <class K>
typename K::Element evaluate(const Polynomial<K>& p, const std::vector<typename K::Element>& point);

}  // namespace blowup
