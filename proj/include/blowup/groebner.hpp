#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "blowup/polynomial.hpp"

namespace blowup {

/// Caps on a single basis computation. Exceeding either throws BudgetExceeded.
struct GroebnerBudget {
  std::size_t max_pairs = 50000;
  unsigned max_degree = 40;  // total degree of an S-pair lcm

  /// Defaults overridden by BLOWUP_MAX_PAIRS / BLOWUP_MAX_DEGREE when set.
  static GroebnerBudget from_env();
};

struct GroebnerStats {
  std::size_t pairs_processed = 0;
  std::size_t zero_reductions = 0;
  std::size_t product_criterion = 0;
  std::size_t chain_criterion = 0;
  std::size_t reduction_steps = 0;
  std::size_t basis_size = 0;
};

/// Finite generating set of an ideal in a fixed ring and order.
template <class K>
class Ideal {
 public:
  Ideal() = default;
  /// Zero generators are dropped; every generator must live in `ring`.
  Ideal(RingPtr<K> ring, std::vector<Polynomial<K>> generators);

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }
  /// Every generator homogeneous for the ring grading.
  bool is_homogeneous() const { return homogeneous_; }

  /// Same generators in a ring with the same variables and another order.
  Ideal reordered(RingPtr<K> target) const;
  Ideal operator+(const Ideal& other) const;

 private:
  RingPtr<K> ring_;
  std::vector<Polynomial<K>> generators_;
  bool homogeneous_ = true;
};

/// Reduced Gröbner basis (monic, inter-reduced, sorted by decreasing lead monomial)
/// with the initial ideal, dimension and initial degree computed once.
template <class K>
class GroebnerBasis {
 public:
  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& elements() const { return elements_; }
  const Ideal<K>& source() const { return source_; }
  const std::vector<Monomial>& initial_ideal() const { return leads_; }
  const GroebnerStats& stats() const { return stats_; }

  /// Krull dimension of ring/ideal; -1 for the unit ideal.
  int dimension() const { return dimension_; }
  int height() const { return static_cast<int>(ring_->num_vars()) - dimension_; }
  /// Least total degree of a basis element; empty for the zero ideal.
  std::optional<unsigned> initial_degree() const { return initial_degree_; }
  bool is_unit() const { return dimension_ < 0; }
  bool is_zero() const { return elements_.empty(); }

  Polynomial<K> normal_form(const Polynomial<K>& p) const;
  bool contains(const Polynomial<K>& p) const { return normal_form(p).is_zero(); }
  bool contains(const Ideal<K>& other) const;

 private:
  template <class F>
  friend GroebnerBasis<F> buchberger(const Ideal<F>&, const GroebnerBudget&);

  RingPtr<K> ring_;
  Ideal<K> source_;
  std::vector<Polynomial<K>> elements_;
  std::vector<Monomial> leads_;
  GroebnerStats stats_;
  int dimension_ = 0;
  std::optional<unsigned> initial_degree_;
};

/// Buchberger's algorithm with the normal selection strategy (least sugar degree,
/// then least lcm) and the Gebauer-Möller product/chain criteria.
template <class K>
GroebnerBasis<K> buchberger(const Ideal<K>& ideal, const GroebnerBudget& budget = {});

template <class K>
Polynomial<K> normal_form(const Polynomial<K>& p, const GroebnerBasis<K>& basis) {
  return basis.normal_form(p);
}

/// Remainder of p modulo a list of polynomials (which need not be a Gröbner basis).
template <class K>
Polynomial<K> reduce_by(const Polynomial<K>& p, const std::vector<Polynomial<K>>& divisors);

/// Equality via reduced bases under grevlex on the full ring.
template <class K>
bool ideal_equal(const Ideal<K>& a, const Ideal<K>& b, const GroebnerBudget& budget = {});

/// a ⊆ b.
template <class K>
bool ideal_contains(const Ideal<K>& b, const Ideal<K>& a, const GroebnerBudget& budget = {});

/// Generators of I ∩ k[remaining variables], via an elimination order; the result
/// stays in I's ring.
template <class K>
Ideal<K> eliminate(const Ideal<K>& ideal, std::span<const std::size_t> vars, const GroebnerBudget& budget = {});

/// Eliminates every variable of block `block` of the ideal's ring.
template <class K>
Ideal<K> eliminate_block(const Ideal<K>& ideal, std::size_t block, const GroebnerBudget& budget = {});

/// I : f^∞. Homogeneous input uses one grevlex basis with an extra last variable z = f
/// and strips powers of z; otherwise f·w - 1 is added and w eliminated.
template <class K>
Ideal<K> saturate(const Ideal<K>& ideal, const Polynomial<K>& f, const GroebnerBudget& budget = {},
                  GroebnerStats* stats = nullptr);

/// Moves generators into `subring` by variable name; fails if any generator uses a
/// variable missing there.
template <class K>
Ideal<K> contract(const Ideal<K>& ideal, const RingPtr<K>& subring);

template <class K>
int dimension(const Ideal<K>& ideal, const GroebnerBudget& budget = {});

template <class K>
int height(const Ideal<K>& ideal, const GroebnerBudget& budget = {});

/// Throws PreconditionError for the zero ideal, which has no initial degree.
template <class K>
unsigned initial_degree(const Ideal<K>& ideal, const GroebnerBudget& budget = {});

/// Krull dimension of k[x_0..x_{n-1}]/(monomials): size of a largest set of variables
/// containing the support of no generator. -1 when a generator is 1.
int monomial_dimension(std::span<const Monomial> generators, std::size_t nvars);

}  // namespace blowup
