#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "blowup/groebner.hpp"

namespace blowup {

/// Dense matrix over the coefficient field.
template <class K>
class ScalarMatrix {
 public:
  using Element = typename K::Element;

  ScalarMatrix() = default;
  ScalarMatrix(K field, std::size_t rows, std::size_t cols);
  static ScalarMatrix identity(K field, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const K& field() const { return field_; }
  Element& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ScalarMatrix operator*(const ScalarMatrix& o) const;
  bool operator==(const ScalarMatrix& o) const = default;

  std::size_t rank() const;
  Element determinant() const;

 private:
  K field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> data_;
};

/// A, C invertible with A * M * C = [I_rank 0; 0 0].
template <class K>
struct RankFactorization {
  ScalarMatrix<K> left;
  ScalarMatrix<K> right;
  std::size_t rank = 0;
};

/// Gaussian elimination with full pivoting (first nonzero in row-major order).
template <class K>
RankFactorization<K> rank_factorization(const ScalarMatrix<K>& m);

/// Matrix whose entries are zero or linear forms in one variable block of its ring.
template <class K>
class LinearMatrix {
 public:
  using Element = typename K::Element;

  LinearMatrix() = default;
  /// Throws ShapeError on bad dimensions or an entry that is not linear in `block`.
  LinearMatrix(RingPtr<K> ring, std::size_t block, std::size_t rows, std::size_t cols,
               std::vector<Polynomial<K>> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr<K>& ring() const { return ring_; }
  std::size_t block() const { return block_; }
  /// Ring indices of the block variables, in block order.
  const std::vector<std::size_t>& block_vars() const { return vars_; }

  const Polynomial<K>& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  /// Coefficient of the k-th block variable in entry (i, j).
  Element coefficient(std::size_t i, std::size_t j, std::size_t k) const;
  /// Scalar matrix of coefficients of the k-th block variable.
  ScalarMatrix<K> coefficient_matrix(std::size_t k) const;

  LinearMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  LinearMatrix select_columns(const std::vector<std::size_t>& cols) const;
  LinearMatrix drop_columns(std::size_t first_count) const;
  /// Same entries in another ring that has the block's variables (matched by name).
  LinearMatrix in_ring(const RingPtr<K>& target, std::size_t target_block) const;

  std::vector<std::vector<std::string>> to_strings() const;
  bool operator==(const LinearMatrix& o) const;

 private:
  RingPtr<K> ring_;
  std::size_t block_ = 0;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial<K>> entries_;
  std::vector<std::size_t> vars_;
};

/// Determinants of square submatrices, memoized by (row set, column set).
template <class K>
class MinorCache {
 public:
  explicit MinorCache(const LinearMatrix<K>& m) : m_(m) {}

  const Polynomial<K>& minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

 private:
  const Polynomial<K>& minor_masks(std::uint32_t rows, std::uint32_t cols);

  const LinearMatrix<K>& m_;
  std::unordered_map<std::uint64_t, Polynomial<K>> memo_;
};

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

/// Every r x r minor (row subsets outer, column subsets inner); empty when r exceeds a dimension.
template <class K>
std::vector<Polynomial<K>> all_minors(const LinearMatrix<K>& m, std::size_t r);

/// I_r(M). The zero ideal when r exceeds either dimension.
template <class K>
Ideal<K> minors(const LinearMatrix<K>& m, std::size_t r);

template <class K>
Polynomial<K> determinant(const LinearMatrix<K>& m);

/// δ^i = (-1)^(i+1) · det(source without row i) for a d x (d-1) matrix.
template <class K>
struct SignedMinorVector {
  LinearMatrix<K> source;
  std::vector<Polynomial<K>> delta;
};

template <class K>
SignedMinorVector<K> signed_maximal_minors(const LinearMatrix<K>& m);

/// Position of a minor with nonzero normal form.
struct MinorWitness {
  std::vector<std::size_t> rows, cols;
};

/// Largest r such that some r-minor is nonzero modulo `modulus` (nullptr: ordinary rank).
template <class K>
std::size_t rank_mod(const LinearMatrix<K>& m, const GroebnerBasis<K>* modulus);

/// Like rank_mod, also returning where the witnessing minor sits (empty for rank 0).
template <class K>
std::pair<std::size_t, MinorWitness> rank_mod_witness(const LinearMatrix<K>& m, const GroebnerBasis<K>* modulus);

/// Pair of invertible scalar matrices acting as φ ↦ A·φ·C.
template <class K>
class ScalarConjugation {
 public:
  ScalarConjugation() = default;
  /// Throws PreconditionError when A or C is singular or not square.
  ScalarConjugation(ScalarMatrix<K> left, ScalarMatrix<K> right);
  static ScalarConjugation identity(K field, std::size_t rows, std::size_t cols);

  const ScalarMatrix<K>& left() const { return left_; }
  const ScalarMatrix<K>& right() const { return right_; }

 private:
  ScalarMatrix<K> left_, right_;
};

template <class K>
LinearMatrix<K> conjugate(const LinearMatrix<K>& phi, const ScalarConjugation<K>& s);

/// The unique B, linear in block `t_block` of `target`, with t·φ = x·B. `target` must
/// contain φ's variables under the same names.
template <class K>
LinearMatrix<K> jacobian_dual(const LinearMatrix<K>& phi, const RingPtr<K>& target, std::size_t t_block);

/// Entrywise check of t·φ = x·B in B's ring, with x the variables of φ's block.
template <class K>
bool dual_identity_holds(const LinearMatrix<K>& phi, const LinearMatrix<K>& b);

/// x1 (first block variable) occurs only at (i, i) for i < u, with coefficient 1.
template <class K>
bool has_canonical_shape(const LinearMatrix<K>& phi, std::size_t u);

template <class K>
struct CanonicalForm {
  /// Columns are the new coordinates: x = coordinates · y; the first column is the point.
  ScalarMatrix<K> coordinates;
  ScalarConjugation<K> conjugation;
  LinearMatrix<K> matrix;
  std::size_t u = 0;
};

/// Moves `point` to (1:0:...:0) by a linear change of coordinates, then conjugates by a
/// rank factorization of the x1-coefficient matrix. If `expected_u` is given the point
/// must be a zero of I_{u+1}(φ), i.e. φ(point) has rank at most u.
template <class K>
CanonicalForm<K> canonical_form(const LinearMatrix<K>& phi, const std::vector<typename K::Element>& point,
                                std::optional<std::size_t> expected_u = std::nullopt);

/// φ with its block variables replaced by the linear forms coordinates·y (same names).
template <class K>
LinearMatrix<K> change_coordinates(const LinearMatrix<K>& phi, const ScalarMatrix<K>& coordinates);

}  // namespace blowup
