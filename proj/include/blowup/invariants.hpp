#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blowup/linmatrix.hpp"

namespace blowup {

/// The polynomial rings around a presentation φ (n x (n-1), linear in x1..xd):
/// k[x], k[t1..tn], k[x, t] and k[w, x, t] with w an auxiliary variable.
template <class K>
struct BlowupRings {
  RingPtr<K> x, t, xt, wxt;
  std::size_t d = 0, n = 0;

  /// Throws PreconditionError if a variable of `x_names` clashes with t1..tn or w.
  static BlowupRings make(const K& field, const std::vector<std::string>& x_names, std::size_t n);
};

/// Heights of the ideals of minors of one matrix, computed on demand.
template <class K>
class MinorHeights {
 public:
  MinorHeights(LinearMatrix<K> m, GroebnerBudget budget = {});

  const LinearMatrix<K>& matrix() const { return m_; }
  /// Ht I_j for j >= 1; I_j = 0 (height 0) once j exceeds a dimension.
  int height(std::size_t j);
  const std::map<std::size_t, int>& computed() const { return heights_; }

 private:
  LinearMatrix<K> m_;
  GroebnerBudget budget_;
  std::map<std::size_t, int> heights_;
};

/// One inequality of a G_s condition: Ht I_j >= required.
struct HeightCheck {
  std::size_t j = 0;
  int height = 0;
  int required = 0;
  bool ok() const { return height >= required; }
};

struct GsProfile {
  std::size_t s = 0;
  std::size_t rank = 1;
  std::vector<HeightCheck> checks;
  bool holds = true;
  /// First failing index, if any.
  std::optional<std::size_t> failing_j;
};

/// G_s for the module with presentation ψ (m rows) of rank e:
/// Ht I_j(ψ) >= m - j - (e - 2) for m - s - (e - 2) <= j <= m - e, ignoring j < 1.
template <class K>
GsProfile check_Gs_module(MinorHeights<K>& heights, std::size_t s, std::size_t e);

/// G_s for the ideal presented by φ (rank 1 module): Ht I_j >= n - j + 1 for
/// n - s + 1 <= j <= n - 1.
template <class K>
GsProfile check_Gs_ideal(MinorHeights<K>& heights, std::size_t s);

/// Least u with Ht I_{u+1}(φ) = d - 1 for a φ satisfying G_{d-1} but not G_d, checked
/// against Ht I_i = d for i <= u and Ht I_{n-d+1} = d - 1. Throws HypothesisError when
/// φ satisfies G_d or fails G_{d-1}.
template <class K>
std::size_t compute_u(MinorHeights<K>& heights);

/// Krull dimension of the symmetric algebra of coker ψ: dim k[x, t1..tm]/I_1(t·ψ).
template <class K>
int sym_dimension(const LinearMatrix<K>& psi, const GroebnerBudget& budget = {});

/// Generators of I_1(t·φ) in k[x, t].
template <class K>
Ideal<K> symmetric_ideal(const LinearMatrix<K>& phi, const BlowupRings<K>& rings);

/// Rees ideal J of I = (g_1..g_n) in k[x, t] and the special fiber ideal Q = J ∩ k[t].
template <class K>
struct ReesData {
  BlowupRings<K> rings;
  std::vector<Polynomial<K>> generators;  // g_i in k[x]
  Ideal<K> rees;                          // J in k[x, t]
  Ideal<K> fiber;                         // Q in k[t]
  GroebnerStats stats;
};

/// J = ker(k[x, t] -> k[x, w], t_i -> w g_i), computed by eliminating w under the
/// block order [w] > [x] > [t], which yields Q from the same basis. `known` are
/// elements of J (in k[x, t]) added to the input to shorten the computation.
template <class K>
ReesData<K> rees_from_generators(const BlowupRings<K>& rings, const std::vector<Polynomial<K>>& gens,
                                 const GroebnerBudget& budget = {}, const std::vector<Polynomial<K>>& known = {});

enum class ReesMethod {
  saturation,   // I_1(t·φ) : g^∞ for the first nonzero g_i
  elimination,  // rees_from_generators
};

/// Rees data of the ideal of signed maximal minors of φ, ordered so that g·φ = 0.
/// J is returned as a reduced grevlex basis. Throws TheoremViolation if dim J != d + 1.
template <class K>
ReesData<K> rees_ideal(const LinearMatrix<K>& phi, const BlowupRings<K>& rings, const GroebnerBudget& budget = {},
                       ReesMethod method = ReesMethod::saturation);

/// dim k[t]/Q.
template <class K>
int analytic_spread(const ReesData<K>& rees, const GroebnerBudget& budget = {});

/// Signed maximal minors of an n x (n-1) matrix: g_i = (-1)^(i+1) det(φ without row i).
template <class K>
std::vector<Polynomial<K>> maximal_minor_generators(const LinearMatrix<K>& phi);

}  // namespace blowup
