#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "blowup/invariants.hpp"

namespace blowup {

/// Tri-state outcome of one check.
struct Flag {
  enum class State { yes, no, not_evaluated };
  State state = State::not_evaluated;
  std::string reason;  // why it was not evaluated, or a short diagnostic

  static Flag of(bool v, std::string note = {}) { return {v ? State::yes : State::no, std::move(note)}; }
  static Flag skipped(std::string why) { return {State::not_evaluated, std::move(why)}; }
  bool evaluated() const { return state != State::not_evaluated; }
  bool value() const { return state == State::yes; }
  std::string to_string() const;
};

/// A flag together with the value the theory predicts for it.
struct Claim {
  std::string name;
  Flag observed;
  bool expected = true;
  bool consistent() const { return !observed.evaluated() || observed.value() == expected; }
};

/// First point of P^{d-1}(F_p) (first nonzero coordinate 1, enumerated from (1:0:...:0)
/// with the last coordinate running fastest) where every generator of `j` vanishes.
/// Throws BudgetExceeded after `point_cap` points.
std::optional<std::vector<std::uint32_t>> find_point(const Ideal<PrimeField>& j, std::uint64_t point_cap = 1000000);

/// A point of V(j) in P^{d-1}(F_p) found chart by chart from lex bases, trying every
/// element of F_p as a root of each univariate eliminant (at most `free_values` values
/// for a variable left unconstrained). Suited to fields too large to enumerate; may
/// miss points on positive-dimensional components.
std::optional<std::vector<std::uint32_t>> solve_point(const Ideal<PrimeField>& j, std::size_t free_values = 64,
                                                      const GroebnerBudget& budget = {});

/// J = ⟨I_1(t·φ), Q⟩.
template <class K>
bool is_fiber_type(const ReesData<K>& rees, const Ideal<K>& sym, const GroebnerBudget& budget = {});

/// J = ⟨I_1(t·φ), I_d(B)⟩ with B over k[t].
template <class K>
bool is_expected_form(const ReesData<K>& rees, const Ideal<K>& sym, const LinearMatrix<K>& b,
                      const GroebnerBudget& budget = {});

struct BirationalityResult {
  bool birational = false;
  std::size_t rank = 0;
  MinorWitness witness;  // a (d-1)-minor nonzero mod Q when birational
};

/// rank of B modulo Q at least d - 1, B being d x (n-1). Q must be proper.
template <class K>
BirationalityResult birationality_check(const LinearMatrix<K>& b, const GroebnerBasis<K>& q);

template <class K>
struct InverseRepresentative {
  std::vector<std::size_t> cols;
  std::vector<Polynomial<K>> delta;
};

template <class K>
struct InverseData {
  std::vector<InverseRepresentative<K>> listed;
  std::vector<std::vector<std::size_t>> excluded;
  /// δ^i_A δ^j_B - δ^j_A δ^i_B ∈ Q for all listed A, B.
  bool cross_compatible = true;
  /// Every δ of an excluded selection lies in Q.
  bool excluded_in_fiber = true;
};

/// Column selections of B (d x (d-1)) of rank d - 1 modulo Q with their signed minors.
/// Throws TheoremViolation if there are none.
template <class K>
InverseData<K> inverse_representatives(const LinearMatrix<K>& b, const GroebnerBasis<K>& q);

template <class K>
struct SpecializationData {
  using Element = typename K::Element;
  std::vector<Element> b;      // b_2..b_d
  Polynomial<K> form;          // x1 - b_2 x2 - ... - b_d xd in k[x]
  LinearMatrix<K> phi_bar;     // φ with x1 -> b_2 x2 + ... + b_d xd, over k[x2..xd]
  LinearMatrix<K> b_bar;       // (d-1) x (n-1) over k[t]
  std::size_t attempts = 0;
};

/// φ̄ and B̄ for the given b, with no checks. `b_matrix` is the Jacobian dual of φ over k[t].
template <class K>
SpecializationData<K> make_specialization(const LinearMatrix<K>& phi, const LinearMatrix<K>& b_matrix,
                                          std::vector<typename K::Element> b);

/// True iff Ht⟨I_j(φ), f⟩ = Ht I_j(φ) + 1 for n-d+2 <= j <= n-1.
template <class K>
bool avoids_minimal_primes(const LinearMatrix<K>& phi, const Polynomial<K>& form, const GroebnerBudget& budget = {});

/// Tries b = 0, then random b until the form avoids the minimal primes of the I_j.
/// Throws BudgetExceeded after `max_tries` candidates.
template <class K>
SpecializationData<K> specialization_form(const LinearMatrix<K>& phi, const LinearMatrix<K>& b_matrix,
                                          std::uint64_t seed, std::size_t max_tries = 50,
                                          const GroebnerBudget& budget = {});

/// Rees ideal of Ī equals ⟨I_1(t·φ̄), I_{d-1}(B̄)⟩. Throws HypothesisError unless Ī has
/// height 2 and satisfies G_{d-1}.
template <class K>
bool verify_specialized_MU(const SpecializationData<K>& s, const GroebnerBudget& budget = {});

/// Ī is generated by the maximal minors of φ̄.
template <class K>
bool specialization_sound(const LinearMatrix<K>& phi, const SpecializationData<K>& s,
                          const GroebnerBudget& budget = {});

struct DetIdentityResult {
  bool identity_all = true;          // det(B̄_S) = δ¹ - Σ b_i δ^i for every selection S
  bool deficient_in_fiber = true;    // det(B̄_S) ∈ Q when rank_mod(B_S, Q) < d - 1
  std::size_t selections = 0;
  std::size_t deficient = 0;
};

template <class K>
DetIdentityResult verify_det_identity(const SpecializationData<K>& s, const LinearMatrix<K>& b,
                                      const GroebnerBasis<K>& q);

/// Random φ over k[x1..xd] with x1 + (form in x2..xd) at (i, i) for i < u and forms in
/// x2..xd elsewhere, resampled until I_1 is maximal, Ht I_{n-1} = 2, G_{d-1} holds and
/// u is recovered. Throws BudgetExceeded after `max_tries`.
template <class K>
LinearMatrix<K> generate_instance(std::size_t d, std::size_t n, std::size_t u, const K& field, std::uint64_t seed,
                                  std::size_t max_tries = 200, const GroebnerBudget& budget = {});

/// Fully random n x (n-1) linear matrix in d variables.
template <class K>
LinearMatrix<K> generate_generic(std::size_t d, std::size_t n, const K& field, std::uint64_t seed);

struct VerifyOptions {
  GroebnerBudget budget = GroebnerBudget::from_env();
  std::uint64_t seed = 1;
  std::size_t specialization_tries = 50;
  std::uint64_t point_cap = 1000000;
  ReesMethod rees_method = ReesMethod::saturation;
  std::size_t max_d = 4, max_n = 7;
};

struct InverseEntry {
  std::vector<std::size_t> cols;
  std::vector<std::string> delta;
};

struct VerificationReport {
  std::string field;
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> input;
  std::uint64_t input_hash = 0;
  std::uint64_t seed = 0;
  std::size_t d = 0, n = 0;
  std::optional<std::size_t> u;
  std::string mode;  // "theorem" or "expected-form"
  std::vector<std::string> notices;

  std::map<std::size_t, int> heights;  // j -> Ht I_j(φ), j = 1..n-1
  std::map<std::size_t, bool> gs;      // s -> G_s, s = 1..d
  std::optional<GsProfile> module_gs;

  std::optional<std::vector<std::string>> point;
  std::vector<std::vector<std::string>> canonical, dual;
  std::optional<int> sym_dim, rees_dim, spread, module_sym_dim;
  std::optional<std::size_t> rank_b, rank_b_prime, rank_b_mod_q;
  std::optional<MinorWitness> birational_witness;
  std::optional<unsigned> indeg_q;
  std::vector<std::string> fiber;  // reduced basis of Q
  std::vector<InverseEntry> inverse_representatives;
  std::vector<std::string> specialization_b;
  std::string specialization_form;

  std::vector<Claim> claims;
  std::map<std::string, Flag> open_questions;

  std::vector<std::pair<std::string, double>> timings;  // seconds per stage
  std::vector<std::string> budget_notes;
  GroebnerStats rees_stats;

  const Claim* claim(const std::string& name) const;
  Flag flag(const std::string& name) const;
  bool consistent() const;
};

/// FNV-1a over the field, variable names and entry strings.
template <class K>
std::uint64_t input_hash(const LinearMatrix<K>& phi);

/// Runs every check on φ. Inputs satisfying G_d are checked for the expected form
/// instead. Throws HypothesisError when another hypothesis fails, PreconditionError when
/// the size caps are exceeded or no rational point of V(I_{u+1}) is available.
/// Budget overruns inside a stage leave its flags not evaluated and add a budget note.
template <class K>
VerificationReport verify_main_theorem(const LinearMatrix<K>& phi, const VerifyOptions& opts = {},
                                       std::optional<std::vector<typename K::Element>> point = std::nullopt);

}  // namespace blowup
