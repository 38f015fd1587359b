#pragma once

#include <random>
#include <string>
#include <vector>

#include "blowup/groebner.hpp"
#include "blowup/parse.hpp"

namespace blowup::testing {

inline std::vector<std::string> names(const std::string& prefix, std::size_t n, std::size_t first = 1) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(first + i));
  return out;
}

template <class K>
RingPtr<K> ring(K field, std::vector<std::string> vars) {
  return Ring<K>::make(std::move(field), {VariableBlock{std::move(vars), BlockRole::x}});
}

template <class K>
Polynomial<K> P(const RingPtr<K>& r, const std::string& s) {
  return parse_polynomial(r, s);
}

template <class K>
Ideal<K> ideal(const RingPtr<K>& r, std::vector<std::string> gens) {
  std::vector<Polynomial<K>> ps;
  for (auto& g : gens) ps.push_back(parse_polynomial(r, g));
  return Ideal<K>(r, std::move(ps));
}

/// Random polynomial with small exponents and nonzero coefficients in [-5, 5].
template <class K>
Polynomial<K> random_poly(const RingPtr<K>& r, std::mt19937_64& rng, int terms, int max_exp) {
  std::vector<Term<K>> ts;
  std::uniform_int_distribution<int> e(0, max_exp), c(-5, 5);
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < r->num_vars(); ++v) m.e[v] = static_cast<std::uint8_t>(e(rng));
    int cv = c(rng);
    if (cv == 0) cv = 1;
    ts.push_back({m, r->field().from_int(cv)});
  }
  return Polynomial<K>::from_terms(r, std::move(ts));
}

}  // namespace blowup::testing
