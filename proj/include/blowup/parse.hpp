#pragma once

#include <string_view>

#include "blowup/polynomial.hpp"

namespace blowup {

/// Parses sums of products such as "2*x1 - x3 + 5*t2" or "(x1+x2)^2 - x3*x4".
/// Integer coefficients only; '^' takes a non-negative integer exponent; whitespace
/// is ignored. Errors are ParseError with a 1-based column.
template <class K>
Polynomial<K> parse_polynomial(const RingPtr<K>& ring, std::string_view text);

}  // namespace blowup
