#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

#include "blowup/errors.hpp"

namespace blowup {

enum class FieldKind { rationals, prime };

/// Runtime description of a coefficient field, as read from files and flags.
struct CoeffField {
  FieldKind kind = FieldKind::prime;
  std::uint32_t modulus = 0;  // 0 for the rationals

  static CoeffField rationals() { return {FieldKind::rationals, 0}; }
  static CoeffField prime(std::uint32_t p);

  std::string to_string() const;
  bool operator==(const CoeffField&) const = default;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

bool is_prime(std::uint32_t p);

/// The rationals, with exact GMP arithmetic.
class RationalField {
 public:
  using Element = mpq_class;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(mpz_class(std::to_string(v))); }

  static bool is_zero(const Element& a) { return sgn(a) == 0; }
  static bool is_one(const Element& a) { return a == 1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (is_zero(a)) throw DivisionByZero();
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  static std::string to_string(const Element& a) { return a.get_str(); }
  static bool is_negative(const Element& a) { return sgn(a) < 0; }

  CoeffField descriptor() const { return CoeffField::rationals(); }
  bool operator==(const RationalField&) const { return true; }
};

/// Integers modulo a prime p < 2^31, elements kept reduced in [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }

  static bool is_zero(Element a) { return a == 0; }
  static bool is_one(Element a) { return a == 1; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  long long centered(Element a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
  }
  std::string to_string(Element a) const { return std::to_string(centered(a)); }
  bool is_negative(Element a) const { return centered(a) < 0; }

  CoeffField descriptor() const { return CoeffField::prime(p_); }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

template <class K>
concept CoefficientField = requires(const K& k, const typename K::Element& a) {
  { k.add(a, a) } -> std::same_as<typename K::Element>;
  { k.mul(a, a) } -> std::same_as<typename K::Element>;
  { k.inv(a) } -> std::same_as<typename K::Element>;
  { K::is_zero(a) } -> std::same_as<bool>;
};

}  // namespace blowup
