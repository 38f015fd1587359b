#include "blowup/field.hpp"

namespace blowup {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t q = 3; q * q <= p; q += 2) {
    if (p % q == 0) return false;
  }
  return true;
}

CoeffField CoeffField::prime(std::uint32_t p) {
  if (p >= (1u << 31)) throw PreconditionError("prime modulus must be below 2^31");
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  return {FieldKind::prime, p};
}

std::string CoeffField::to_string() const {
  if (kind == FieldKind::rationals) return "QQ";
  return "fp " + std::to_string(modulus);
}

PrimeField::PrimeField(std::uint32_t p) : p_(CoeffField::prime(p).modulus) {}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw DivisionByZero();
  // extended Euclid on (a, p)
  std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  s0 %= static_cast<std::int64_t>(p_);
  if (s0 < 0) s0 += p_;
  return static_cast<Element>(s0);
}

}  // namespace blowup
