#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace blowup {

/// Upper bound on the number of variables of any ring.
inline constexpr std::size_t kMaxVars = 32;

/// Dense exponent vector; unused slots stay zero. One vector fills an AVX2 register.
struct alignas(32) Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  std::uint8_t operator[](std::size_t i) const { return e[i]; }
  std::uint8_t& operator[](std::size_t i) { return e[i]; }

  unsigned degree() const {
    unsigned s = 0;
    for (auto v : e) s += v;
    return s;
  }

  bool is_one() const {
    for (auto v : e)
      if (v) return false;
    return true;
  }

  bool operator==(const Monomial&) const = default;

  /// Exponents 8w..8w+7 packed little-endian.
  std::uint64_t word(std::size_t w) const {
    std::uint64_t x;
    std::memcpy(&x, e.data() + 8 * w, 8);
    return x;
  }

  static Monomial variable(std::size_t i, std::uint8_t power = 1) {
    Monomial m;
    m.e[i] = power;
    return m;
  }
};

/// Product; throws Error when an exponent would leave the 8-bit range.
Monomial operator*(const Monomial& a, const Monomial& b);

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

/// b / a, assuming divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial q;
  for (std::size_t i = 0; i < kMaxVars; ++i) q.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
  return q;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial l;
  for (std::size_t i = 0; i < kMaxVars; ++i) l.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
  return l;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

/// Bit i set iff variable i occurs.
inline std::uint32_t support_mask(const Monomial& m) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (m.e[i]) s |= (1u << i);
  return s;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : m.e) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

enum class OrderKind { grevlex, lex };

/// A group of variables compared together: weighted degree first (grevlex only),
/// then reverse-lex or lex inside the group.
struct OrderBlock {
  std::vector<std::size_t> vars;
  std::vector<std::uint32_t> weights;  // parallel to vars
  OrderKind kind = OrderKind::grevlex;
};

/// Product of block orders. A monomial differing in an earlier block is decided there,
/// so every earlier block is eliminated relative to the later ones.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<OrderBlock> blocks);

  static MonomialOrder grevlex(std::size_t nvars, std::vector<std::uint32_t> weights = {});
  static MonomialOrder lex(std::size_t nvars);
  /// `eliminated` ranks above `kept`; both use `inner` internally.
  static MonomialOrder block_elimination(std::vector<std::size_t> eliminated,
                                         std::vector<std::size_t> kept,
                                         OrderKind inner = OrderKind::grevlex,
                                         std::vector<std::uint32_t> weights = {});
  static MonomialOrder product(std::vector<std::vector<std::size_t>> blocks,
                               OrderKind inner = OrderKind::grevlex,
                               std::vector<std::uint32_t> weights = {});

  /// Positive if a > b, negative if a < b, zero if equal.
  int compare(const Monomial& a, const Monomial& b) const {
    for (const auto& c : compiled_) {
      int r = c.fast ? compare_fast(c, a, b) : compare_slow(c, a, b);
      if (r) return r;
    }
    return 0;
  }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::size_t num_vars() const { return nvars_; }
  const std::vector<OrderBlock>& blocks() const { return blocks_; }

  /// True iff `vars` is exactly the union of a leading run of blocks.
  bool eliminates(std::span<const std::size_t> vars) const;

  std::string describe() const;

 private:
  struct Compiled {
    std::array<std::uint8_t, kMaxVars> vars{};
    std::array<std::uint32_t, kMaxVars> weights{};
    std::uint8_t count = 0;
    OrderKind kind = OrderKind::grevlex;
    bool fast = false;  // ascending variables, uniform weights
    std::array<std::uint64_t, kMaxVars / 8> mask{};
    std::uint8_t word_lo = 0, word_hi = 0;
  };

  static unsigned byte_sum(std::uint64_t x) {
    x = (x & 0x00ff00ff00ff00ffull) + ((x >> 8) & 0x00ff00ff00ff00ffull);
    return static_cast<unsigned>((x * 0x0001000100010001ull) >> 48);
  }

  static int compare_fast(const Compiled& c, const Monomial& a, const Monomial& b) {
    if (c.kind == OrderKind::grevlex) {
      unsigned da = 0, db = 0;
      for (std::size_t w = c.word_lo; w < c.word_hi; ++w) {
        da += byte_sum(a.word(w) & c.mask[w]);
        db += byte_sum(b.word(w) & c.mask[w]);
      }
      if (da != db) return da > db ? 1 : -1;
      for (std::size_t w = c.word_hi; w-- > c.word_lo;) {
        std::uint64_t aw = a.word(w) & c.mask[w], bw = b.word(w) & c.mask[w];
        std::uint64_t x = aw ^ bw;
        if (!x) continue;
        int shift = (63 - std::countl_zero(x)) & ~7;
        return ((aw >> shift) & 0xff) < ((bw >> shift) & 0xff) ? 1 : -1;
      }
      return 0;
    }
    for (std::size_t w = c.word_lo; w < c.word_hi; ++w) {
      std::uint64_t aw = a.word(w) & c.mask[w], bw = b.word(w) & c.mask[w];
      std::uint64_t x = aw ^ bw;
      if (!x) continue;
      int shift = std::countr_zero(x) & ~7;
      return ((aw >> shift) & 0xff) > ((bw >> shift) & 0xff) ? 1 : -1;
    }
    return 0;
  }

  static int compare_slow(const Compiled& c, const Monomial& a, const Monomial& b);

  std::vector<OrderBlock> blocks_;
  std::vector<Compiled> compiled_;
  std::size_t nvars_ = 0;
};

}  // namespace blowup
