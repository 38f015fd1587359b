#include "blowup/monomial.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

constexpr std::uint64_t kLow7 = 0x7f7f7f7f7f7f7f7full;
constexpr std::uint64_t kHigh = 0x8080808080808080ull;

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial p;
  std::uint64_t overflow = 0;
  for (std::size_t w = 0; w < kMaxVars / 8; ++w) {
    std::uint64_t x = a.word(w), y = b.word(w);
    std::uint64_t s = ((x & kLow7) + (y & kLow7)) ^ ((x ^ y) & kHigh);
    overflow |= ((x & y) | ((x | y) & ~s)) & kHigh;
    std::memcpy(p.e.data() + 8 * w, &s, 8);
  }
  if (overflow) throw Error("exponent overflow (max 255)");
  return p;
}

MonomialOrder::MonomialOrder(std::vector<OrderBlock> blocks) : blocks_(std::move(blocks)) {
  std::vector<bool> seen(kMaxVars, false);
  for (auto& b : blocks_) {
    if (b.weights.empty()) b.weights.assign(b.vars.size(), 1);
    if (b.weights.size() != b.vars.size()) throw PreconditionError("order block weight count mismatch");
    Compiled c;
    c.kind = b.kind;
    c.count = static_cast<std::uint8_t>(b.vars.size());
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      std::size_t v = b.vars[i];
      if (v >= kMaxVars || seen[v]) throw PreconditionError("order blocks must partition the variables");
      if (b.weights[i] == 0) throw PreconditionError("order weights must be positive");
      seen[v] = true;
      c.vars[i] = static_cast<std::uint8_t>(v);
      c.weights[i] = b.weights[i];
    }
    nvars_ += b.vars.size();
    c.fast = std::is_sorted(b.vars.begin(), b.vars.end()) &&
             std::all_of(b.weights.begin(), b.weights.end(), [&](std::uint32_t w) { return w == b.weights[0]; });
    for (auto v : b.vars) c.mask[v / 8] |= std::uint64_t{0xff} << (8 * (v % 8));
    c.word_lo = 4;
    c.word_hi = 0;
    for (std::uint8_t w = 0; w < 4; ++w)
      if (c.mask[w]) {
        c.word_lo = std::min(c.word_lo, w);
        c.word_hi = static_cast<std::uint8_t>(w + 1);
      }
    compiled_.push_back(c);
  }
  for (std::size_t v = 0; v < nvars_; ++v)
    if (!seen[v]) throw PreconditionError("order blocks must cover variables 0..n-1");
}

namespace {

std::vector<std::uint32_t> pick(const std::vector<std::uint32_t>& weights,
                                const std::vector<std::size_t>& vars) {
  if (weights.empty()) return {};
  std::vector<std::uint32_t> out;
  for (auto v : vars) out.push_back(weights.at(v));
  return out;
}

}  // namespace

MonomialOrder MonomialOrder::grevlex(std::size_t nvars, std::vector<std::uint32_t> weights) {
  std::vector<std::size_t> vars(nvars);
  std::iota(vars.begin(), vars.end(), 0);
  return MonomialOrder({OrderBlock{vars, pick(weights, vars), OrderKind::grevlex}});
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  std::vector<std::size_t> vars(nvars);
  std::iota(vars.begin(), vars.end(), 0);
  return MonomialOrder({OrderBlock{vars, {}, OrderKind::lex}});
}

MonomialOrder MonomialOrder::block_elimination(std::vector<std::size_t> eliminated,
                                               std::vector<std::size_t> kept, OrderKind inner,
                                               std::vector<std::uint32_t> weights) {
  return product({std::move(eliminated), std::move(kept)}, inner, std::move(weights));
}

MonomialOrder MonomialOrder::product(std::vector<std::vector<std::size_t>> blocks, OrderKind inner,
                                     std::vector<std::uint32_t> weights) {
  std::vector<OrderBlock> out;
  for (auto& b : blocks) {
    if (b.empty()) continue;
    auto w = pick(weights, b);
    out.push_back(OrderBlock{std::move(b), std::move(w), inner});
  }
  return MonomialOrder(std::move(out));
}

int MonomialOrder::compare_slow(const Compiled& c, const Monomial& a, const Monomial& b) {
  if (c.kind == OrderKind::grevlex) {
    std::uint64_t da = 0, db = 0;
    for (std::uint8_t i = 0; i < c.count; ++i) {
      da += std::uint64_t{c.weights[i]} * a.e[c.vars[i]];
      db += std::uint64_t{c.weights[i]} * b.e[c.vars[i]];
    }
    if (da != db) return da > db ? 1 : -1;
    for (int i = c.count - 1; i >= 0; --i) {
      auto ea = a.e[c.vars[i]], eb = b.e[c.vars[i]];
      if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
  }
  for (std::uint8_t i = 0; i < c.count; ++i) {
    auto ea = a.e[c.vars[i]], eb = b.e[c.vars[i]];
    if (ea != eb) return ea > eb ? 1 : -1;
  }
  return 0;
}

bool MonomialOrder::eliminates(std::span<const std::size_t> vars) const {
  std::vector<std::size_t> want(vars.begin(), vars.end());
  std::sort(want.begin(), want.end());
  if (want.empty()) return true;
  std::vector<std::size_t> acc;
  for (const auto& b : blocks_) {
    acc.insert(acc.end(), b.vars.begin(), b.vars.end());
    std::sort(acc.begin(), acc.end());
    if (acc == want) return true;
    if (acc.size() >= want.size()) return false;
  }
  return false;
}

std::string MonomialOrder::describe() const {
  std::string s;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += " > ";
    s += blocks_[i].kind == OrderKind::grevlex ? "grevlex(" : "lex(";
    s += std::to_string(blocks_[i].vars.size()) + ")";
  }
  return s;
}

}  // namespace blowup
