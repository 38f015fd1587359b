#include "blowup/parse.hpp"

#include <cctype>
#include <string>

namespace blowup {

namespace {

template <class K>
class Parser {
 public:
  Parser(const RingPtr<K>& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial<K> run() {
    skip();
    if (pos_ >= text_.size()) fail("empty expression");
    auto p = expr();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 0, pos_ + 1); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial<K> expr() {
    Polynomial<K> acc(ring_);
    bool first = true;
    while (true) {
      skip();
      bool neg = false;
      if (accept('-')) neg = true;
      else if (!accept('+') && !first) break;
      auto t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      skip();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
    }
    return acc;
  }

  Polynomial<K> term() {
    auto p = power();
    while (true) {
      skip();
      if (accept('*')) {
        p = p * power();
        continue;
      }
      // implicit product "2x1" is not accepted: require '*'
      break;
    }
    return p;
  }

  Polynomial<K> power() {
    auto base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      unsigned long long e = number();
      if (e > 255) {
        pos_ = start;
        fail("exponent too large");
      }
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  unsigned long long number() {
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a number");
    unsigned long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (~0ull) / 20) fail("integer too large");
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  Polynomial<K> atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
      return Polynomial<K>::constant(ring_, from_digits(digits, start));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial<K>::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  typename K::Element from_digits(const std::string& digits, std::size_t start) {
    const K& k = ring_->field();
    if constexpr (std::is_same_v<K, RationalField>) {
      (void)start;
      return typename K::Element(mpz_class(digits));
    } else {
      auto acc = k.zero();
      auto ten = k.from_int(10);
      for (char d : digits) acc = k.add(k.mul(acc, ten), k.from_int(d - '0'));
      (void)start;
      return acc;
    }
  }

  const RingPtr<K>& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class K>
Polynomial<K> parse_polynomial(const RingPtr<K>& ring, std::string_view text) {
  return Parser<K>(ring, text).run();
}

template Polynomial<RationalField> parse_polynomial(const RingPtr<RationalField>&, std::string_view);
template Polynomial<PrimeField> parse_polynomial(const RingPtr<PrimeField>&, std::string_view);

}  // namespace blowup
