#include "padspec/literal.hpp"

#include <cctype>

namespace padspec {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const TowerRef& tower) : tower_(tower) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      // U+2026 is three bytes in UTF-8
      if (text.substr(i, 3) == "\xE2\x80\xA6") {
        s_ += "...";
        i += 2;
      } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        s_ += text[i];
      }
    }
  }

  PadicScalar parse() {
    if (s_.empty()) bad("empty literal");
    PadicScalar v = expr();
    if (pos_ != s_.size()) bad("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void bad(const std::string& why) const {
    fail(Errc::BadLiteral, "\"" + s_ + "\" at " + std::to_string(pos_) + ": " + why);
  }
  bool eat(std::string_view tok) {
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  PadicScalar expr() {
    PadicScalar acc = PadicScalar::zero(tower_);
    bool neg = false;
    if (eat("-")) neg = true;
    else eat("+");
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat("+")) acc = acc + term();
      else if (eat("-")) acc = acc - term();
      else return acc;
    }
  }

  PadicScalar term() {
    PadicScalar acc = unary();
    for (;;) {
      if (eat("*")) {
        acc = acc * unary();
      } else if (eat("/")) {
        const PadicScalar d = unary();
        if (d.is_zero() || d.is_imprecise()) bad("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  PadicScalar unary() {
    if (eat("-")) return -unary();
    PadicScalar base = primary();
    if (!eat("^")) return base;
    const bool neg = eat("-");
    const long long k = integer();
    if (k > 4 * tower_->precision() + 64) bad("exponent too large");
    PadicScalar out = PadicScalar::one(tower_);
    for (long long i = 0; i < k; ++i) out = out * base;
    if (neg) {
      if (out.is_zero() || out.is_imprecise()) bad("negative power of zero");
      out = out.inverse();
    }
    return out;
  }

  long long integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) bad("integer expected");
    if (pos_ - start > 9) bad("integer too long");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  PadicScalar primary() {
    if (eat("O(")) {
      const PadicScalar x = expr();
      if (!eat(")")) bad("')' expected");
      if (!x.is_unit_state()) bad("O(...) needs a nonzero size");
      return PadicScalar::imprecise(x.v2(), tower_);
    }
    if (eat("(")) {
      PadicScalar x = expr();
      if (!eat(")")) bad("')' expected");
      return x;
    }
    const bool truncated = eat("...");
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string word = s_.substr(start, pos_ - start);
    if (peek() == '@') return digits(word, truncated);
    if (truncated) bad("'...' must start a digit string");
    if (word.empty()) bad("operand expected");
    if (word == "s") {
      if (tower_->degree() == 1) bad("'s' needs an unramified extension");
      return PadicScalar::generator_pow(1, tower_);
    }
    if (word == "rt") {
      if (!tower_->ramified()) bad("'rt' needs a ramified tower");
      return PadicScalar::root_p(tower_);
    }
    if (word == "p") return PadicScalar::from_int(tower_->p(), tower_);
    for (char c : word)
      if (!std::isdigit(static_cast<unsigned char>(c))) bad("unknown symbol '" + word + "'");
    return PadicScalar::from_mpz(mpz_class(word), tower_);
  }

  PadicScalar digits(const std::string& word, bool truncated) {
    ++pos_;  // '@'
    const long long p = integer();
    if (p != tower_->p()) bad("digit string in base " + std::to_string(p) + " for p = " + std::to_string(tower_->p()));
    if (word.empty()) bad("empty digit string");
    mpz_class v = 0;
    for (char c : word) {
      const int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                    : std::islower(static_cast<unsigned char>(c)) ? c - 'a' + 10
                                                                   : 99;
      if (d >= p)
        fail(Errc::DigitOutOfRange, "digit '" + std::string(1, c) + "' in base " + std::to_string(p));
      v = v * static_cast<unsigned long>(p) + d;
    }
    PadicScalar out = PadicScalar::from_mpz(v, tower_);
    if (truncated) out = out + PadicScalar::imprecise(2 * static_cast<int>(word.size()), tower_);
    return out;
  }

  const TowerRef& tower_;
  std::string s_;
  std::size_t pos_ = 0;
};

std::string size_literal(int v2) {
  if (v2 % 2 != 0) return "O(rt^" + std::to_string(v2) + ")";
  return v2 >= 0 ? "O(p^" + std::to_string(v2 / 2) + ")" : "O(p^-" + std::to_string(-v2 / 2) + ")";
}

// c0 + c1*s + c2*s^2 + ... with zero terms dropped.
std::string poly_literal(const std::vector<mpz_class>& comps, std::size_t off, std::size_t f) {
  std::string out;
  for (std::size_t j = 0; j < f; ++j) {
    const mpz_class& c = comps[off + j];
    if (c == 0) continue;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    const bool bare = j > 0 && abs(c) == 1;
    if (!bare) out += mpz_class(abs(c)).get_str() + (j > 0 ? "*" : "");
    if (j == 1) out += "s";
    else if (j > 1) out += "s^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

PadicScalar parse_scalar_literal(std::string_view text, const TowerRef& tower) {
  if (!tower) fail(Errc::InvalidArgument, "no tower");
  return Parser(text, tower).parse();
}

std::string format_scalar_literal(const PadicScalar& x) {
  const FieldTower& t = *x.tower();
  if (x.is_zero()) return "0";
  if (x.is_imprecise()) return size_literal(x.abs_v2());
  const PadicScalar::Expanded e = x.expand();
  const auto f = static_cast<std::size_t>(t.degree());
  std::string body;
  if (t.degree() == 1 && !t.ramified()) {
    body = e.comps[0].get_str();
  } else {
    body = poly_literal(e.comps, 0, f);
    if (t.ramified()) body = "(" + body + ")+(" + poly_literal(e.comps, f, f) + ")*rt";
  }
  if (e.p_exp != 0) {
    const std::string pw = "p^" + std::string(e.p_exp < 0 ? "-" : "") + std::to_string(std::abs(e.p_exp));
    if (body == "1") body = pw;
    else if (body.find_first_not_of("0123456789", body[0] == '-' ? 1 : 0) == std::string::npos) body += "*" + pw;
    else body = "(" + body + ")*" + pw;
  }
  if (x.rel2() < t.cap_v2()) body += "+" + size_literal(x.abs_v2());
  return body;
}

}  // namespace padspec
