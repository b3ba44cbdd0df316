#include "padic/literal.hpp"

#include <cctype>
#include <string>

namespace padic {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string text, prime_t p) : text_(std::move(text)), p_(p) {}

  mpq_class parse() {
    mpq_class value = sum();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad p-adic literal \"" + text_ + "\": " + why);
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpq_class sum() {
    mpq_class acc = 0;
    bool negate = eat('-');
    if (!negate) eat('+');
    acc = negate ? mpq_class(-product()) : product();
    while (pos_ < text_.size()) {
      if (eat('+')) {
        acc += product();
      } else if (eat('-')) {
        acc -= product();
      } else {
        break;
      }
    }
    return acc;
  }

  mpq_class product() {
    mpq_class acc = factor();
    while (true) {
      if (eat('*')) {
        acc *= factor();
      } else if (eat('/')) {
        mpq_class d = factor();
        if (d == 0) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  mpq_class factor() {
    mpz_class base;
    if (eat('p')) {
      base = p_;
    } else {
      base = integer();
    }
    if (!eat('^')) return mpq_class(base);
    bool negative = eat('-');
    mpz_class e = integer();
    if (!e.fits_sint_p()) fail("exponent too large");
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), e.get_ui());
    mpq_class r = negative ? mpq_class(mpz_class(1), power) : mpq_class(power);
    r.canonicalize();
    return r;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  std::string text_;
  prime_t p_;
  std::size_t pos_ = 0;
};

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

PadicNumber parse_digit_form(const std::string& s, prime_t p, int precision) {
  // <base>^<v>*(d0,d1,...)  or  (d0,d1,...)
  const std::size_t open = s.find('(');
  const std::size_t close = s.rfind(')');
  if (close != s.size() - 1 || close < open) {
    throw std::invalid_argument("bad digit literal \"" + s + "\"");
  }
  int valuation = 0;
  if (open > 0) {
    std::string head = s.substr(0, open);
    if (head.back() != '*') throw std::invalid_argument("digit literal needs '*' before '('");
    head.pop_back();
    const std::size_t caret = head.find('^');
    if (caret == std::string::npos) throw std::invalid_argument("digit literal needs p^v");
    const std::string base = head.substr(0, caret);
    if (base != "p" && base != std::to_string(p)) {
      throw std::invalid_argument("digit literal base " + base + " does not match p = " +
                                  std::to_string(p));
    }
    try {
      valuation = std::stoi(head.substr(caret + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad valuation in \"" + s + "\"");
    }
  }
  std::vector<unsigned long> digits;
  std::string body = s.substr(open + 1, close - open - 1);
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string d = body.substr(start, comma - start);
    if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad digit \"" + d + "\" in \"" + s + "\"");
    }
    digits.push_back(std::stoul(d));
    start = comma + 1;
  }
  if (static_cast<int>(digits.size()) > precision) digits.resize(static_cast<std::size_t>(precision));
  return PadicNumber::from_digits(p, valuation, digits);
}

}  // namespace

mpq_class parse_rational_expression(std::string_view text, prime_t p) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw std::invalid_argument("empty p-adic literal");
  return ExpressionParser(s, p).parse();
}

PadicNumber parse_literal(std::string_view text, prime_t p, int precision) {
  require_odd_prime(p);
  std::string s = strip_spaces(text);
  if (s.empty()) throw std::invalid_argument("empty p-adic literal");
  if (s.find('(') != std::string::npos) return parse_digit_form(s, p, precision);
  mpq_class value = ExpressionParser(s, p).parse();
  return PadicNumber::from_rational(value.get_num(), value.get_den(), p, precision);
}

}  // namespace padic
