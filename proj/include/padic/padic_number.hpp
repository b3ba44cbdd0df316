#pragma once

#include <gmpxx.h>

#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "padic/errors.hpp"

namespace padic {

using prime_t = unsigned long;

inline constexpr int kDefaultPrecision = 64;

/// p^n as a cached big integer. References stay valid for the lifetime of
/// the calling thread.
const mpz_class& prime_power(prime_t p, int n);

/// v_p(n) for nonzero n; strips the p-factors from n in place.
int remove_prime(mpz_class& n, prime_t p);
int valuation_of_integer(const mpz_class& n, prime_t p);

/// Throws std::invalid_argument unless p is an odd prime.
void require_odd_prime(prime_t p);

/// Element of Q_p carried as p^valuation * unit with the unit known modulo
/// p^precision (relative precision).
///
/// A value whose known digits are all zero is "zero at precision": it is only
/// known that x = O(p^valuation). The exact zero carries an unbounded
/// absolute precision. Values are immutable.
class PadicNumber {
 public:
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  PadicNumber() = default;

  static PadicNumber from_rational(const mpz_class& numerator, const mpz_class& denominator,
                                   prime_t p, int precision);
  static PadicNumber from_integer(const mpz_class& n, prime_t p, int precision);
  static PadicNumber from_integer(long n, prime_t p, int precision) {
    return from_integer(mpz_class(n), p, precision);
  }
  /// p^valuation * (d0 + d1 p + ...), precision = digits.size(); d0 != 0.
  static PadicNumber from_digits(prime_t p, int valuation, std::span<const unsigned long> digits);
  /// p^valuation * unit with unit taken modulo p^precision.
  static PadicNumber from_unit(prime_t p, int valuation, const mpz_class& unit, int precision);
  static PadicNumber zero(prime_t p, int absolute_precision = kUnbounded);
  static PadicNumber one(prime_t p, int precision) { return from_integer(1L, p, precision); }

  prime_t prime() const noexcept { return prime_; }
  bool is_zero() const noexcept { return zero_; }
  bool is_exact_zero() const noexcept { return zero_ && valuation_ == kUnbounded; }
  /// For zero at precision: the exponent A with x = O(p^A).
  int valuation() const noexcept { return valuation_; }
  int precision() const noexcept { return precision_; }
  int absolute_precision() const noexcept;
  const mpz_class& unit() const noexcept { return unit_; }

  /// The known unit digits x_0, x_1, ... (x_0 in 1..p-1).
  std::vector<unsigned long> digits() const;
  /// Truncates the relative precision to at most n digits.
  PadicNumber with_precision(int n) const;
  PadicNumber pow(long e) const;
  PadicNumber inverse() const;
  PadicNumber operator-() const;

  /// Rational representative p^v * u (u the least nonnegative residue).
  mpq_class representative() const;
  std::string to_string() const;

 private:
  PadicNumber(prime_t p, int valuation, mpz_class unit, int precision);

  prime_t prime_ = 0;
  bool zero_ = true;
  int valuation_ = kUnbounded;
  int precision_ = 0;
  mpz_class unit_ = 0;

  friend PadicNumber operator+(const PadicNumber&, const PadicNumber&);
  friend PadicNumber operator*(const PadicNumber&, const PadicNumber&);
  friend PadicNumber operator/(const PadicNumber&, const PadicNumber&);
};

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
PadicNumber operator-(const PadicNumber& x, const PadicNumber& y);
PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);

enum class ArithOp { add, sub, mul, div };
PadicNumber arith(ArithOp op, const PadicNumber& x, const PadicNumber& y);

/// Valuation of x, or PrecisionExhausted naming `what` when x is zero at
/// precision. The exact zero yields PadicNumber::kUnbounded.
int ord(const PadicNumber& x, const std::string& what = "a p-adic norm");

/// Exponent A with x - y = O(p^A) known: the valuation of the difference when
/// it is nonzero, else its absolute precision.
int agreement(const PadicNumber& x, const PadicNumber& y);

/// All carried digits of x - y vanish.
bool agrees(const PadicNumber& x, const PadicNumber& y);

struct NormAndValuation {
  mpq_class norm;  ///< exactly p^-valuation, or 0 for the exact zero
  int valuation;
};
NormAndValuation norm_and_valuation(const PadicNumber& x);

/// Closed ball {x : |x - center|_p <= p^-radius_exponent}.
struct Ball {
  PadicNumber center;
  int radius_exponent = 0;

  /// Throws PrecisionExhausted when the membership cannot be decided.
  bool contains(const PadicNumber& x) const;
  bool disjoint_from(const Ball& other) const;
};

/// |x - 1|_p <= p^-1.
bool in_ep(const PadicNumber& x);

/// Exponential series; requires |h|_p <= p^-1. The result carries
/// min(precision, absolute precision of h) digits.
PadicNumber exp_p(const PadicNumber& h, int precision);
PadicNumber exp_p(const PadicNumber& h);

/// Logarithm series log(1 + u) for x = 1 + u in E_p.
PadicNumber log_p(const PadicNumber& x);

/// Sampling helpers for property checks; deterministic given the engine.
mpz_class random_residue(const mpz_class& modulus, std::mt19937_64& rng);
PadicNumber random_integer(prime_t p, int precision, std::mt19937_64& rng);
PadicNumber random_unit(prime_t p, int precision, std::mt19937_64& rng);
/// Uniform-digit element of 1 + p^depth Z_p (depth >= 1).
PadicNumber random_in_ep(prime_t p, int precision, std::mt19937_64& rng, int depth = 1);
/// center + p^radius_exponent * (random p-adic integer).
PadicNumber random_in_ball(const Ball& ball, int precision, std::mt19937_64& rng);

}  // namespace padic
