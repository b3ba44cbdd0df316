#include "padic/padic_number.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace padic {

const mpz_class& prime_power(prime_t p, int n) {
  if (n < 0) throw std::invalid_argument("negative exponent for prime power");
  thread_local std::unordered_map<prime_t, std::deque<mpz_class>> cache;
  auto& powers = cache[p];
  if (powers.empty()) powers.emplace_back(1);
  while (static_cast<int>(powers.size()) <= n) powers.push_back(powers.back() * p);
  return powers[static_cast<std::size_t>(n)];
}

int remove_prime(mpz_class& n, prime_t p) {
  if (n == 0) throw std::invalid_argument("valuation of zero integer");
  mpz_class base(p);
  return static_cast<int>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), base.get_mpz_t()));
}

int valuation_of_integer(const mpz_class& n, prime_t p) {
  mpz_class copy = n;
  return remove_prime(copy, p);
}

void require_odd_prime(prime_t p) {
  thread_local prime_t last_checked = 0;
  if (p == last_checked) return;
  mpz_class z(p);
  if (p < 3 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
    throw std::invalid_argument("p must be an odd prime (got " + std::to_string(p) + ")");
  }
  last_checked = p;
}

namespace {

void require_same_prime(const PadicNumber& x, const PadicNumber& y) {
  if (x.prime() != y.prime() || x.prime() == 0) {
    throw std::invalid_argument("p-adic operands over different primes (" +
                                std::to_string(x.prime()) + " vs " + std::to_string(y.prime()) +
                                ")");
  }
}

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

int saturating_add(int a, int b) {
  if (a == PadicNumber::kUnbounded || b == PadicNumber::kUnbounded) return PadicNumber::kUnbounded;
  long long s = static_cast<long long>(a) + b;
  if (s >= PadicNumber::kUnbounded) return PadicNumber::kUnbounded - 1;
  return static_cast<int>(s);
}

}  // namespace

PadicNumber::PadicNumber(prime_t p, int valuation, mpz_class unit, int precision)
    : prime_(p), zero_(false), valuation_(valuation), precision_(precision), unit_(std::move(unit)) {}

PadicNumber PadicNumber::zero(prime_t p, int absolute_precision) {
  PadicNumber z;
  z.prime_ = p;
  z.zero_ = true;
  z.valuation_ = absolute_precision;
  z.precision_ = 0;
  return z;
}

PadicNumber PadicNumber::from_unit(prime_t p, int valuation, const mpz_class& unit, int precision) {
  if (precision <= 0) return zero(p, valuation);
  mpz_class u = mod_positive(unit, prime_power(p, precision));
  if (u == 0) return zero(p, saturating_add(valuation, precision));
  int c = remove_prime(u, p);
  return PadicNumber(p, valuation + c, std::move(u), precision - c);
}

PadicNumber PadicNumber::from_rational(const mpz_class& numerator, const mpz_class& denominator,
                                       prime_t p, int precision) {
  require_odd_prime(p);
  if (denominator == 0) throw std::invalid_argument("zero denominator in rational literal");
  if (precision < 1) throw std::invalid_argument("precision must be at least 1");
  if (numerator == 0) return zero(p);
  mpz_class num = numerator;
  mpz_class den = denominator;
  int v = remove_prime(num, p) - remove_prime(den, p);
  const mpz_class& modulus = prime_power(p, precision);
  mpz_class inv;
  mpz_class den_mod = mod_positive(den, modulus);
  mpz_invert(inv.get_mpz_t(), den_mod.get_mpz_t(), modulus.get_mpz_t());
  return PadicNumber(p, v, mod_positive(num * inv, modulus), precision);
}

PadicNumber PadicNumber::from_integer(const mpz_class& n, prime_t p, int precision) {
  return from_rational(n, mpz_class(1), p, precision);
}

PadicNumber PadicNumber::from_digits(prime_t p, int valuation,
                                     std::span<const unsigned long> digits) {
  require_odd_prime(p);
  if (digits.empty()) throw std::invalid_argument("digit literal needs at least one digit");
  if (digits.front() == 0) throw std::invalid_argument("leading digit must be nonzero");
  mpz_class u = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p) throw std::invalid_argument("digit out of range 0..p-1");
    u = u * p + digits[i];
  }
  return PadicNumber(p, valuation, std::move(u), static_cast<int>(digits.size()));
}

int PadicNumber::absolute_precision() const noexcept {
  if (zero_) return valuation_;
  return saturating_add(valuation_, precision_);
}

std::vector<unsigned long> PadicNumber::digits() const {
  std::vector<unsigned long> out;
  out.reserve(static_cast<std::size_t>(precision_));
  mpz_class u = unit_;
  for (int i = 0; i < precision_; ++i) {
    out.push_back(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), prime_));
  }
  return out;
}

PadicNumber PadicNumber::with_precision(int n) const {
  if (zero_ || n >= precision_) return *this;
  if (n <= 0) return zero(prime_, valuation_);
  return PadicNumber(prime_, valuation_, mod_positive(unit_, prime_power(prime_, n)), n);
}

PadicNumber PadicNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) {
    if (zero_) {
      if (is_exact_zero()) return one(prime_, kDefaultPrecision);
      throw PrecisionExhausted("0^0 at finite precision", valuation_);
    }
    return one(prime_, precision_);
  }
  if (zero_) {
    if (is_exact_zero()) return *this;
    long long bound = static_cast<long long>(valuation_) * e;
    return zero(prime_, bound >= kUnbounded ? kUnbounded - 1 : static_cast<int>(bound));
  }
  const mpz_class& modulus = prime_power(prime_, precision_);
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), unit_.get_mpz_t(), static_cast<unsigned long>(e),
              modulus.get_mpz_t());
  return PadicNumber(prime_, static_cast<int>(valuation_ * e), std::move(r), precision_);
}

PadicNumber PadicNumber::inverse() const {
  if (is_exact_zero()) throw DomainError("inverse of exact zero");
  if (zero_) throw PrecisionExhausted("inverse of a value zero at precision", valuation_);
  const mpz_class& modulus = prime_power(prime_, precision_);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), modulus.get_mpz_t());
  return PadicNumber(prime_, -valuation_, std::move(inv), precision_);
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  const mpz_class& modulus = prime_power(prime_, precision_);
  return PadicNumber(prime_, valuation_, modulus - unit_, precision_);
}

mpq_class PadicNumber::representative() const {
  if (zero_) return mpq_class(0);
  mpq_class r(unit_);
  if (valuation_ >= 0) {
    r *= prime_power(prime_, valuation_);
  } else {
    r /= prime_power(prime_, -valuation_);
  }
  r.canonicalize();
  return r;
}

std::string PadicNumber::to_string() const {
  std::ostringstream os;
  if (is_exact_zero()) return "0";
  if (zero_) {
    os << "O(" << prime_ << "^" << valuation_ << ")";
    return os.str();
  }
  os << prime_ << "^" << valuation_ << " * (";
  auto d = digits();
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ")";
  return os.str();
}

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
  require_same_prime(x, y);
  const prime_t p = x.prime();
  if (x.zero_ && y.zero_) return PadicNumber::zero(p, std::min(x.valuation_, y.valuation_));
  if (x.zero_ || y.zero_) {
    const PadicNumber& z = x.zero_ ? x : y;
    const PadicNumber& w = x.zero_ ? y : x;
    const int bound = std::min(z.valuation_, w.absolute_precision());
    if (w.valuation_ >= bound) return PadicNumber::zero(p, bound);
    return w.with_precision(bound - w.valuation_);
  }
  const int vm = std::min(x.valuation_, y.valuation_);
  const int abs_prec = std::min(x.absolute_precision(), y.absolute_precision());
  const int width = abs_prec - vm;
  mpz_class s = x.unit_ * prime_power(p, x.valuation_ - vm) + y.unit_ * prime_power(p, y.valuation_ - vm);
  return PadicNumber::from_unit(p, vm, s, width);
}

PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
  require_same_prime(x, y);
  const prime_t p = x.prime();
  if (x.is_exact_zero() || y.is_exact_zero()) return PadicNumber::zero(p);
  if (x.zero_ && y.zero_) return PadicNumber::zero(p, saturating_add(x.valuation_, y.valuation_));
  if (x.zero_ || y.zero_) {
    const PadicNumber& z = x.zero_ ? x : y;
    const PadicNumber& w = x.zero_ ? y : x;
    return PadicNumber::zero(p, saturating_add(z.valuation_, w.valuation_));
  }
  const int n = std::min(x.precision_, y.precision_);
  mpz_class u = x.unit_ * y.unit_;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), prime_power(p, n).get_mpz_t());
  return PadicNumber(p, x.valuation_ + y.valuation_, std::move(u), n);
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
  require_same_prime(x, y);
  if (y.is_exact_zero()) throw DomainError("division by exact zero");
  if (y.zero_) throw PrecisionExhausted("a divisor that is zero at precision", y.valuation_);
  if (x.zero_) {
    if (x.is_exact_zero()) return x;
    return PadicNumber::zero(x.prime(), x.valuation_ - y.valuation_);
  }
  return x * y.inverse();
}

PadicNumber arith(ArithOp op, const PadicNumber& x, const PadicNumber& y) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::div: return x / y;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

int ord(const PadicNumber& x, const std::string& what) {
  if (x.is_exact_zero()) return PadicNumber::kUnbounded;
  if (x.is_zero()) throw PrecisionExhausted(what, x.valuation());
  return x.valuation();
}

int agreement(const PadicNumber& x, const PadicNumber& y) {
  PadicNumber d = x - y;
  return d.valuation();
}

bool agrees(const PadicNumber& x, const PadicNumber& y) { return (x - y).is_zero(); }

NormAndValuation norm_and_valuation(const PadicNumber& x) {
  if (x.is_exact_zero()) return {mpq_class(0), PadicNumber::kUnbounded};
  const int v = ord(x, "the norm of a value zero at precision");
  mpq_class n(1);
  if (v >= 0) {
    n /= prime_power(x.prime(), v);
  } else {
    n *= prime_power(x.prime(), -v);
  }
  n.canonicalize();
  return {n, v};
}

bool Ball::contains(const PadicNumber& x) const {
  PadicNumber d = x - center;
  if (d.is_zero()) {
    if (d.valuation() >= radius_exponent) return true;
    throw PrecisionExhausted("ball membership", d.valuation());
  }
  return d.valuation() >= radius_exponent;
}

bool Ball::disjoint_from(const Ball& other) const {
  const int m = std::min(radius_exponent, other.radius_exponent);
  PadicNumber d = center - other.center;
  if (d.is_zero()) {
    if (d.valuation() >= m) return false;
    throw PrecisionExhausted("ball disjointness", d.valuation());
  }
  return d.valuation() < m;
}

bool in_ep(const PadicNumber& x) {
  PadicNumber d = x - PadicNumber::one(x.prime(), std::max(1, x.precision()));
  if (d.is_zero()) {
    if (d.valuation() >= 1) return true;
    throw PrecisionExhausted("membership in E_p", d.valuation());
  }
  return d.valuation() >= 1;
}

PadicNumber exp_p(const PadicNumber& h, int precision) {
  const prime_t p = h.prime();
  if (h.is_zero()) {
    if (h.valuation() < 1) throw PrecisionExhausted("the exponential argument", h.valuation());
    return PadicNumber::one(p, std::min(precision, h.valuation()));
  }
  const int v = h.valuation();
  if (v < 1) throw DomainError("exp_p diverges: |h|_p must be at most 1/p");
  const int target = std::min(precision, h.absolute_precision());
  PadicNumber sum = PadicNumber::one(p, target);
  PadicNumber term = sum;
  // v_p(h^n / n!) >= n v - (n - 1)/(p - 1), nondecreasing in n once v >= 1.
  const long long pm1 = static_cast<long long>(p) - 1;
  for (long n = 1;; ++n) {
    term = term * h / PadicNumber::from_integer(n, p, target);
    sum = sum + term;
    const long long next = n + 1;
    if ((next * v) * pm1 - n >= static_cast<long long>(target) * pm1) break;
  }
  return sum.with_precision(target);
}

PadicNumber exp_p(const PadicNumber& h) {
  if (h.is_exact_zero()) return PadicNumber::one(h.prime(), kDefaultPrecision);
  return exp_p(h, h.is_zero() ? h.valuation() : h.precision());
}

PadicNumber log_p(const PadicNumber& x) {
  if (x.is_zero() || !in_ep(x)) throw DomainError("log_p is defined here only on E_p = 1 + pZ_p");
  const prime_t p = x.prime();
  PadicNumber u = x - PadicNumber::one(p, x.precision());
  if (u.is_zero()) return u;
  const int v = u.valuation();
  const int target = u.absolute_precision();
  PadicNumber sum = u;
  PadicNumber power = u;
  auto floor_log = [p](long n) {
    int l = 0;
    for (long m = n; m >= static_cast<long>(p); m /= static_cast<long>(p)) ++l;
    return l;
  };
  for (long n = 2;; ++n) {
    if (static_cast<long long>(n) * v - floor_log(n) >= target) break;
    power = power * u;
    PadicNumber term = power / PadicNumber::from_integer(n, p, x.precision());
    sum = (n % 2 == 0) ? sum - term : sum + term;
  }
  return sum;
}

mpz_class random_residue(const mpz_class& modulus, std::mt19937_64& rng) {
  mpz_class acc = 0;
  const std::size_t bits = mpz_sizeinbase(modulus.get_mpz_t(), 2) + 64;
  for (std::size_t b = 0; b < bits; b += 64) {
    acc <<= 64;
    const std::uint64_t w = rng();
    mpz_class word;
    mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
    acc += word;
  }
  return mod_positive(acc, modulus);
}

PadicNumber random_integer(prime_t p, int precision, std::mt19937_64& rng) {
  return PadicNumber::from_unit(p, 0, random_residue(prime_power(p, precision), rng), precision);
}

PadicNumber random_unit(prime_t p, int precision, std::mt19937_64& rng) {
  mpz_class u = random_residue(prime_power(p, precision), rng);
  if (mpz_divisible_ui_p(u.get_mpz_t(), p)) u += 1 + (rng() % (p - 1));
  return PadicNumber::from_unit(p, 0, u, precision);
}

PadicNumber random_in_ep(prime_t p, int precision, std::mt19937_64& rng, int depth) {
  mpz_class u = random_residue(prime_power(p, precision - depth), rng);
  return PadicNumber::from_unit(p, 0, 1 + u * prime_power(p, depth), precision);
}

PadicNumber random_in_ball(const Ball& ball, int precision, std::mt19937_64& rng) {
  const prime_t p = ball.center.prime();
  PadicNumber offset = random_integer(p, precision, rng);
  PadicNumber scale = PadicNumber::from_unit(p, ball.radius_exponent, mpz_class(1), precision);
  return ball.center + offset * scale;
}

}  // namespace padic
