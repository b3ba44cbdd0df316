#include "padic/roots.hpp"

namespace padic {

namespace {

mpz_class powm(const mpz_class& base, long e, const mpz_class& modulus) {
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e), modulus.get_mpz_t());
  return r;
}

int vp_long(long n, prime_t p) {
  int e = 0;
  while (n % static_cast<long>(p) == 0) {
    n /= static_cast<long>(p);
    ++e;
  }
  return e;
}

// Search a = residue (mod p) with a^k = u (mod p^(2e+1)); the strong Hensel
// criterion |f(a)| < |f'(a)|^2 then holds for f = x^k - u.
std::optional<mpz_class> hensel_start(const mpz_class& u, long k, unsigned long residue, prime_t p,
                                      int e) {
  const mpz_class& modulus = prime_power(p, 2 * e + 1);
  const mpz_class& steps = prime_power(p, 2 * e);
  const mpz_class target = u % modulus;
  for (mpz_class j = 0; j < steps; ++j) {
    mpz_class a = residue + j * p;
    if (powm(a, k, modulus) == target) return a;
  }
  return std::nullopt;
}

// Newton iteration for x^k = u with u a unit known modulo p^n; returns x
// modulo p^(n - e) where e = v_p(k).
mpz_class newton_lift(const mpz_class& u, long k, mpz_class x, prime_t p, int n, int e) {
  const mpz_class& full = prime_power(p, n);
  const mpz_class& reduced = prime_power(p, n - e);
  const mpz_class& pe = prime_power(p, e);
  const mpz_class cofactor = mpz_class(k) / pe;
  for (int iter = 0; iter < 4 * n + 16; ++iter) {
    mpz_class fx = powm(x, k, full) - u;
    mpz_mod(fx.get_mpz_t(), fx.get_mpz_t(), full.get_mpz_t());
    if (fx == 0) return x % reduced;
    if (!mpz_divisible_p(fx.get_mpz_t(), pe.get_mpz_t())) break;
    mpz_class step = fx / pe;
    mpz_class slope = cofactor * powm(x, k - 1, reduced);
    mpz_class inv;
    mpz_mod(slope.get_mpz_t(), slope.get_mpz_t(), reduced.get_mpz_t());
    if (mpz_invert(inv.get_mpz_t(), slope.get_mpz_t(), reduced.get_mpz_t()) == 0) break;
    x = x - step * inv;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), reduced.get_mpz_t());
  }
  throw PrecisionExhausted("Hensel lifting of a k-th root", n - e);
}

}  // namespace

SolSet solp(prime_t p, long q, long k) {
  require_odd_prime(p);
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (q % static_cast<long>(p) == 0) throw std::invalid_argument("p must not divide q");
  SolSet out;
  out.p = p;
  out.q = q;
  out.k = k;
  mpz_class one_minus_q(1 - q);
  mpz_class stripped = one_minus_q;
  out.s = remove_prime(stripped, p);
  out.scale_ok = out.s % k == 0;
  if (!out.scale_ok) return out;
  // xi^k = (1 - q) / p^s (mod p)
  mpz_class target = stripped % static_cast<long>(p);
  if (target < 0) target += p;
  const mpz_class modulus(p);
  for (unsigned long xi = 1; xi < p; ++xi) {
    if (powm(mpz_class(xi), k, modulus) == target) out.residues.push_back(xi);
  }
  return out;
}

std::vector<PadicNumber> kth_roots(const PadicNumber& a, long k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (a.is_exact_zero()) return {a};
  if (a.is_zero()) throw PrecisionExhausted("k-th root of a value zero at precision", a.valuation());
  const prime_t p = a.prime();
  if (a.valuation() % k != 0) return {};
  const int e = vp_long(k, p);
  const int n = a.precision();
  if (n < 2 * e + 1) throw PrecisionExhausted("separating k-th root lifts", a.absolute_precision());
  const mpz_class residue_target = a.unit() % p;
  std::vector<PadicNumber> roots;
  const mpz_class modulus(p);
  for (unsigned long xi = 1; xi < p; ++xi) {
    if (powm(mpz_class(xi), k, modulus) != residue_target) continue;
    auto start = hensel_start(a.unit(), k, xi, p, e);
    if (!start) continue;
    mpz_class root = newton_lift(a.unit(), k, *start, p, n, e);
    roots.push_back(PadicNumber::from_unit(p, static_cast<int>(a.valuation() / k), root, n - e));
  }
  return roots;
}

std::optional<PadicNumber> kth_root_in_ep(const PadicNumber& u, long k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (u.is_zero() || !in_ep(u)) return std::nullopt;
  const prime_t p = u.prime();
  const int e = vp_long(k, p);
  const int n = u.precision();
  if (n < 2 * e + 1) throw PrecisionExhausted("separating k-th root lifts", u.absolute_precision());
  auto start = hensel_start(u.unit(), k, 1, p, e);
  if (!start) return std::nullopt;
  PadicNumber root = PadicNumber::from_unit(p, 0, newton_lift(u.unit(), k, *start, p, n, e), n - e);
  if (!in_ep(root)) return std::nullopt;
  return root;
}

}  // namespace padic
