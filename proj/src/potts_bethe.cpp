#include "padic/potts_bethe.hpp"

#include <random>

#include "padic/literal.hpp"
#include "padic/roots.hpp"

namespace padic {

MapParams::MapParams(prime_t p, long q, long k, PadicNumber theta)
    : p_(p), q_(q), k_(k), theta_(std::move(theta)) {
  require_odd_prime(p);
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (q % static_cast<long>(p) == 0) throw std::invalid_argument("|q|_p must be 1 (p divides q)");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (theta_.prime() != p) throw std::invalid_argument("theta is over a different prime");
  if (theta_.is_zero() || !in_ep(theta_)) throw std::invalid_argument("theta must lie in E_p");
  precision_ = theta_.precision();
  PadicNumber theta_minus_one = theta_ - one();
  if (theta_minus_one.is_zero()) {
    throw std::invalid_argument("theta = 1 at working precision (the map is constant)");
  }
  t_ = theta_minus_one.valuation();
  s_ = valuation_of_integer(mpz_class(q - 1), p);
  vp_k_ = valuation_of_integer(mpz_class(k), p);
  one_minus_q_ = constant(1 - q);
  q_minus_one_ = constant(q - 1);
  theta_plus_q_minus_two_ = theta_ + constant(q - 2);
  pole_ = -theta_plus_q_minus_two_;
  roots_ = kth_roots(one_minus_q_, k);
}

MapParams MapParams::from_literal(prime_t p, long q, long k, std::string_view theta,
                                  int precision) {
  return MapParams(p, q, k, parse_literal(theta, p, precision));
}

PadicNumber numerator_term(const MapParams& params, const PadicNumber& x) {
  return params.theta() * x + params.q_minus_one();
}

PadicNumber denominator_term(const MapParams& params, const PadicNumber& x) {
  return x + params.theta_plus_q_minus_two();
}

namespace {

PadicNumber checked_denominator(const MapParams& params, const PadicNumber& x) {
  PadicNumber d = denominator_term(params, x);
  if (d.is_exact_zero()) throw PoleError("evaluation at the pole 2 - q - theta");
  if (d.is_zero()) throw PrecisionExhausted("the distance to the pole", d.valuation());
  return d;
}

}  // namespace

PadicNumber eval(const MapParams& params, const PadicNumber& x) {
  PadicNumber d = checked_denominator(params, x);
  return (numerator_term(params, x) / d).pow(params.k());
}

PadicNumber iterate(const MapParams& params, PadicNumber x, int n) {
  for (int i = 0; i < n; ++i) x = eval(params, x);
  return x;
}

PadicNumber derivative(const MapParams& params, const PadicNumber& x) {
  PadicNumber d = checked_denominator(params, x);
  const long k = params.k();
  PadicNumber factor = params.constant(k) * (params.theta() - params.one()) *
                       (params.theta() + params.q_minus_one());
  return factor * numerator_term(params, x).pow(k - 1) / d.pow(k + 1);
}

PadicNumber factored_difference(const MapParams& params, const PadicNumber& x,
                                const PadicNumber& y) {
  const long k = params.k();
  PadicNumber qx = checked_denominator(params, x);
  PadicNumber qy = checked_denominator(params, y);
  PadicNumber a = numerator_term(params, x) * qy;
  PadicNumber b = numerator_term(params, y) * qx;
  PadicNumber sum = PadicNumber::zero(params.p());
  for (long j = 0; j < k; ++j) sum = sum + a.pow(k - 1 - j) * b.pow(j);
  PadicNumber lead = (params.theta() - params.one()) * (params.theta() + params.q_minus_one());
  return lead * sum / (qx * qy).pow(k) * (x - y);
}

std::string_view to_string(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::attractive: return "attractive";
    case FixedPointClass::indifferent: return "indifferent";
    case FixedPointClass::repelling: return "repelling";
  }
  return "?";
}

FixedPointReport classify_fixed_point(const MapParams& params, const PadicNumber& x) {
  const int threshold = params.precision() / 2;
  PadicNumber fx = eval(params, x);
  const int residual = agreement(fx, x);
  if (residual < threshold) {
    throw std::invalid_argument("point is not fixed to p^-" + std::to_string(threshold) +
                                " (residual O(p^" + std::to_string(residual) + "))");
  }
  FixedPointReport report;
  report.point = x;
  report.multiplier = derivative(params, x);
  report.multiplier_valuation = ord(report.multiplier, "the multiplier of a fixed point");
  report.residual_exponent = residual;
  if (report.multiplier_valuation > 0) {
    report.cls = FixedPointClass::attractive;
  } else if (report.multiplier_valuation == 0) {
    report.cls = FixedPointClass::indifferent;
  } else {
    report.cls = FixedPointClass::repelling;
  }
  return report;
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::B1: return "B1";
    case Region::B2: return "B2";
    case Region::B3: return "B3";
  }
  return "?";
}

Region region(const MapParams& params, const PadicNumber& x) {
  PadicNumber shifted = x + params.q_minus_one();
  const int t = params.t();
  if (shifted.is_zero()) {
    if (shifted.valuation() > t) return Region::B3;
    throw PrecisionExhausted("|x + q - 1|_p against |theta - 1|_p", shifted.valuation());
  }
  const int v = shifted.valuation();
  if (v < t) return Region::B1;
  if (v == t) return Region::B2;
  return Region::B3;
}

ContractionReport check_contraction_on_ep(const MapParams& params, std::size_t samples,
                                          std::uint64_t seed) {
  ContractionReport report;
  report.expected_exponent = params.vp_k() + params.t();
  std::mt19937_64 rng(seed);
  const prime_t p = params.p();
  const int n = params.precision();
  auto fail = [&](std::string why, const PadicNumber& x, const PadicNumber& y) {
    if (report.ok) {
      report.ok = false;
      report.failure = std::move(why);
      report.witness = std::make_pair(x, y);
    }
  };
  for (std::size_t i = 0; i < samples; ++i) {
    PadicNumber x = random_in_ep(p, n, rng);
    const int gap = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, n / 2)));
    PadicNumber y = x + random_unit(p, n, rng) * PadicNumber::from_unit(p, gap, mpz_class(1), n);
    PadicNumber fx = eval(params, x);
    PadicNumber fy = eval(params, y);
    const int ratio = ord(fx - fy, "f(x) - f(y) on E_p") - ord(x - y, "x - y on E_p");
    ++report.pairs_checked;
    if (ratio != report.expected_exponent) fail("contraction ratio mismatch", x, y);
    report.ep_images_checked += 2;
    if (!in_ep(fx) || !in_ep(fy)) fail("f(E_p) left E_p", x, y);

    const int lo = -3;
    const int j = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(params.t() - lo));
    PadicNumber b1 = params.one_minus_q() +
                     random_unit(p, n, rng) * PadicNumber::from_unit(p, j, mpz_class(1), n);
    ++report.b1_images_checked;
    if (region(params, b1) != Region::B1 || !in_ep(eval(params, b1))) {
      fail("f(B1) left E_p", b1, b1);
    }
  }
  return report;
}

PadicNumber inverse_branch(const MapParams& params, std::size_t root_index, const PadicNumber& x) {
  const auto& roots = params.roots_of_one_minus_q();
  if (root_index >= roots.size()) {
    throw BranchError("no k-th root of 1 - q with index " + std::to_string(root_index));
  }
  PadicNumber scaled = x / params.one_minus_q();
  bool scaled_in_ep = false;
  try {
    scaled_in_ep = !scaled.is_zero() && in_ep(scaled);
  } catch (const PrecisionExhausted&) {
    scaled_in_ep = false;
  }
  if (!scaled_in_ep) throw BranchError("x / (1 - q) is not in E_p");
  auto r = kth_root_in_ep(scaled, params.k());
  if (!r) throw BranchError("x / (1 - q) has no k-th root in E_p");
  PadicNumber w = roots[root_index] * *r;
  return (params.theta_plus_q_minus_two() * w + params.one_minus_q()) / (params.theta() - w);
}

OrbitConvergence converge_to_one(const MapParams& params, const PadicNumber& x,
                                 int target_exponent, int max_iterations) {
  OrbitConvergence out;
  PadicNumber z = x;
  const PadicNumber one = params.one();
  for (int n = 0;; ++n) {
    if (!out.entered_ep_at) {
      bool inside = false;
      try {
        inside = !z.is_zero() && in_ep(z);
      } catch (const PrecisionExhausted&) {
      }
      if (inside) out.entered_ep_at = n;
    }
    out.final_agreement = agreement(z, one);
    out.steps = n;
    if (out.final_agreement >= target_exponent) {
      out.converged = true;
      return out;
    }
    if (n == max_iterations) return out;
    z = eval(params, z);
  }
}

}  // namespace padic
