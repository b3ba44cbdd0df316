#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padic/padic_number.hpp"

namespace padic {

/// Parameters of f(x) = ((theta x + q - 1) / (x + theta + q - 2))^k with the
/// derived quantities the dynamics depend on. Immutable after construction.
class MapParams {
 public:
  /// Throws std::invalid_argument unless p is an odd prime, q >= 2 with
  /// p not dividing q, k >= 1 and theta in E_p with theta != 1.
  MapParams(prime_t p, long q, long k, PadicNumber theta);
  static MapParams from_literal(prime_t p, long q, long k, std::string_view theta,
                                int precision = kDefaultPrecision);

  prime_t p() const noexcept { return p_; }
  long q() const noexcept { return q_; }
  long k() const noexcept { return k_; }
  const PadicNumber& theta() const noexcept { return theta_; }
  int precision() const noexcept { return precision_; }
  int s() const noexcept { return s_; }  ///< |q - 1|_p = p^-s
  int t() const noexcept { return t_; }  ///< |theta - 1|_p = p^-t
  int vp_k() const noexcept { return vp_k_; }
  /// |theta - 1|_p < |q - 1|_p; the standing hypothesis of the attractor and
  /// repeller results.
  bool theta_closer_than_q() const noexcept { return t_ > s_; }

  const PadicNumber& pole() const noexcept { return pole_; }
  const PadicNumber& one_minus_q() const noexcept { return one_minus_q_; }
  const PadicNumber& q_minus_one() const noexcept { return q_minus_one_; }
  const PadicNumber& theta_plus_q_minus_two() const noexcept { return theta_plus_q_minus_two_; }
  /// k-th roots of 1 - q in Q_p ordered by leading unit digit.
  const std::vector<PadicNumber>& roots_of_one_minus_q() const noexcept { return roots_; }

  PadicNumber constant(long n) const { return PadicNumber::from_integer(n, p_, precision_); }
  PadicNumber one() const { return constant(1); }

 private:
  prime_t p_;
  long q_;
  long k_;
  PadicNumber theta_;
  int precision_;
  int s_;
  int t_;
  int vp_k_;
  PadicNumber pole_;
  PadicNumber one_minus_q_;
  PadicNumber q_minus_one_;
  PadicNumber theta_plus_q_minus_two_;
  std::vector<PadicNumber> roots_;
};

/// R(x) = theta x + q - 1.
PadicNumber numerator_term(const MapParams& params, const PadicNumber& x);
/// Q(x) = x + theta + q - 2 = x - pole.
PadicNumber denominator_term(const MapParams& params, const PadicNumber& x);

/// f(x). Throws PoleError at the exact pole and PrecisionExhausted when Q(x)
/// vanishes to the carried precision.
PadicNumber eval(const MapParams& params, const PadicNumber& x);

/// f^n(x).
PadicNumber iterate(const MapParams& params, PadicNumber x, int n);

/// f'(x) = k (theta - 1)(theta + q - 1) R(x)^(k-1) / Q(x)^(k+1).
PadicNumber derivative(const MapParams& params, const PadicNumber& x);

/// Right-hand side of the factored difference
/// f(x) - f(y) = (theta-1)(theta+q-1) sum_j [R(x)Q(y)]^(k-1-j) [R(y)Q(x)]^j
///               / [Q(x)Q(y)]^k * (x - y).
PadicNumber factored_difference(const MapParams& params, const PadicNumber& x,
                                const PadicNumber& y);

enum class FixedPointClass { attractive, indifferent, repelling };
std::string_view to_string(FixedPointClass c);

struct FixedPointReport {
  PadicNumber point;
  PadicNumber multiplier;
  int multiplier_valuation = 0;  ///< |lambda|_p = p^-multiplier_valuation
  int residual_exponent = 0;     ///< f(point) - point = O(p^residual_exponent)
  FixedPointClass cls = FixedPointClass::indifferent;
};

/// Requires |f(x) - x|_p <= p^-floor(N/2); otherwise std::invalid_argument.
FixedPointReport classify_fixed_point(const MapParams& params, const PadicNumber& x);

enum class Region { B1, B2, B3 };
std::string_view to_string(Region r);

/// Compares |x + q - 1|_p with |theta - 1|_p.
Region region(const MapParams& params, const PadicNumber& x);

struct ContractionReport {
  int expected_exponent = 0;  ///< |f(x)-f(y)| / |x-y| = p^-expected_exponent
  std::size_t pairs_checked = 0;
  std::size_t ep_images_checked = 0;
  std::size_t b1_images_checked = 0;
  bool ok = true;
  std::string failure;
  std::optional<std::pair<PadicNumber, PadicNumber>> witness;
};

/// Samples pairs in E_p (x != y) and asserts the exact ratio |k(theta-1)|_p,
/// f(E_p) inside E_p, and f(B1) inside E_p.
ContractionReport check_contraction_on_ep(const MapParams& params, std::size_t samples,
                                          std::uint64_t seed);

/// g(x) = ((theta+q-2) w + 1 - q) / (theta - w) with w = root * r, where root
/// is roots_of_one_minus_q()[root_index] and r is the E_p k-th root of
/// x / (1 - q). Throws BranchError when that root does not exist.
PadicNumber inverse_branch(const MapParams& params, std::size_t root_index, const PadicNumber& x);

struct OrbitConvergence {
  bool converged = false;
  int steps = 0;                     ///< iterations performed
  std::optional<int> entered_ep_at;  ///< first n with f^n(x) in E_p
  int final_agreement = 0;           ///< f^steps(x) - 1 = O(p^final_agreement)
};

/// Iterates until |f^n(x) - 1|_p <= p^-target_exponent or max_iterations.
OrbitConvergence converge_to_one(const MapParams& params, const PadicNumber& x,
                                 int target_exponent, int max_iterations);

}  // namespace padic
