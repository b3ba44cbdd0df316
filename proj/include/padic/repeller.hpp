#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padic/potts_bethe.hpp"
#include "padic/roots.hpp"
#include "padic/subshift.hpp"

namespace padic {

/// The union of kappa_p disjoint closed balls around 1 - q that carries the
/// repeller. Ball i (symbol i + 1) belongs to the residue sol.residues[i].
struct CoveringX {
  std::vector<Ball> balls;
  int radius_exponent = 0;  ///< m = s/k + 1 + t
  SolSet sol;
  std::vector<long> eta;  ///< s = 0 only; eta_i as the least nonnegative residue
  /// Index into MapParams::roots_of_one_minus_q() of the root whose leading
  /// digit is xi_i; empty when Q_p has no such root (possible only if p | k).
  std::vector<std::optional<std::size_t>> root_index;

  int size() const noexcept { return static_cast<int>(balls.size()); }
  /// 1-based symbol of the ball holding x, or nullopt when x is outside X.
  std::optional<int> locate(const PadicNumber& x) const;
  const Ball& ball(int symbol) const { return balls.at(static_cast<std::size_t>(symbol - 1)); }
  bool has_all_branches() const noexcept;
};

/// Throws CoveringUnavailable when Sol_p is empty or |theta - 1|_p >= |q - 1|_p,
/// and when the constructed balls fail the disjointness check.
CoveringX build_covering(const MapParams& params);

/// tau = t - v_p(k) - s(k-1)/k, defined when k | s.
std::optional<int> scaling_exponent(const MapParams& params);

/// |k|_p > p^(s(k-1)/k) |theta - 1|_p, i.e. k (t - v_p(k)) > s (k - 1).
bool repeller_condition(const MapParams& params);

/// g_i for the ball with the given symbol. Throws BranchError when the ball
/// has no branch root or x is outside the branch domain.
PadicNumber branch(const MapParams& params, const CoveringX& covering, int symbol,
                   const PadicNumber& x);

struct Witness {
  std::string what;
  std::vector<PadicNumber> points;
};

struct ScalingReport {
  int expected_exponent = 0;
  std::vector<std::size_t> pairs_per_ball;
  std::vector<int> observed_exponent;  ///< per ball; the common value when ok
  bool ok = true;
  std::optional<Witness> witness;
};

/// Samples pairs inside each ball and asserts
/// |f(x) - f(y)|_p = p^tau |x - y|_p exactly.
ScalingReport verify_scaling(const MapParams& params, const CoveringX& covering,
                             std::size_t samples_per_ball, std::uint64_t seed);

enum class Verdict { full_shift_chaos, unique_attractor, inconclusive };
std::string_view to_string(Verdict v);

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CertifyOptions {
  std::size_t samples = 32;  ///< random points per ball (preimage and scaling checks)
  std::uint64_t seed = 1;
};

struct RepellerCertificate {
  prime_t p = 0;
  long q = 0;
  long k = 0;
  PadicNumber theta;
  int s = 0;
  int t = 0;
  std::size_t kappa = 0;
  std::optional<int> tau;
  bool condition_holds = false;
  bool preimage_inside = false;
  IncidenceMatrix incidence;
  bool transitive = false;
  Verdict verdict = Verdict::inconclusive;
  std::optional<CoveringX> covering;
  std::vector<CheckRecord> checks;  ///< what was established, in order
  std::vector<Witness> witnesses;   ///< counterexamples behind failed checks
};

/// Decides the regime. PrecisionExhausted propagates.
RepellerCertificate certify(const MapParams& params, const CertifyOptions& options = {});

/// Tables for d_f from a covering: tau on every ball, kappa(i, j) from the
/// center distances.
MetricTable metric_table(const MapParams& params, const CoveringX& covering);

struct Cylinder {
  SymbolWord word;  ///< length depth + 1
  Ball ball;
};

struct JuliaApprox {
  int depth = 0;
  std::vector<Cylinder> cylinders;  ///< lexicographic word order
};

/// Requires a full-shift-chaos certificate (std::invalid_argument otherwise).
/// Throws PrecisionExhausted, naming the largest safe depth, when the
/// cylinder radius p^-(m + depth tau) is beyond the carried precision.
JuliaApprox julia_approx(const MapParams& params, const RepellerCertificate& cert, int depth);

/// (i_0, ..., i_{n-1}) with f^j(x) in ball i_j. std::invalid_argument when x
/// is outside X, EscapedAtStep(j) when f^j(x) leaves X.
SymbolWord itinerary(const MapParams& params, const CoveringX& covering, const PadicNumber& x,
                     int length);

/// Non-periodic: the center g_{i_0} o ... o g_{i_{n-2}}(x_{i_{n-1}}) of the
/// cylinder of points whose itinerary starts with the word. Periodic: the
/// unique fixed point of g_{i_0} o ... o g_{i_{n-1}}, certified by a residual
/// |f^n(x) - x|_p <= p^-(N/2); PrecisionExhausted otherwise.
PadicNumber point_from_itinerary(const MapParams& params, const CoveringX& covering,
                                 const SymbolWord& word, bool periodic);

struct PeriodicPoint {
  SymbolWord word;
  PadicNumber point;
  int residual_exponent = 0;  ///< f^n(point) - point = O(p^residual_exponent)
};

/// One point per word of length n, lexicographic; requires all branches.
std::vector<PeriodicPoint> periodic_points(const MapParams& params, const CoveringX& covering,
                                           int n);

struct ConjugacyReport {
  std::size_t pairs_checked = 0;
  std::size_t orbits_checked = 0;
  bool ok = true;
  std::string failure;
  std::optional<Witness> witness;
};

/// Samples pairs in depth-n cylinders whose words differ within n + 1 symbols
/// and checks d_f(h(x), h(y)) = |x - y|_p and h(f(x)) = shift(h(x)).
ConjugacyReport verify_conjugacy(const MapParams& params, const RepellerCertificate& cert,
                                 std::size_t pairs, int n, std::uint64_t seed);

}  // namespace padic
