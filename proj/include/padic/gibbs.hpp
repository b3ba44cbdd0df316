#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic/padic_number.hpp"
#include "padic/potts_bethe.hpp"

namespace padic {

/// Semi-infinite Cayley tree of order k cut at `levels`. Vertices are numbered
/// breadth first: the root is 0 and level m occupies a contiguous block of
/// k^m ids, so a configuration on V_n extends one on V_{n-1} by appending.
class CayleyTree {
 public:
  /// Throws std::invalid_argument unless k >= 1 and levels >= 1.
  CayleyTree(int k, int levels);

  int k() const noexcept { return k_; }
  int levels() const noexcept { return levels_; }
  std::size_t vertex_count() const noexcept { return vertex_count(levels_); }
  std::size_t vertex_count(int n) const;  ///< |V_n|
  std::size_t level_begin(int m) const;   ///< first id of W_m
  std::size_t level_size(int m) const;    ///< |W_m| = k^m
  int level(std::size_t x) const;
  std::vector<std::size_t> successors(std::size_t x) const;  ///< S(x); empty on W_levels
  std::size_t parent(std::size_t x) const;
  /// L_n, parent first; ordered by child id.
  std::vector<std::pair<std::size_t, std::size_t>> edges(int n) const;

 private:
  int k_;
  int levels_;
  std::vector<std::size_t> begin_;  ///< begin_[m] = |V_{m-1}|
};

CayleyTree build_tree(int k, int n);

/// Spins sigma(x) in 1..q for every vertex of V_level.
struct Configuration {
  int level = 0;
  std::vector<int> spins;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Throws std::invalid_argument unless the spins cover exactly V_level of the
/// tree and lie in 1..q.
void validate(const CayleyTree& tree, const Configuration& config, int q);

/// Configurations on V_n listed with vertex 0 most significant.
Configuration configuration_from_index(const CayleyTree& tree, int n, int q, std::size_t index);

/// J * #{edges of L_n with equal spins}. DomainError unless |J|_p <= p^-1.
PadicNumber hamiltonian(const CayleyTree& tree, const Configuration& config, const PadicNumber& J);

/// h_x in Q_p^q for each vertex (the root included, used by the level-0
/// measure). Row x is indexed by vertex id.
struct BoundaryFields {
  int q = 0;
  std::vector<std::vector<PadicNumber>> h;

  const std::vector<PadicNumber>& at(std::size_t x) const { return h.at(x); }
  /// (h_1/h_q, ..., h_{q-1}/h_q). PrecisionExhausted when h_q is zero at
  /// precision.
  std::vector<PadicNumber> reduced(std::size_t x) const;
};

/// exp_p(H_n(sigma)) * prod_{x in W_n} h_{sigma(x), x}, unnormalized.
PadicNumber weight(const CayleyTree& tree, const BoundaryFields& fields, const PadicNumber& J,
                   const Configuration& config);

/// mu^(n)(sigma) with Z_n summed over all q^|V_n| configurations of V_n.
PadicNumber mu_n(const CayleyTree& tree, const BoundaryFields& fields, const PadicNumber& J,
                 const Configuration& config);

struct LevelMeasure {
  int level = 0;
  PadicNumber partition;            ///< Z_n
  std::vector<PadicNumber> values;  ///< mu^(n), configuration_from_index order
};

/// The whole table; std::invalid_argument past 2^20 configurations.
LevelMeasure level_measure(const CayleyTree& tree, const BoundaryFields& fields,
                           const PadicNumber& J, int n);

struct CompatibilityReport {
  int level = 0;
  bool ok = true;
  std::size_t configurations_checked = 0;  ///< sigma on V_{n-1}
  std::optional<Configuration> witness;    ///< first failing sigma
  std::optional<std::pair<PadicNumber, PadicNumber>> witness_values;  ///< (marginal, mu^(n-1))
  /// Bookkeeping for boundedness: the least valuation seen among mu^(n) and
  /// mu^(n-1) values, i.e. sup |mu|_p = p^-min_valuation.
  int min_valuation = PadicNumber::kUnbounded;
};

/// sum_omega mu^(n)(sigma v omega) = mu^(n-1)(sigma) for every sigma on V_{n-1},
/// compared digit for digit at the carried precision. Every configuration of
/// V_n is enumerated.
CompatibilityReport check_compatibility(const CayleyTree& tree, const BoundaryFields& fields,
                                        const PadicNumber& J, int n);

/// F_i(x) = ((theta - 1) x_i + sum_j x_j + 1) / (sum_j x_j + theta), i < q.
/// PoleError or PrecisionExhausted when the denominator vanishes.
std::vector<PadicNumber> recursion_F(const std::vector<PadicNumber>& xhat,
                                     const PadicNumber& theta);

/// Fills every vertex above W_levels with hhat_x = prod_{y in S(x)} F(hhat_y)
/// and h_{q,x} = 1, starting from the given leaf fields on W_levels (each a
/// full q-vector; only its reduced form matters).
BoundaryFields fields_from_recursion(const CayleyTree& tree, const PadicNumber& theta,
                                     const std::vector<std::vector<PadicNumber>>& leaves);

/// A field on the invariant line: hhat_x = (values[level(x) mod size], 1, ..., 1).
struct LineField {
  std::string label;
  std::vector<PadicNumber> values;  ///< one entry: translation invariant
};

/// h a fixed point of f gives a translation-invariant field; an orbit
/// h_0 -> h_1 -> ... -> h_{n-1} -> h_0 gives the level-periodic field with
/// values[m] = h_{-m mod n}. Returns the fixed point 1, the fixed points in X
/// and, for period >= 2, one field per cycle of exact period `period`.
/// Throws when the parameters do not certify full-shift chaos.
std::vector<LineField> ti_and_periodic_fields(const MapParams& params, int period);

/// Materializes a line field on the tree with q states.
BoundaryFields line_fields(const CayleyTree& tree, const LineField& field, int q);

}  // namespace padic
