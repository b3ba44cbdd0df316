#pragma once

#include <optional>
#include <vector>

#include "padic/padic_number.hpp"

namespace padic {

/// Leading-digit solutions of x^k = 1 - q.
struct SolSet {
  prime_t p = 0;
  long q = 0;
  long k = 0;
  int s = 0;                              ///< |q - 1|_p = p^-s
  bool scale_ok = true;                   ///< k divides s
  std::vector<unsigned long> residues;    ///< xi in 1..p-1, ascending

  std::size_t kappa() const noexcept { return residues.size(); }
  bool empty() const noexcept { return residues.empty(); }
};

/// s = 0: xi^k = 1 - q (mod p).  s > 0, k | s: p^s xi^k + q - 1 = 0 (mod p^(s+1)).
/// s > 0, k does not divide s: empty. Requires p prime >= 3 not dividing q.
SolSet solp(prime_t p, long q, long k);

/// All k-th roots of a in Q_p, one per residue class of the leading unit digit
/// (ascending). Empty when none exists. The roots carry precision N - v_p(k).
std::vector<PadicNumber> kth_roots(const PadicNumber& a, long k);

/// The k-th root of u lying in E_p = 1 + pZ_p, when it exists.
std::optional<PadicNumber> kth_root_in_ep(const PadicNumber& u, long k);

}  // namespace padic
