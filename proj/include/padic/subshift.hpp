#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace padic {

/// 0/1 matrix over the symbols 1..size(). All indices are 1-based symbols.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  /// Throws std::invalid_argument unless rows is square with 0/1 entries.
  explicit IncidenceMatrix(std::vector<std::vector<int>> rows);
  static IncidenceMatrix all_ones(int size);

  int size() const noexcept { return static_cast<int>(rows_.size()); }
  int entry(int i, int j) const;
  bool allows(int from, int to) const { return entry(from, to) == 1; }
  bool is_all_ones() const noexcept;
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }

  friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;

 private:
  std::vector<std::vector<int>> rows_;
};

struct SymbolWord {
  std::vector<int> symbols;

  std::size_t size() const noexcept { return symbols.size(); }
  bool empty() const noexcept { return symbols.empty(); }
  int operator[](std::size_t i) const { return symbols[i]; }
  std::string to_string() const;  ///< "1,2,1"

  friend bool operator==(const SymbolWord&, const SymbolWord&) = default;
  friend auto operator<=>(const SymbolWord&, const SymbolWord&) = default;
};

/// Parses "1,2,1" (spaces allowed). Throws std::invalid_argument.
SymbolWord parse_word(std::string_view text);

/// Every symbol in 1..A.size() and every consecutive transition allowed.
bool is_admissible(const SymbolWord& word, const IncidenceMatrix& a);

/// Exponents of the dynamical metric: tau(i) for the scaling on ball i and
/// kappa(i, j) with |x_i - x_j|_p = p^-kappa(i,j).
class MetricTable {
 public:
  /// kappa must be symmetric and square of the same size as tau, tau(i) >= 1.
  MetricTable(unsigned long p, std::vector<int> tau, std::vector<std::vector<int>> kappa);

  unsigned long p() const noexcept { return p_; }
  int size() const noexcept { return static_cast<int>(tau_.size()); }
  int tau(int i) const;
  int kappa(int i, int j) const;

 private:
  unsigned long p_;
  std::vector<int> tau_;
  std::vector<std::vector<int>> kappa_;
};

/// Drops the first symbol. Throws std::invalid_argument on the empty word.
SymbolWord shift(const SymbolWord& word);

/// d_f(x, y) = p^-e. Returns e, or nullopt for distance 0 (identical finite
/// words). Throws std::invalid_argument on a length mismatch or a symbol
/// outside the table.
std::optional<long> d_f(const SymbolWord& x, const SymbolWord& y, const MetricTable& table);

bool is_irreducible(const IncidenceMatrix& a);

struct WordCounts {
  mpz_class words;     ///< admissible words of length n
  mpz_class periodic;  ///< trace(A^n): points of period dividing n
};

/// Throws std::invalid_argument for n < 1.
WordCounts count_words(const IncidenceMatrix& a, int n);

}  // namespace padic
