#include "padic/subshift.hpp"

#include <charconv>
#include <stdexcept>

namespace padic {

namespace {

void require_symbol(int s, int size, const char* what) {
  if (s < 1 || s > size) {
    throw std::invalid_argument(std::string(what) + " symbol " + std::to_string(s) +
                                " outside 1.." + std::to_string(size));
  }
}

using BigMatrix = std::vector<std::vector<mpz_class>>;

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size();
  BigMatrix c(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

}  // namespace

IncidenceMatrix::IncidenceMatrix(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw std::invalid_argument("incidence matrix is not square");
    for (int e : r)
      if (e != 0 && e != 1) throw std::invalid_argument("incidence entries must be 0 or 1");
  }
}

IncidenceMatrix IncidenceMatrix::all_ones(int size) {
  if (size < 0) throw std::invalid_argument("negative matrix size");
  return IncidenceMatrix(std::vector<std::vector<int>>(size, std::vector<int>(size, 1)));
}

int IncidenceMatrix::entry(int i, int j) const {
  require_symbol(i, size(), "row");
  require_symbol(j, size(), "column");
  return rows_[i - 1][j - 1];
}

bool IncidenceMatrix::is_all_ones() const noexcept {
  for (const auto& r : rows_)
    for (int e : r)
      if (e != 1) return false;
  return true;
}

std::string SymbolWord::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(symbols[i]);
  }
  return out;
}

SymbolWord parse_word(std::string_view text) {
  SymbolWord w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view piece = text.substr(pos, comma - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    int value = 0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || end != piece.data() + piece.size() || value < 1) {
      throw std::invalid_argument("bad word symbol '" + std::string(piece) + "' in '" +
                                  std::string(text) + "'");
    }
    w.symbols.push_back(value);
    pos = comma + 1;
  }
  return w;
}

bool is_admissible(const SymbolWord& word, const IncidenceMatrix& a) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] < 1 || word[i] > a.size()) return false;
    if (i > 0 && !a.allows(word[i - 1], word[i])) return false;
  }
  return true;
}

MetricTable::MetricTable(unsigned long p, std::vector<int> tau, std::vector<std::vector<int>> kappa)
    : p_(p), tau_(std::move(tau)), kappa_(std::move(kappa)) {
  const std::size_t n = tau_.size();
  if (kappa_.size() != n) throw std::invalid_argument("kappa table size differs from tau");
  for (int t : tau_)
    if (t < 1) throw std::invalid_argument("scaling exponents must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (kappa_[i].size() != n) throw std::invalid_argument("kappa table is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (kappa_[i][j] != kappa_[j][i]) throw std::invalid_argument("kappa table not symmetric");
  }
}

int MetricTable::tau(int i) const {
  require_symbol(i, size(), "metric");
  return tau_[i - 1];
}

int MetricTable::kappa(int i, int j) const {
  require_symbol(i, size(), "metric");
  require_symbol(j, size(), "metric");
  if (i == j) throw std::invalid_argument("kappa(i, i) is undefined");
  return kappa_[i - 1][j - 1];
}

SymbolWord shift(const SymbolWord& word) {
  if (word.empty()) throw std::invalid_argument("cannot shift the empty word");
  return SymbolWord{std::vector<int>(word.symbols.begin() + 1, word.symbols.end())};
}

std::optional<long> d_f(const SymbolWord& x, const SymbolWord& y, const MetricTable& table) {
  if (x.size() != y.size()) throw std::invalid_argument("d_f needs words of equal length");
  long exponent = 0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (x[n] != y[n]) return exponent + table.kappa(x[n], y[n]);
    exponent += table.tau(x[n]);
  }
  return std::nullopt;
}

bool is_irreducible(const IncidenceMatrix& a) {
  const int n = a.size();
  if (n == 0) return false;
  // reach[i][j]: some A^m, 1 <= m <= current, has a positive (i, j) entry
  std::vector<std::vector<bool>> power(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) power[i][j] = a.rows()[i][j] == 1;
  auto reach = power;
  for (int m = 2; m <= n * n; ++m) {
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (power[i][l])
          for (int j = 0; j < n; ++j)
            if (a.rows()[l][j]) next[i][j] = true;
    power = std::move(next);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (power[i][j]) reach[i][j] = true;
  }
  for (const auto& r : reach)
    for (bool b : r)
      if (!b) return false;
  return true;
}

WordCounts count_words(const IncidenceMatrix& a, int n) {
  if (n < 1) throw std::invalid_argument("word length must be at least 1");
  const int size = a.size();
  BigMatrix base(size, std::vector<mpz_class>(size));
  BigMatrix result(size, std::vector<mpz_class>(size));
  for (int i = 0; i < size; ++i) {
    result[i][i] = 1;
    for (int j = 0; j < size; ++j) base[i][j] = a.rows()[i][j];
  }
  // words of length n correspond to paths with n-1 steps
  auto power = [&](int e) {
    BigMatrix r = result, b = base;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = multiply(r, b);
      b = multiply(b, b);
    }
    return r;
  };
  WordCounts out;
  BigMatrix steps = power(n - 1);
  for (const auto& r : steps)
    for (const auto& e : r) out.words += e;
  BigMatrix full = multiply(steps, base);
  for (int i = 0; i < size; ++i) out.periodic += full[i][i];
  return out;
}

}  // namespace padic
