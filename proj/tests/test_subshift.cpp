#include <random>

#include "doctest.h"
#include "padic/subshift.hpp"

using namespace padic;

namespace {

using Rows = std::vector<std::vector<int>>;

// brute force: extend admissible words one symbol at a time
long brute_words(const IncidenceMatrix& a, int n, long* closed) {
  std::vector<std::vector<int>> words;
  for (int s = 1; s <= a.size(); ++s) words.push_back({s});
  for (int len = 1; len < n; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      for (int s = 1; s <= a.size(); ++s)
        if (a.allows(w.back(), s)) {
          next.push_back(w);
          next.back().push_back(s);
        }
    words = std::move(next);
  }
  *closed = 0;
  for (const auto& w : words)
    if (a.allows(w.back(), w.front())) ++*closed;
  return static_cast<long>(words.size());
}

MetricTable table_5226() { return MetricTable(5, {1, 1}, {{0, 1}, {1, 0}}); }

}  // namespace

TEST_CASE("incidence matrix validation") {
  CHECK_THROWS_AS(IncidenceMatrix(Rows{{1, 0}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(IncidenceMatrix(Rows{{2}}), std::invalid_argument);
  IncidenceMatrix a = IncidenceMatrix::all_ones(3);
  CHECK(a.is_all_ones());
  CHECK(a.entry(3, 1) == 1);
  CHECK_THROWS_AS(a.entry(0, 1), std::invalid_argument);
  CHECK_FALSE(IncidenceMatrix(Rows{{1, 0}, {1, 1}}).is_all_ones());
}

TEST_CASE("words") {
  CHECK(parse_word("1,2,1") == SymbolWord{{1, 2, 1}});
  CHECK(parse_word(" 3 , 1") == SymbolWord{{3, 1}});
  CHECK(parse_word("1,2,1").to_string() == "1,2,1");
  CHECK_THROWS_AS(parse_word(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("1,x"), std::invalid_argument);

  IncidenceMatrix swap(Rows{{0, 1}, {1, 0}});
  CHECK(is_admissible(SymbolWord{{1, 2, 1}}, swap));
  CHECK_FALSE(is_admissible(SymbolWord{{1, 1}}, swap));
  CHECK_FALSE(is_admissible(SymbolWord{{3}}, swap));
}

TEST_CASE("shift") {
  CHECK(shift(SymbolWord{{1, 2, 1}}) == SymbolWord{{2, 1}});
  CHECK(shift(SymbolWord{{2}}).empty());
  CHECK_THROWS_AS(shift(SymbolWord{}), std::invalid_argument);

  // a periodic word of period 3 written out to length 9, shifted 3 times,
  // agrees with itself on the remaining prefix
  SymbolWord w{{1, 2, 2, 1, 2, 2, 1, 2, 2}};
  SymbolWord v = shift(shift(shift(w)));
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == w[i]);
}

TEST_CASE("d_f examples") {
  MetricTable t = table_5226();
  CHECK_FALSE(d_f(SymbolWord{{1, 2}}, SymbolWord{{1, 2}}, t).has_value());
  CHECK(d_f(SymbolWord{{1, 2}}, SymbolWord{{2, 2}}, t) == 1);
  CHECK(d_f(SymbolWord{{1, 1, 2}}, SymbolWord{{1, 2, 1}}, t) == 2);
  CHECK_THROWS_AS(d_f(SymbolWord{{1}}, SymbolWord{{1, 2}}, t), std::invalid_argument);
  CHECK_THROWS_AS(d_f(SymbolWord{{3}}, SymbolWord{{1}}, t), std::invalid_argument);

  MetricTable uneven(7, {2, 1, 3}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  // tau_3 + tau_2 + kappa(1, 3)
  CHECK(d_f(SymbolWord{{3, 2, 1}}, SymbolWord{{3, 2, 3}}, uneven) == 3 + 1 + 2);
  CHECK_THROWS_AS(MetricTable(7, {1, 0}, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricTable(7, {1, 1}, {{0, 1}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("d_f is an ultrametric and refines the prefix metric") {
  std::mt19937_64 rng(3);
  // kappa is itself ultrametric on the symbols and max kappa < min tau + min
  // kappa, as for tables built from a covering
  for (const MetricTable& t : {MetricTable(5, {2, 2, 3}, {{0, 1, 1}, {1, 0, 2}, {1, 2, 0}}),
                               MetricTable(5, {1, 1, 1}, {{0, 2, 2}, {2, 0, 2}, {2, 2, 0}})}) {
    auto random_word = [&](const SymbolWord& base, std::size_t keep) {
      SymbolWord w = base;
      for (std::size_t i = keep; i < w.size(); ++i) w.symbols[i] = 1 + static_cast<int>(rng() % 3);
      return w;
    };
    auto first_disagreement = [](const SymbolWord& a, const SymbolWord& b) {
      std::size_t n = 0;
      while (n < a.size() && a[n] == b[n]) ++n;
      return n;
    };
    SymbolWord zero{std::vector<int>(8, 1)};
    for (int i = 0; i < 2000; ++i) {
      SymbolWord x = random_word(zero, 0);
      SymbolWord y = random_word(x, rng() % 9);
      SymbolWord z = random_word(x, rng() % 9);
      auto e = [&](const SymbolWord& a, const SymbolWord& b) {
        auto d = d_f(a, b, t);
        return d ? *d : 1000L;  // larger exponent means closer
      };
      CHECK(e(x, z) >= std::min(e(x, y), e(y, z)));
      CHECK(e(x, y) == e(y, x));
      // a strictly longer common prefix means strictly closer
      const std::size_t nxy = first_disagreement(x, y), nxz = first_disagreement(x, z);
      if (nxy > nxz) CHECK(e(x, y) > e(x, z));
    }
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(IncidenceMatrix::all_ones(2)));
  CHECK_FALSE(is_irreducible(IncidenceMatrix(Rows{{1, 0}, {0, 1}})));
  CHECK(is_irreducible(IncidenceMatrix(Rows{{0, 1}, {1, 0}})));
  CHECK(is_irreducible(IncidenceMatrix(Rows{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})));
  CHECK_FALSE(is_irreducible(IncidenceMatrix(Rows{{1, 1}, {0, 1}})));
  CHECK_FALSE(is_irreducible(IncidenceMatrix()));
}

TEST_CASE("count_words") {
  CHECK(count_words(IncidenceMatrix::all_ones(3), 5).words == 243);
  CHECK(count_words(IncidenceMatrix::all_ones(2), 2).periodic == 4);
  IncidenceMatrix swap(Rows{{0, 1}, {1, 0}});
  for (int n = 1; n <= 6; ++n) CHECK(count_words(swap, n).periodic == (n % 2 ? 0 : 2));
  CHECK(count_words(IncidenceMatrix::all_ones(2), 100).words ==
        mpz_class("1267650600228229401496703205376"));
  CHECK_THROWS_AS(count_words(swap, 0), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int size = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> rows(size, std::vector<int>(size));
    for (auto& r : rows)
      for (int& e : r) e = static_cast<int>(rng() % 2);
    IncidenceMatrix a(rows);
    for (int n = 1; n <= 8; ++n) {
      long closed = 0;
      long words = brute_words(a, n, &closed);
      WordCounts c = count_words(a, n);
      CHECK(c.words == words);
      CHECK(c.periodic == closed);
    }
  }
}
