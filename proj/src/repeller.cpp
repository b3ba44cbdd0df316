#include "padic/repeller.hpp"

#include <random>

#include "padic/parallel.hpp"

namespace padic {

namespace {

long mod_inverse(long a, long p) {
  mpz_class r, aa(a), pp(p);
  if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t()) == 0) {
    throw std::logic_error("residue not invertible");
  }
  return r.get_si();
}

long residue(long a, long p) { return ((a % p) + p) % p; }

PadicNumber power_of_p(prime_t p, int e, int precision) {
  return PadicNumber::from_unit(p, e, mpz_class(1), precision);
}

// Re-extends the relative precision to n digits by padding with zeros.
PadicNumber padded(const PadicNumber& x, int n) {
  if (x.is_zero() || x.precision() >= n) return x;
  return PadicNumber::from_unit(x.prime(), x.valuation(), x.unit(), n);
}

std::string word_of_two(int a, int b) { return std::to_string(a) + "->" + std::to_string(b); }

}  // namespace

std::optional<int> CoveringX::locate(const PadicNumber& x) const {
  for (std::size_t i = 0; i < balls.size(); ++i)
    if (balls[i].contains(x)) return static_cast<int>(i) + 1;
  return std::nullopt;
}

bool CoveringX::has_all_branches() const noexcept {
  for (const auto& r : root_index)
    if (!r) return false;
  return true;
}

CoveringX build_covering(const MapParams& params) {
  if (!params.theta_closer_than_q()) {
    throw CoveringUnavailable("|theta - 1|_p < |q - 1|_p fails");
  }
  CoveringX c;
  c.sol = solp(params.p(), params.q(), params.k());
  if (c.sol.empty()) throw CoveringUnavailable("Sol_p is empty");

  const prime_t p = params.p();
  const long lp = static_cast<long>(p);
  const int n = params.precision();
  const int s = params.s();
  const int lift = s / static_cast<int>(params.k());
  c.radius_exponent = lift + 1 + params.t();
  const PadicNumber theta_minus_one = params.theta() - params.one();
  const auto& roots = params.roots_of_one_minus_q();

  for (unsigned long xi : c.sol.residues) {
    const long x = static_cast<long>(xi);
    PadicNumber center;
    if (s == 0) {
      // eta (xi - 1) + xi + q - 1 = 0 (mod p); xi = 1 would force p | q
      long eta = residue(-(x + params.q() - 1) % lp * mod_inverse(x - 1, lp), lp);
      c.eta.push_back(eta);
      center = params.one_minus_q() + params.constant(eta) * theta_minus_one;
    } else {
      center = params.one_minus_q() +
               PadicNumber::from_unit(p, lift, mpz_class(x), n) * theta_minus_one;
    }
    c.balls.push_back(Ball{center, c.radius_exponent});

    std::optional<std::size_t> match;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      mpz_class lead = roots[r].unit() % p;
      if (roots[r].valuation() == lift && lead == x) match = r;
    }
    c.root_index.push_back(match);
  }

  for (std::size_t i = 0; i < c.balls.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!c.balls[i].disjoint_from(c.balls[j])) {
        throw CoveringUnavailable("covering balls " + word_of_two(int(j) + 1, int(i) + 1) +
                                  " overlap");
      }
  return c;
}

std::optional<int> scaling_exponent(const MapParams& params) {
  const long k = params.k();
  if (params.s() % k != 0) return std::nullopt;
  return params.t() - params.vp_k() - static_cast<int>(params.s() * (k - 1) / k);
}

bool repeller_condition(const MapParams& params) {
  const long k = params.k();
  return k * (params.t() - params.vp_k()) > static_cast<long>(params.s()) * (k - 1);
}

PadicNumber branch(const MapParams& params, const CoveringX& covering, int symbol,
                   const PadicNumber& x) {
  if (symbol < 1 || symbol > covering.size()) {
    throw BranchError("no covering ball with symbol " + std::to_string(symbol));
  }
  const auto& idx = covering.root_index[static_cast<std::size_t>(symbol - 1)];
  if (!idx) throw BranchError("ball " + std::to_string(symbol) + " has no k-th root of 1 - q");
  return inverse_branch(params, *idx, x);
}

ScalingReport verify_scaling(const MapParams& params, const CoveringX& covering,
                             std::size_t samples_per_ball, std::uint64_t seed) {
  ScalingReport report;
  auto tau = scaling_exponent(params);
  if (!tau) throw std::invalid_argument("k does not divide s; no common scaling exponent");
  report.expected_exponent = *tau;
  std::mt19937_64 rng(seed);
  const prime_t p = params.p();
  const int n = params.precision();
  const int m = covering.radius_exponent;
  const int spread = std::max(1, n / 4);
  for (const Ball& ball : covering.balls) {
    std::size_t pairs = 0;
    std::optional<int> observed;
    for (std::size_t i = 0; i < samples_per_ball; ++i) {
      PadicNumber x = random_in_ball(ball, n, rng);
      const int gap = m + static_cast<int>(rng() % static_cast<std::uint64_t>(spread));
      PadicNumber y = x + random_unit(p, n, rng) * power_of_p(p, gap, n);
      const int ratio = ord(x - y, "x - y in a covering ball") -
                        ord(eval(params, x) - eval(params, y), "f(x) - f(y) in a covering ball");
      ++pairs;
      if (!observed) observed = ratio;
      if (ratio != report.expected_exponent && report.ok) {
        report.ok = false;
        report.witness = Witness{"scaling exponent " + std::to_string(ratio) + " != tau", {x, y}};
      }
    }
    report.pairs_per_ball.push_back(pairs);
    report.observed_exponent.push_back(observed.value_or(report.expected_exponent));
  }
  return report;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::full_shift_chaos: return "full-shift-chaos";
    case Verdict::unique_attractor: return "unique-attractor";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

RepellerCertificate certify(const MapParams& params, const CertifyOptions& options) {
  RepellerCertificate cert;
  cert.p = params.p();
  cert.q = params.q();
  cert.k = params.k();
  cert.theta = params.theta();
  cert.s = params.s();
  cert.t = params.t();
  cert.tau = scaling_exponent(params);
  cert.condition_holds = repeller_condition(params);
  auto record = [&](std::string name, bool passed, std::string detail) {
    cert.checks.push_back(CheckRecord{std::move(name), passed, std::move(detail)});
    return passed;
  };

  SolSet sol = solp(params.p(), params.q(), params.k());
  cert.kappa = sol.kappa();
  const bool closer = record("theta_closer_than_q", params.theta_closer_than_q(),
                             "t=" + std::to_string(cert.t) + " s=" + std::to_string(cert.s));
  record("sol_p", !sol.empty(), "kappa=" + std::to_string(sol.kappa()));
  if (!closer) return cert;

  const prime_t p = params.p();
  const int n = params.precision();
  std::mt19937_64 rng(options.seed);

  if (sol.empty()) {
    // witness for the attractor regime: sampled orbits reach the fixed point 1
    std::size_t converged = 0;
    for (std::size_t i = 0; i < options.samples; ++i) {
      const int v = static_cast<int>(rng() % 5) - 2;
      PadicNumber x = random_unit(p, n, rng) * power_of_p(p, v, n);
      if (agreement(x, params.pole()) >= n / 2) continue;
      OrbitConvergence c = converge_to_one(params, x, n / 2, 4 * n);
      if (c.converged) {
        ++converged;
      } else {
        cert.witnesses.push_back(Witness{"orbit did not reach 1", {x}});
      }
    }
    const bool all = record("orbits_converge_to_one", cert.witnesses.empty(),
                            std::to_string(converged) + " sampled orbits");
    if (all) cert.verdict = Verdict::unique_attractor;
    return cert;
  }

  if (!record("kappa_at_least_two", sol.kappa() >= 2, "kappa=" + std::to_string(sol.kappa()))) {
    return cert;
  }
  cert.covering = build_covering(params);
  const CoveringX& cover = *cert.covering;
  record("covering_disjoint", true,
         std::to_string(cover.size()) + " balls, radius p^-" +
             std::to_string(cover.radius_exponent));
  if (!record("branch_roots", cover.has_all_branches(), "k-th roots of 1-q for every ball")) {
    return cert;
  }
  std::string tau_text = cert.tau ? std::to_string(*cert.tau) : "undefined";
  if (!record("repeller_condition", cert.condition_holds, "tau=" + tau_text)) return cert;

  // f^-1(X) inside X: every branch maps the centers and sampled points of
  // every ball back into its own ball, and f undoes it.
  const int kappa = cover.size();
  std::vector<std::vector<int>> rows(kappa, std::vector<int>(kappa, 0));
  cert.preimage_inside = true;
  std::size_t points = 0;
  for (int j = 1; j <= kappa; ++j) {
    std::vector<PadicNumber> probe{cover.ball(j).center};
    for (std::size_t r = 0; r < options.samples; ++r)
      probe.push_back(random_in_ball(cover.ball(j), n, rng));
    for (int i = 1; i <= kappa; ++i) {
      for (std::size_t r = 0; r < probe.size(); ++r) {
        const PadicNumber& x = probe[r];
        ++points;
        PadicNumber g = branch(params, cover, i, x);
        const bool inside = cover.ball(i).contains(g);
        const bool round_trip = agreement(eval(params, g), x) >= n / 2;
        if (r == 0) rows[i - 1][j - 1] = inside ? 1 : 0;
        if (!inside || !round_trip) {
          if (cert.preimage_inside) {
            cert.witnesses.push_back(Witness{
                inside ? "f(g(x)) != x" : "branch " + std::to_string(i) + " left its ball", {x, g}});
          }
          cert.preimage_inside = false;
        }
      }
    }
  }
  cert.incidence = IncidenceMatrix(rows);
  record("preimage_inside", cert.preimage_inside,
         std::to_string(points) + " branch evaluations");
  cert.transitive = is_irreducible(cert.incidence);
  record("incidence_all_ones", cert.incidence.is_all_ones(), "");
  record("transitive", cert.transitive, "");

  ScalingReport scaling = verify_scaling(params, cover, options.samples, rng());
  std::size_t pairs = 0;
  for (auto c : scaling.pairs_per_ball) pairs += c;
  if (scaling.witness) cert.witnesses.push_back(*scaling.witness);
  record("scaling", scaling.ok,
         std::to_string(pairs) + " pairs, |f(x)-f(y)| = p^" +
             std::to_string(scaling.expected_exponent) + " |x-y|");

  bool all = true;
  for (const auto& c : cert.checks) all = all && c.passed;
  if (all) cert.verdict = Verdict::full_shift_chaos;
  return cert;
}

MetricTable metric_table(const MapParams& params, const CoveringX& covering) {
  auto tau = scaling_exponent(params);
  if (!tau) throw std::invalid_argument("no common scaling exponent");
  const int kappa = covering.size();
  std::vector<std::vector<int>> table(kappa, std::vector<int>(kappa, 0));
  for (int i = 0; i < kappa; ++i)
    for (int j = 0; j < kappa; ++j)
      if (i != j) {
        table[i][j] = ord(covering.balls[i].center - covering.balls[j].center,
                          "the distance between covering centers");
      }
  return MetricTable(params.p(), std::vector<int>(kappa, *tau), std::move(table));
}

namespace {

void require_chaos(const RepellerCertificate& cert) {
  if (cert.verdict != Verdict::full_shift_chaos || !cert.covering) {
    throw std::invalid_argument("requires a full-shift-chaos certificate");
  }
}

SymbolWord word_from_index(std::size_t index, int length, int kappa) {
  SymbolWord w{std::vector<int>(static_cast<std::size_t>(length))};
  for (int i = length - 1; i >= 0; --i) {
    w.symbols[static_cast<std::size_t>(i)] = 1 + static_cast<int>(index % kappa);
    index /= static_cast<std::size_t>(kappa);
  }
  return w;
}

}  // namespace

JuliaApprox julia_approx(const MapParams& params, const RepellerCertificate& cert, int depth) {
  require_chaos(cert);
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  const CoveringX& cover = *cert.covering;
  const int m = cover.radius_exponent;
  const int tau = *cert.tau;
  const int n = params.precision();
  const std::size_t kappa = static_cast<std::size_t>(cover.size());
  auto safe_depth_message = [&](int safe) {
    return "the cylinder radius p^-" + std::to_string(m + depth * tau) + " at depth " +
           std::to_string(depth) + " (largest safe depth " + std::to_string(safe) + ")";
  };
  if (m + depth * tau >= n) throw PrecisionExhausted(safe_depth_message((n - 1 - m) / tau), n);

  std::size_t count = 1;
  for (int d = 0; d <= depth; ++d) {
    count *= kappa;
    if (count > (std::size_t{1} << 22)) throw std::invalid_argument("too many cylinders");
  }

  std::vector<PadicNumber> centers;
  for (const Ball& b : cover.balls) centers.push_back(b.center);
  for (int d = 1; d <= depth; ++d) {
    // word (a, rest) has index a * kappa^d + index(rest); rest is level d-1
    const std::size_t block = centers.size();
    std::vector<PadicNumber> next(block * kappa);
    const int radius = m + d * tau;
    const int previous = m + (d - 1) * tau;
    parallel_for(next.size(), [&](std::size_t id) {
      const std::size_t rest = id % block;
      const int symbol = 1 + static_cast<int>(id / block);
      PadicNumber c = branch(params, cover, symbol, centers[rest]);
      if (c.absolute_precision() <= radius) {
        throw PrecisionExhausted(safe_depth_message(d - 1), c.absolute_precision());
      }
      if (!Ball{centers[rest], previous}.contains(eval(params, c))) {
        throw PadicError("cylinder " + word_from_index(id, d + 1, int(kappa)).to_string() +
                         " is not mapped into its successor");
      }
      next[id] = std::move(c);
    });
    centers = std::move(next);
  }

  JuliaApprox out;
  out.depth = depth;
  out.cylinders.reserve(centers.size());
  for (std::size_t id = 0; id < centers.size(); ++id) {
    out.cylinders.push_back(Cylinder{word_from_index(id, depth + 1, static_cast<int>(kappa)),
                                     Ball{centers[id], m + depth * tau}});
  }
  return out;
}

SymbolWord itinerary(const MapParams& params, const CoveringX& covering, const PadicNumber& x,
                     int length) {
  if (length < 0) throw std::invalid_argument("negative itinerary length");
  SymbolWord w;
  PadicNumber z = x;
  for (int step = 0; step < length; ++step) {
    auto symbol = covering.locate(z);
    if (!symbol) {
      if (step == 0) throw std::invalid_argument("starting point is outside the covering X");
      throw EscapedAtStep(step);
    }
    w.symbols.push_back(*symbol);
    if (step + 1 < length) z = eval(params, z);
  }
  return w;
}

PadicNumber point_from_itinerary(const MapParams& params, const CoveringX& covering,
                                 const SymbolWord& word, bool periodic) {
  if (word.empty()) throw std::invalid_argument("empty word");
  for (int s : word.symbols)
    if (s < 1 || s > covering.size()) {
      throw std::invalid_argument("symbol " + std::to_string(s) + " outside the covering");
    }
  const std::size_t len = word.size();
  if (!periodic) {
    PadicNumber z = covering.ball(word[len - 1]).center;
    for (std::size_t i = len - 1; i-- > 0;) z = branch(params, covering, word[i], z);
    return z;
  }

  const int n = params.precision();
  auto compose = [&](PadicNumber z) {
    for (std::size_t i = len; i-- > 0;) z = branch(params, covering, word[i], z);
    return z;
  };
  // Banach iteration; padding is harmless because the composition contracts
  // and the result is certified by its residual below
  PadicNumber z = covering.ball(word[0]).center;
  int best = -1, stalled = 0;
  for (int round = 0; round < 4 * n && stalled < 3; ++round) {
    PadicNumber next = compose(padded(z, n));
    const int a = agreement(next, z);
    z = next;
    if (a > best) {
      best = a;
      stalled = 0;
    } else {
      ++stalled;
    }
  }
  const int residual = agreement(iterate(params, z, static_cast<int>(len)), z);
  if (residual < n / 2) {
    throw PrecisionExhausted("the periodic point residual for word " + word.to_string(), residual);
  }
  return z;
}

std::vector<PeriodicPoint> periodic_points(const MapParams& params, const CoveringX& covering,
                                           int n) {
  if (n < 1) throw std::invalid_argument("period must be at least 1");
  if (!covering.has_all_branches()) throw BranchError("covering lacks inverse branches");
  const std::size_t kappa = static_cast<std::size_t>(covering.size());
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= kappa;
    if (count > (std::size_t{1} << 20)) throw std::invalid_argument("too many periodic words");
  }
  std::vector<PeriodicPoint> out(count);
  parallel_for(count, [&](std::size_t id) {
    PeriodicPoint& pp = out[id];
    pp.word = word_from_index(id, n, static_cast<int>(kappa));
    pp.point = point_from_itinerary(params, covering, pp.word, true);
    pp.residual_exponent = agreement(iterate(params, pp.point, n), pp.point);
  });
  return out;
}

ConjugacyReport verify_conjugacy(const MapParams& params, const RepellerCertificate& cert,
                                 std::size_t pairs, int n, std::uint64_t seed) {
  require_chaos(cert);
  if (n < 0) throw std::invalid_argument("negative depth");
  const CoveringX& cover = *cert.covering;
  const MetricTable table = metric_table(params, cover);
  const int kappa = cover.size();
  const int radius = cover.radius_exponent + n * *cert.tau;
  const int precision = params.precision();
  std::mt19937_64 rng(seed);
  auto symbol = [&] { return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(kappa)); };
  auto sample = [&](const SymbolWord& w) {
    Ball cyl{point_from_itinerary(params, cover, w, false), radius};
    return random_in_ball(cyl, precision, rng);
  };

  ConjugacyReport report;
  auto fail = [&](std::string why, std::vector<PadicNumber> pts) {
    if (report.ok) {
      report.ok = false;
      report.failure = why;
      report.witness = Witness{std::move(why), std::move(pts)};
    }
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    SymbolWord wx, wy;
    const int split = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
    for (int j = 0; j <= n; ++j) {
      wx.symbols.push_back(symbol());
      int other = j < split ? wx.symbols.back() : symbol();
      if (j == split)
        while (other == wx.symbols.back()) other = symbol();
      wy.symbols.push_back(other);
    }
    PadicNumber x = sample(wx), y = sample(wy);
    SymbolWord hx = itinerary(params, cover, x, n + 1);
    SymbolWord hy = itinerary(params, cover, y, n + 1);
    ++report.pairs_checked;
    if (hx != wx || hy != wy) fail("sampled point has the wrong itinerary", {x, y});
    auto d = d_f(hx, hy, table);
    const int norm = ord(x - y, "|x - y|_p for a conjugacy pair");
    if (!d || *d != norm) {
      fail("d_f = p^-" + (d ? std::to_string(*d) : std::string("inf")) + " but |x-y| = p^-" +
               std::to_string(norm),
           {x, y});
    }
    for (const PadicNumber* z : {&x, &y}) {
      const SymbolWord& h = z == &x ? hx : hy;
      ++report.orbits_checked;
      if (n > 0 && itinerary(params, cover, eval(params, *z), n) != shift(h)) {
        fail("itinerary(f(x)) != shift(itinerary(x))", {*z});
      }
    }
  }
  return report;
}

}  // namespace padic
