#include "padic/gibbs.hpp"

#include <algorithm>
#include <limits>

#include "padic/repeller.hpp"

namespace padic {

CayleyTree::CayleyTree(int k, int levels) : k_(k), levels_(levels) {
  if (k < 1) throw std::invalid_argument("tree order k must be at least 1");
  if (levels < 1) throw std::invalid_argument("tree needs at least one level");
  begin_.push_back(0);
  std::size_t width = 1;
  for (int m = 0; m <= levels; ++m) {
    begin_.push_back(begin_.back() + width);
    if (m < levels && width > (std::size_t{1} << 40) / static_cast<std::size_t>(k)) {
      throw std::invalid_argument("tree too large");
    }
    width *= static_cast<std::size_t>(k);
  }
}

std::size_t CayleyTree::vertex_count(int n) const {
  if (n < 0 || n > levels_) throw std::invalid_argument("level outside the tree");
  return begin_[static_cast<std::size_t>(n) + 1];
}

std::size_t CayleyTree::level_begin(int m) const {
  if (m < 0 || m > levels_) throw std::invalid_argument("level outside the tree");
  return begin_[static_cast<std::size_t>(m)];
}

std::size_t CayleyTree::level_size(int m) const {
  return vertex_count(m) - level_begin(m);
}

int CayleyTree::level(std::size_t x) const {
  if (x >= vertex_count()) throw std::invalid_argument("vertex outside the tree");
  auto it = std::upper_bound(begin_.begin(), begin_.end(), x);
  return static_cast<int>(it - begin_.begin()) - 1;
}

std::vector<std::size_t> CayleyTree::successors(std::size_t x) const {
  const int m = level(x);
  std::vector<std::size_t> out;
  if (m == levels_) return out;
  const std::size_t first = level_begin(m + 1) + (x - level_begin(m)) * static_cast<std::size_t>(k_);
  for (int j = 0; j < k_; ++j) out.push_back(first + static_cast<std::size_t>(j));
  return out;
}

std::size_t CayleyTree::parent(std::size_t x) const {
  const int m = level(x);
  if (m == 0) throw std::invalid_argument("the root has no parent");
  return level_begin(m - 1) + (x - level_begin(m)) / static_cast<std::size_t>(k_);
}

std::vector<std::pair<std::size_t, std::size_t>> CayleyTree::edges(int n) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t y = 1; y < vertex_count(n); ++y) out.emplace_back(parent(y), y);
  return out;
}

CayleyTree build_tree(int k, int n) { return CayleyTree(k, n); }

void validate(const CayleyTree& tree, const Configuration& config, int q) {
  if (config.level < 0 || config.level > tree.levels()) {
    throw std::invalid_argument("configuration level outside the tree");
  }
  if (config.spins.size() != tree.vertex_count(config.level)) {
    throw std::invalid_argument("configuration does not cover V_" + std::to_string(config.level));
  }
  for (int s : config.spins)
    if (s < 1 || s > q) throw std::invalid_argument("spin outside 1..q");
}

Configuration configuration_from_index(const CayleyTree& tree, int n, int q, std::size_t index) {
  Configuration c;
  c.level = n;
  c.spins.assign(tree.vertex_count(n), 1);
  for (std::size_t i = c.spins.size(); i-- > 0;) {
    c.spins[i] = 1 + static_cast<int>(index % static_cast<std::size_t>(q));
    index /= static_cast<std::size_t>(q);
  }
  return c;
}

namespace {

void require_small_coupling(const PadicNumber& J) {
  if (!J.is_zero() && J.valuation() < 1) {
    throw DomainError("coupling J needs |J|_p <= 1/p for exp_p to converge");
  }
}

long agreeing_edges(const CayleyTree& tree, const std::vector<int>& spins, int n) {
  long count = 0;
  for (std::size_t y = 1; y < tree.vertex_count(n); ++y)
    if (spins[y] == spins[tree.parent(y)]) ++count;
  return count;
}

int precision_of(const PadicNumber& J) {
  return J.is_exact_zero() ? kDefaultPrecision : std::max(1, J.absolute_precision());
}

// exp_p(c J) for c = 0..max_count
std::vector<PadicNumber> exp_table(const PadicNumber& J, std::size_t max_count) {
  std::vector<PadicNumber> e;
  const int n = precision_of(J);
  for (std::size_t c = 0; c <= max_count; ++c) {
    PadicNumber h = J * PadicNumber::from_integer(static_cast<long>(c), J.prime(), n);
    e.push_back(exp_p(h, n));
  }
  return e;
}

std::size_t checked_count(int q, std::size_t vertices, std::size_t limit) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < vertices; ++i) {
    count *= static_cast<std::size_t>(q);
    if (count > limit) throw std::invalid_argument("too many configurations to enumerate");
  }
  return count;
}

void require_fields(const CayleyTree& tree, const BoundaryFields& fields, int level) {
  if (fields.q < 2) throw std::invalid_argument("fields need q >= 2");
  for (std::size_t x = tree.level_begin(level); x < tree.vertex_count(level); ++x) {
    if (x >= fields.h.size() || fields.h[x].size() != static_cast<std::size_t>(fields.q)) {
      throw std::invalid_argument("boundary field missing on W_" + std::to_string(level));
    }
  }
}

struct LevelSums {
  std::vector<PadicNumber> lower;     ///< W_{n-1}(sigma) per sigma on V_{n-1}
  std::vector<PadicNumber> marginal;  ///< sum over omega of W_n(sigma v omega)
  PadicNumber z_lower;
  PadicNumber z;
};

// Enumerates every configuration of V_n as sigma on V_{n-1} followed by omega
// on W_n; requires n >= 1.
LevelSums level_sums(const CayleyTree& tree, const BoundaryFields& fields, const PadicNumber& J,
                     int n, bool with_lower) {
  require_small_coupling(J);
  if (with_lower) require_fields(tree, fields, n - 1);
  require_fields(tree, fields, n);
  const int q = fields.q;
  const std::size_t sigmas = checked_count(q, tree.vertex_count(n - 1), std::size_t{1} << 24);
  checked_count(q, tree.vertex_count(n), std::size_t{1} << 28);
  const std::vector<PadicNumber> e = exp_table(J, tree.vertex_count(n));
  const prime_t p = J.prime();

  const std::size_t leaf0 = tree.level_begin(n);
  const std::size_t leaves = tree.level_size(n);
  const std::size_t low0 = tree.level_begin(n - 1);

  LevelSums out;
  out.z_lower = PadicNumber::zero(p);
  out.z = PadicNumber::zero(p);
  std::vector<int> spins(tree.vertex_count(n), 1);
  for (std::size_t id = 0; id < sigmas; ++id) {
    Configuration sigma = configuration_from_index(tree, n - 1, q, id);
    std::copy(sigma.spins.begin(), sigma.spins.end(), spins.begin());
    const long base = agreeing_edges(tree, sigma.spins, n - 1);

    PadicNumber lower = e[static_cast<std::size_t>(base)];
    if (with_lower) {
      for (std::size_t x = low0; x < tree.vertex_count(n - 1); ++x)
        lower = lower * fields.h[x][static_cast<std::size_t>(sigma.spins[x] - 1)];
    }

    // depth first over the leaves carrying the partial product and the
    // number of agreeing leaf edges
    PadicNumber sum = PadicNumber::zero(p);
    auto dfs = [&](auto&& self, std::size_t i, const PadicNumber& product, long agree) -> void {
      if (i == leaves) {
        sum = sum + e[static_cast<std::size_t>(base + agree)] * product;
        return;
      }
      const std::size_t y = leaf0 + i;
      const int parent_spin = spins[tree.parent(y)];
      for (int j = 1; j <= q; ++j) {
        const PadicNumber& h = fields.h[y][static_cast<std::size_t>(j - 1)];
        self(self, i + 1, i == 0 ? h : product * h, agree + (j == parent_spin ? 1 : 0));
      }
    };
    dfs(dfs, 0, PadicNumber::one(p, 1), 0);

    out.z_lower = out.z_lower + lower;
    out.z = out.z + sum;
    out.lower.push_back(std::move(lower));
    out.marginal.push_back(std::move(sum));
  }
  return out;
}

PadicNumber level_zero_partition(const BoundaryFields& fields) {
  PadicNumber z = PadicNumber::zero(fields.h.at(0).at(0).prime());
  for (const auto& v : fields.h.at(0)) z = z + v;
  return z;
}

PadicNumber checked_divide(const PadicNumber& a, const PadicNumber& z) {
  if (z.is_zero()) throw PrecisionExhausted("the partition function", z.valuation());
  return a / z;
}

}  // namespace

PadicNumber hamiltonian(const CayleyTree& tree, const Configuration& config, const PadicNumber& J) {
  require_small_coupling(J);
  validate(tree, config, std::numeric_limits<int>::max());
  const long count = agreeing_edges(tree, config.spins, config.level);
  return J * PadicNumber::from_integer(count, J.prime(), precision_of(J));
}

std::vector<PadicNumber> BoundaryFields::reduced(std::size_t x) const {
  const auto& v = at(x);
  const PadicNumber& last = v.at(static_cast<std::size_t>(q - 1));
  if (last.is_zero()) throw PrecisionExhausted("h_q at a vertex", last.valuation());
  std::vector<PadicNumber> out;
  for (int i = 0; i + 1 < q; ++i) out.push_back(v[static_cast<std::size_t>(i)] / last);
  return out;
}

PadicNumber weight(const CayleyTree& tree, const BoundaryFields& fields, const PadicNumber& J,
                   const Configuration& config) {
  validate(tree, config, fields.q);
  require_fields(tree, fields, config.level);
  PadicNumber w = exp_p(hamiltonian(tree, config, J), precision_of(J));
  for (std::size_t x = tree.level_begin(config.level); x < tree.vertex_count(config.level); ++x)
    w = w * fields.h[x][static_cast<std::size_t>(config.spins[x] - 1)];
  return w;
}

PadicNumber mu_n(const CayleyTree& tree, const BoundaryFields& fields, const PadicNumber& J,
                 const Configuration& config) {
  PadicNumber w = weight(tree, fields, J, config);
  PadicNumber z = config.level == 0 ? level_zero_partition(fields)
                                    : level_sums(tree, fields, J, config.level, false).z;
  return checked_divide(w, z);
}

LevelMeasure level_measure(const CayleyTree& tree, const BoundaryFields& fields,
                           const PadicNumber& J, int n) {
  const std::size_t count = checked_count(fields.q, tree.vertex_count(n), std::size_t{1} << 20);
  LevelMeasure out;
  out.level = n;
  std::vector<PadicNumber> weights;
  out.partition = PadicNumber::zero(J.prime());
  require_small_coupling(J);
  require_fields(tree, fields, n);
  const std::vector<PadicNumber> e = exp_table(J, tree.vertex_count(n));
  for (std::size_t id = 0; id < count; ++id) {
    Configuration c = configuration_from_index(tree, n, fields.q, id);
    PadicNumber w = e[static_cast<std::size_t>(agreeing_edges(tree, c.spins, n))];
    for (std::size_t x = tree.level_begin(n); x < tree.vertex_count(n); ++x)
      w = w * fields.h[x][static_cast<std::size_t>(c.spins[x] - 1)];
    out.partition = out.partition + w;
    weights.push_back(std::move(w));
  }
  for (auto& w : weights) out.values.push_back(checked_divide(w, out.partition));
  return out;
}

CompatibilityReport check_compatibility(const CayleyTree& tree, const BoundaryFields& fields,
                                        const PadicNumber& J, int n) {
  if (n < 1 || n > tree.levels()) throw std::invalid_argument("compatibility level outside 1..levels");
  LevelSums sums = level_sums(tree, fields, J, n, true);
  CompatibilityReport report;
  report.level = n;
  for (std::size_t id = 0; id < sums.lower.size(); ++id) {
    PadicNumber marginal = checked_divide(sums.marginal[id], sums.z);
    PadicNumber lower = checked_divide(sums.lower[id], sums.z_lower);
    ++report.configurations_checked;
    for (const PadicNumber* v : {&marginal, &lower})
      if (!v->is_zero()) report.min_valuation = std::min(report.min_valuation, v->valuation());
    if (report.ok && !agrees(marginal, lower)) {
      report.ok = false;
      report.witness = configuration_from_index(tree, n - 1, fields.q, id);
      report.witness_values = std::make_pair(marginal, lower);
    }
  }
  return report;
}

std::vector<PadicNumber> recursion_F(const std::vector<PadicNumber>& xhat,
                                     const PadicNumber& theta) {
  if (xhat.empty()) throw std::invalid_argument("recursion needs q >= 2");
  const prime_t p = theta.prime();
  const int n = theta.precision();
  PadicNumber sum = PadicNumber::zero(p);
  for (const auto& x : xhat) sum = sum + x;
  PadicNumber den = sum + theta;
  if (den.is_exact_zero()) throw PoleError("sum x_j + theta = 0 in the boundary recursion");
  if (den.is_zero()) throw PrecisionExhausted("sum x_j + theta", den.valuation());
  const PadicNumber one = PadicNumber::one(p, n);
  const PadicNumber theta_minus_one = theta - one;
  std::vector<PadicNumber> out;
  for (const auto& x : xhat) out.push_back((theta_minus_one * x + sum + one) / den);
  return out;
}

BoundaryFields fields_from_recursion(const CayleyTree& tree, const PadicNumber& theta,
                                     const std::vector<std::vector<PadicNumber>>& leaves) {
  const int top = tree.levels();
  if (leaves.size() != tree.level_size(top)) {
    throw std::invalid_argument("need one field per vertex of W_" + std::to_string(top));
  }
  BoundaryFields f;
  f.q = static_cast<int>(leaves.front().size());
  if (f.q < 2) throw std::invalid_argument("fields need q >= 2");
  f.h.resize(tree.vertex_count());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i].size() != static_cast<std::size_t>(f.q)) {
      throw std::invalid_argument("leaf fields of unequal length");
    }
    f.h[tree.level_begin(top) + i] = leaves[i];
  }
  const PadicNumber one = PadicNumber::one(theta.prime(), theta.precision());
  for (std::size_t x = tree.level_begin(top); x-- > 0;) {
    std::vector<PadicNumber> hat;
    for (std::size_t y : tree.successors(x)) {
      std::vector<PadicNumber> fy = recursion_F(f.reduced(y), theta);
      if (hat.empty()) {
        hat = std::move(fy);
      } else {
        for (std::size_t i = 0; i < hat.size(); ++i) hat[i] = hat[i] * fy[i];
      }
    }
    hat.push_back(one);
    f.h[x] = std::move(hat);
  }
  return f;
}

std::vector<LineField> ti_and_periodic_fields(const MapParams& params, int period) {
  if (period < 1) throw std::invalid_argument("period must be at least 1");
  RepellerCertificate cert = certify(params);
  if (cert.verdict != Verdict::full_shift_chaos) {
    throw std::invalid_argument("fixed and periodic points need a full-shift-chaos certificate");
  }
  const CoveringX& cover = *cert.covering;
  std::vector<LineField> out;
  out.push_back(LineField{"fixed point 1", {params.one()}});
  for (const auto& pp : periodic_points(params, cover, 1)) {
    out.push_back(LineField{"fixed point in ball " + pp.word.to_string(), {pp.point}});
  }
  if (period == 1) return out;

  auto rotate = [](const SymbolWord& w, std::size_t j) {
    SymbolWord r;
    for (std::size_t i = 0; i < w.size(); ++i) r.symbols.push_back(w[(i + j) % w.size()]);
    return r;
  };
  const std::size_t n = static_cast<std::size_t>(period);
  for (const auto& pp : periodic_points(params, cover, period)) {
    // keep one primitive word per cycle: the least rotation, with no smaller period
    bool keep = true;
    for (std::size_t j = 1; j < n && keep; ++j) {
      SymbolWord r = rotate(pp.word, j);
      if (r < pp.word || r == pp.word) keep = false;
    }
    if (!keep) continue;
    // orbit point h_j = f^j(x) has the itinerary rotated by j; values[m] = h_{-m}
    LineField field{"period-" + std::to_string(period) + " cycle " + pp.word.to_string(), {}};
    for (std::size_t m = 0; m < n; ++m) {
      field.values.push_back(
          point_from_itinerary(params, cover, rotate(pp.word, (n - m) % n), true));
    }
    out.push_back(std::move(field));
  }
  return out;
}

BoundaryFields line_fields(const CayleyTree& tree, const LineField& field, int q) {
  if (q < 2) throw std::invalid_argument("fields need q >= 2");
  if (field.values.empty()) throw std::invalid_argument("line field without values");
  BoundaryFields f;
  f.q = q;
  const PadicNumber& v0 = field.values.front();
  const PadicNumber one = PadicNumber::one(v0.prime(), v0.precision());
  for (std::size_t x = 0; x < tree.vertex_count(); ++x) {
    const std::size_t m = static_cast<std::size_t>(tree.level(x)) % field.values.size();
    std::vector<PadicNumber> h(static_cast<std::size_t>(q), one);
    h[0] = field.values[m];
    f.h.push_back(std::move(h));
  }
  return f;
}

}  // namespace padic
