#include "padic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "padic/literal.hpp"
#include "padic/parallel.hpp"
#include "padic/serialize.hpp"

namespace padic::cli {

namespace {

using Row = std::vector<std::string>;

struct Document {
  Json json;
  Row header;
  std::vector<Row> rows;
  int status = kCertified;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const PadicNumber& x) {
  if (x.is_zero()) return x.to_string();
  return x.representative().get_str();
}

std::string cell(const SymbolWord& w) { return w.to_string(); }

std::string cell(bool b) { return b ? "true" : "false"; }

std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

void write(const Document& doc, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < doc.header.size(); ++i) os << (i ? "," : "") << doc.header[i];
    os << '\n';
    for (const Row& r : doc.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << '\n';
    }
  } else {
    os << doc.json.dump(2) << '\n';
  }
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands{"analyze", "sweep",    "orbit",      "itinerary",
                                                 "julia",   "periodic", "gibbs-check"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    throw std::invalid_argument("--format must be json or csv");
  }
  require_odd_prime(cfg.p);
  if (cfg.q < 2) throw std::invalid_argument("--q must be at least 2");
  if (cfg.q % static_cast<long>(cfg.p) == 0) throw std::invalid_argument("p must not divide q");
  if (cfg.k < 1) throw std::invalid_argument("--k must be at least 1");
  if (cfg.precision < 4 || cfg.precision > 4096) {
    throw std::invalid_argument("--precision must lie in 4..4096");
  }
  if (cfg.depth < 0) throw std::invalid_argument("--depth must be nonnegative");
  if (cfg.levels < 1) throw std::invalid_argument("--levels must be at least 1");
  if (cfg.tmin < 1 || cfg.tmax < cfg.tmin) throw std::invalid_argument("need 1 <= --tmin <= --tmax");
}

MapParams make_params(const RunConfig& cfg) {
  return MapParams(cfg.p, cfg.q, cfg.k, parse_literal(cfg.theta, cfg.p, cfg.precision));
}

PadicNumber required_point(const RunConfig& cfg) {
  if (cfg.x.empty()) throw std::invalid_argument(cfg.command + " needs --x");
  return parse_literal(cfg.x, cfg.p, cfg.precision);
}

Json header_json(const MapParams& m) {
  return Json{{"p", m.p()}, {"q", m.q()}, {"k", m.k()}, {"theta", m.theta()}, {"precision", m.precision()}};
}

Row certificate_row(const RepellerCertificate& c) {
  return {std::to_string(c.p),    std::to_string(c.q),     std::to_string(c.k),
          cell(c.theta),          std::to_string(c.s),     std::to_string(c.t),
          std::to_string(c.kappa), cell(c.tau),            cell(c.condition_holds),
          std::string(to_string(c.verdict))};
}

const Row kCertificateHeader{"p", "q", "k", "theta", "s", "t", "kappa", "tau", "condition_holds",
                             "verdict"};

int verdict_status(Verdict v) { return v == Verdict::inconclusive ? kInconclusive : kCertified; }

Document analyze(const RunConfig& cfg) {
  MapParams m = make_params(cfg);
  RepellerCertificate cert = certify(m, CertifyOptions{cfg.samples, cfg.seed});
  Document doc;
  doc.json = cert;
  doc.json["precision"] = m.precision();
  Json fixed = Json::array();
  fixed.push_back(classify_fixed_point(m, m.one()));
  if (cert.verdict == Verdict::full_shift_chaos) {
    for (const auto& pp : periodic_points(m, *cert.covering, 1))
      fixed.push_back(classify_fixed_point(m, pp.point));
  }
  doc.json["fixed_points"] = fixed;
  doc.header = kCertificateHeader;
  doc.rows.push_back(certificate_row(cert));
  doc.status = verdict_status(cert.verdict);
  return doc;
}

Document sweep(const RunConfig& cfg) {
  struct Entry {
    int t;
    long c;
    std::optional<RepellerCertificate> cert;
    std::string error;
  };
  std::vector<Entry> entries;
  for (int t = cfg.tmin; t <= cfg.tmax; ++t)
    for (long c = 1; c < static_cast<long>(cfg.p); ++c) entries.push_back(Entry{t, c, {}, {}});

  parallel_for(entries.size(), [&](std::size_t i) {
    Entry& e = entries[i];
    try {
      PadicNumber theta = PadicNumber::one(cfg.p, cfg.precision) +
                          PadicNumber::from_unit(cfg.p, e.t, mpz_class(e.c), cfg.precision);
      MapParams m(cfg.p, cfg.q, cfg.k, theta);
      e.cert = certify(m, CertifyOptions{cfg.samples, cfg.seed});
    } catch (const std::exception& ex) {
      e.error = ex.what();
    }
  });

  Document doc;
  doc.header = {"t", "c", "theta_literal"};
  doc.header.insert(doc.header.end(), kCertificateHeader.begin(), kCertificateHeader.end());
  doc.header.push_back("error");
  Json rows = Json::array();
  for (const Entry& e : entries) {
    const std::string literal =
        "1+" + std::to_string(cfg.p) + "^" + std::to_string(e.t) + "*" + std::to_string(e.c);
    Json j{{"t", e.t}, {"c", e.c}, {"theta_literal", literal}};
    Row r{std::to_string(e.t), std::to_string(e.c), literal};
    if (e.cert) {
      j["certificate"] = *e.cert;
      Row c = certificate_row(*e.cert);
      r.insert(r.end(), c.begin(), c.end());
      r.push_back("");
    } else {
      j["error"] = e.error;
      r.resize(doc.header.size() - 1);
      r.push_back(e.error);
      doc.status = kError;
    }
    rows.push_back(j);
    doc.rows.push_back(r);
  }
  doc.json = Json{{"p", cfg.p}, {"q", cfg.q}, {"k", cfg.k}, {"precision", cfg.precision},
                  {"tmin", cfg.tmin}, {"tmax", cfg.tmax}, {"entries", rows}};
  return doc;
}

std::optional<CoveringX> try_covering(const MapParams& m) {
  try {
    return build_covering(m);
  } catch (const CoveringUnavailable&) {
    return std::nullopt;
  }
}

Document orbit(const RunConfig& cfg) {
  MapParams m = make_params(cfg);
  PadicNumber z = required_point(cfg);
  auto cover = try_covering(m);
  Document doc;
  doc.header = {"n", "x", "valuation", "region", "ball"};
  Json steps = Json::array();
  for (int n = 0; n <= cfg.depth; ++n) {
    Region r = region(m, z);
    std::optional<int> ball = cover ? cover->locate(z) : std::nullopt;
    Json j{{"n", n}, {"x", z}, {"region", std::string(to_string(r))}};
    j["ball"] = ball ? Json(*ball) : Json(nullptr);
    steps.push_back(j);
    doc.rows.push_back({std::to_string(n), cell(z), z.is_zero() ? "" : std::to_string(z.valuation()),
                        std::string(to_string(r)), cell(ball)});
    if (n < cfg.depth) z = eval(m, z);
  }
  doc.json = header_json(m);
  doc.json["x"] = required_point(cfg);
  doc.json["orbit"] = steps;
  doc.json["convergence_to_one"] =
      converge_to_one(m, required_point(cfg), m.precision() / 2, 4 * m.precision());
  return doc;
}

Document itinerary_command(const RunConfig& cfg) {
  MapParams m = make_params(cfg);
  PadicNumber x = required_point(cfg);
  Document doc;
  doc.json = header_json(m);
  doc.json["x"] = x;
  doc.header = {"length", "word", "escaped_at"};
  auto cover = try_covering(m);
  if (!cover) {
    doc.json["error"] = "no covering: Sol_p is empty or |theta-1|_p >= |q-1|_p";
    doc.status = kInconclusive;
    return doc;
  }
  const int length = std::max(1, cfg.depth);
  try {
    SymbolWord w = itinerary(m, *cover, x, length);
    doc.json["word"] = w;
    doc.json["escaped_at"] = nullptr;
    doc.rows.push_back({std::to_string(length), cell(w), ""});
  } catch (const EscapedAtStep& e) {
    SymbolWord prefix = itinerary(m, *cover, x, e.step());
    doc.json["word"] = prefix;
    doc.json["escaped_at"] = e.step();
    doc.rows.push_back({std::to_string(length), cell(prefix), std::to_string(e.step())});
  }
  return doc;
}

// Emits the certificate as the document when it is not full-shift chaos.
bool need_chaos(const RepellerCertificate& cert, Document& doc, std::ostream& err) {
  if (cert.verdict == Verdict::full_shift_chaos) return true;
  err << "verdict is " << to_string(cert.verdict) << "; no repeller to work with\n";
  doc.json = cert;
  doc.header = kCertificateHeader;
  doc.rows.push_back(certificate_row(cert));
  doc.status = kInconclusive;
  return false;
}

Document julia(const RunConfig& cfg, std::ostream& err) {
  MapParams m = make_params(cfg);
  RepellerCertificate cert = certify(m, CertifyOptions{cfg.samples, cfg.seed});
  Document doc;
  if (!need_chaos(cert, doc, err)) return doc;
  JuliaApprox approx = julia_approx(m, cert, cfg.depth);
  doc.json = header_json(m);
  doc.json["julia"] = approx;
  doc.header = {"word", "center", "radius_exponent"};
  for (const Cylinder& c : approx.cylinders)
    doc.rows.push_back({cell(c.word), cell(c.ball.center), std::to_string(c.ball.radius_exponent)});
  return doc;
}

Document periodic(const RunConfig& cfg, std::ostream& err) {
  MapParams m = make_params(cfg);
  RepellerCertificate cert = certify(m, CertifyOptions{cfg.samples, cfg.seed});
  Document doc;
  if (!need_chaos(cert, doc, err)) return doc;
  const CoveringX& cover = *cert.covering;
  std::vector<PeriodicPoint> points;
  int period = cfg.depth;
  if (!cfg.word.empty()) {
    SymbolWord w = parse_word(cfg.word);
    period = static_cast<int>(w.size());
    PeriodicPoint pp{w, point_from_itinerary(m, cover, w, true), 0};
    pp.residual_exponent = agreement(iterate(m, pp.point, period), pp.point);
    points.push_back(pp);
  } else {
    if (period < 1) throw std::invalid_argument("periodic needs --word or --depth >= 1");
    points = periodic_points(m, cover, period);
  }
  doc.json = header_json(m);
  doc.json["period"] = period;
  Json list = Json::array();
  doc.header = {"word", "point", "residual_exponent", "itinerary"};
  for (const auto& pp : points) {
    Json j = pp;
    SymbolWord h = itinerary(m, cover, pp.point, 2 * period);
    j["itinerary"] = h;
    if (period == 1) j["fixed_point"] = classify_fixed_point(m, pp.point);
    list.push_back(j);
    doc.rows.push_back({cell(pp.word), cell(pp.point), std::to_string(pp.residual_exponent), cell(h)});
  }
  doc.json["points"] = list;
  if (cfg.word.empty()) {
    doc.json["count"] = points.size();
    doc.json["trace_A_n"] = count_words(cert.incidence, period).periodic.get_str();
  }
  return doc;
}

Document gibbs_check(const RunConfig& cfg) {
  const prime_t p = cfg.p;
  const int n = cfg.precision;
  PadicNumber J, theta;
  if (!cfg.coupling.empty()) {
    J = parse_literal(cfg.coupling, p, n);
    theta = exp_p(J, n);
    if (cfg.theta_given && !agrees(theta, parse_literal(cfg.theta, p, n))) {
      throw std::invalid_argument("--theta disagrees with exp_p(--coupling)");
    }
  } else {
    theta = parse_literal(cfg.theta, p, n);
    if (theta.is_zero() || !in_ep(theta)) throw std::invalid_argument("theta must lie in E_p");
    J = log_p(theta);
  }
  MapParams m(p, cfg.q, cfg.k, theta);
  CayleyTree tree = build_tree(static_cast<int>(cfg.k), cfg.levels);
  const int q = static_cast<int>(cfg.q);

  Document doc;
  doc.json = header_json(m);
  doc.json["coupling"] = J;
  doc.json["levels"] = cfg.levels;
  doc.header = {"field", "expected", "level", "ok", "configurations_checked", "min_valuation"};
  Json fields = Json::array();
  bool as_expected = true;

  auto check = [&](const std::string& label, const BoundaryFields& f, bool expect_ok, int from,
                   Json extra) {
    Json entry{{"label", label}, {"expected", expect_ok ? "compatible" : "incompatible"}};
    for (auto& [key, value] : extra.items()) entry[key] = value;
    Json reports = Json::array();
    bool all_ok = true;
    for (int level = from; level <= cfg.levels; ++level) {
      CompatibilityReport r = check_compatibility(tree, f, J, level);
      all_ok = all_ok && r.ok;
      reports.push_back(r);
      doc.rows.push_back({label, expect_ok ? "compatible" : "incompatible", std::to_string(level),
                          cell(r.ok), std::to_string(r.configurations_checked),
                          r.min_valuation == PadicNumber::kUnbounded ? ""
                                                                    : std::to_string(r.min_valuation)});
    }
    entry["compatibility"] = reports;
    if (all_ok != expect_ok) as_expected = false;
    fields.push_back(entry);
  };

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::vector<PadicNumber>> leaves(tree.level_size(cfg.levels));
  for (auto& v : leaves)
    for (int i = 0; i < q; ++i) v.push_back(random_unit(p, n, rng));
  BoundaryFields rec = fields_from_recursion(tree, theta, leaves);
  Json table = Json::array();
  for (int level = 0; level <= cfg.levels; ++level) {
    Json row = Json::array();
    for (std::size_t x = tree.level_begin(level); x < tree.vertex_count(level); ++x)
      row.push_back(rec.reduced(x));
    table.push_back(row);
  }
  check("recursion", rec, true, 1, Json{{"reduced_fields_by_level", table}});

  BoundaryFields bad = rec;
  const std::size_t leaf = tree.level_begin(cfg.levels);
  bad.h[leaf][0] = bad.h[leaf][0] * (PadicNumber::one(p, n) + PadicNumber::from_integer(static_cast<long>(p), p, n));
  check("recursion, one leaf component times (1+p)", bad, false, cfg.levels, Json::object());

  try {
    for (const LineField& lf : ti_and_periodic_fields(m, 2))
      check(lf.label, line_fields(tree, lf, q), true, 1, Json{{"values_by_level", lf.values}});
  } catch (const std::invalid_argument& e) {
    doc.json["line_fields"] = std::string("skipped: ") + e.what();
  }
  doc.json["fields"] = fields;

  // small measure tables for level 1
  std::size_t configs = 1;
  for (std::size_t i = 0; i < tree.vertex_count(1) && configs <= 256; ++i) configs *= static_cast<std::size_t>(q);
  if (configs <= 256) {
    LevelMeasure lm = level_measure(tree, rec, J, 1);
    Json mu = Json::array();
    for (std::size_t id = 0; id < lm.values.size(); ++id)
      mu.push_back(Json{{"spins", configuration_from_index(tree, 1, q, id).spins}, {"mu", lm.values[id]}});
    doc.json["mu_level_1"] = Json{{"partition", lm.partition}, {"values", mu}};
  }
  doc.json["as_expected"] = as_expected;
  doc.status = as_expected ? kCertified : kInconclusive;
  return doc;
}

Document dispatch(const RunConfig& cfg, std::ostream& err) {
  if (cfg.command == "analyze") return analyze(cfg);
  if (cfg.command == "sweep") return sweep(cfg);
  if (cfg.command == "orbit") return orbit(cfg);
  if (cfg.command == "itinerary") return itinerary_command(cfg);
  if (cfg.command == "julia") return julia(cfg, err);
  if (cfg.command == "periodic") return periodic(cfg, err);
  return gibbs_check(cfg);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    Document doc = dispatch(config, err);
    if (config.out.empty()) {
      write(doc, config, out);
    } else {
      std::ofstream file(config.out);
      if (!file) throw std::runtime_error("cannot open " + config.out);
      write(doc, config, file);
    }
    return doc.status;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "; try --precision " << 2 * config.precision << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kError;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"p-adic Potts-Bethe dynamics: chaos certificates, Julia sets, Gibbs checks",
               "padic-dyn"};
  app.add_option("command", cfg.command,
                 "analyze | sweep | orbit | itinerary | julia | periodic | gibbs-check")
      ->required();
  app.add_option("--p", cfg.p, "odd prime")->capture_default_str();
  app.add_option("--q", cfg.q, "number of spin values, p must not divide q")->capture_default_str();
  app.add_option("--k", cfg.k, "order of the Cayley tree")->capture_default_str();
  app.add_option("--theta", cfg.theta, "theta in E_p: rational or 1+p^t*u form")->capture_default_str();
  app.add_option("--precision", cfg.precision, "digits N")->capture_default_str();
  app.add_option("--seed", cfg.seed)->capture_default_str();
  app.add_option("--samples", cfg.samples, "random points per ball")->capture_default_str();
  app.add_option("--depth", cfg.depth, "iterations, itinerary length, Julia depth or period")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "json or csv")->capture_default_str();
  app.add_option("--out", cfg.out, "write to a file instead of standard output");
  app.add_option("--levels", cfg.levels, "tree levels for gibbs-check")->capture_default_str();
  app.add_option("--coupling", cfg.coupling, "J with theta = exp_p(J); default J = log_p(theta)");
  app.add_option("--word", cfg.word, "itinerary word such as 1,2");
  app.add_option("--x", cfg.x, "starting point for orbit and itinerary");
  app.add_option("--tmin", cfg.tmin, "sweep: smallest t in theta = 1 + p^t c")->capture_default_str();
  app.add_option("--tmax", cfg.tmax, "sweep: largest t")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }
  cfg.theta_given = app.count("--theta") > 0;
  return run(cfg, out, err);
}

}  // namespace padic::cli
