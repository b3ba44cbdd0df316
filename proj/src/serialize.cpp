#include "padic/serialize.hpp"

namespace padic {

void to_json(Json& j, const PadicNumber& x) {
  j = Json::object();
  if (x.is_exact_zero()) {
    j["valuation"] = nullptr;
  } else {
    j["valuation"] = x.valuation();
  }
  j["digits"] = x.is_zero() ? std::vector<unsigned long>{} : x.digits();
  j["precision"] = x.is_zero() ? 0 : x.precision();
}

void to_json(Json& j, const SolSet& s) {
  j = Json{{"p", s.p}, {"q", s.q},         {"k", s.k},
           {"s", s.s}, {"scale_ok", s.scale_ok}, {"residues", s.residues},
           {"kappa", s.kappa()}};
}

void to_json(Json& j, const Ball& b) {
  j = Json{{"center", b.center}, {"radius_exponent", b.radius_exponent}};
}

void to_json(Json& j, const SymbolWord& w) { j = w.symbols; }

void to_json(Json& j, const IncidenceMatrix& a) { j = a.rows(); }

void to_json(Json& j, const CoveringX& c) {
  j = Json{{"radius_exponent", c.radius_exponent}, {"balls", c.balls}, {"sol", c.sol}};
  if (!c.eta.empty()) j["eta"] = c.eta;
  Json roots = Json::array();
  for (const auto& r : c.root_index) {
    if (r) {
      roots.push_back(*r);
    } else {
      roots.push_back(nullptr);
    }
  }
  j["root_index"] = roots;
}

void to_json(Json& j, const Witness& w) { j = Json{{"what", w.what}, {"points", w.points}}; }

void to_json(Json& j, const CheckRecord& c) {
  j = Json{{"name", c.name}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
}

void to_json(Json& j, const RepellerCertificate& c) {
  j = Json{{"p", c.p},
           {"q", c.q},
           {"k", c.k},
           {"theta", c.theta},
           {"s", c.s},
           {"t", c.t},
           {"kappa", c.kappa}};
  if (c.tau) {
    j["tau"] = *c.tau;
  } else {
    j["tau"] = nullptr;
  }
  j["condition_holds"] = c.condition_holds;
  j["preimage_inside"] = c.preimage_inside;
  j["incidence"] = c.incidence;
  j["transitive"] = c.transitive;
  j["verdict"] = std::string(to_string(c.verdict));
  Json w{{"checks", c.checks}, {"counterexamples", c.witnesses}};
  if (c.covering) w["covering"] = *c.covering;
  j["witnesses"] = w;
}

void to_json(Json& j, const ScalingReport& r) {
  j = Json{{"expected_exponent", r.expected_exponent},
           {"pairs_per_ball", r.pairs_per_ball},
           {"observed_exponent", r.observed_exponent},
           {"ok", r.ok}};
  if (r.witness) j["witness"] = *r.witness;
}

void to_json(Json& j, const ContractionReport& r) {
  j = Json{{"expected_exponent", r.expected_exponent},
           {"pairs_checked", r.pairs_checked},
           {"ep_images_checked", r.ep_images_checked},
           {"b1_images_checked", r.b1_images_checked},
           {"ok", r.ok}};
  if (!r.ok) {
    j["failure"] = r.failure;
    if (r.witness) j["witness"] = {r.witness->first, r.witness->second};
  }
}

void to_json(Json& j, const Cylinder& c) {
  j = Json{{"word", c.word}, {"center", c.ball.center}, {"radius_exponent", c.ball.radius_exponent}};
}

void to_json(Json& j, const JuliaApprox& a) {
  j = Json{{"depth", a.depth}, {"count", a.cylinders.size()}, {"cylinders", a.cylinders}};
}

void to_json(Json& j, const PeriodicPoint& p) {
  j = Json{{"word", p.word}, {"point", p.point}, {"residual_exponent", p.residual_exponent}};
}

void to_json(Json& j, const ConjugacyReport& r) {
  j = Json{{"pairs_checked", r.pairs_checked}, {"orbits_checked", r.orbits_checked}, {"ok", r.ok}};
  if (!r.ok) j["failure"] = r.failure;
  if (r.witness) j["witness"] = *r.witness;
}

void to_json(Json& j, const FixedPointReport& r) {
  j = Json{{"point", r.point},
           {"multiplier", r.multiplier},
           {"multiplier_valuation", r.multiplier_valuation},
           {"residual_exponent", r.residual_exponent},
           {"class", std::string(to_string(r.cls))}};
}

void to_json(Json& j, const OrbitConvergence& r) {
  j = Json{{"converged", r.converged}, {"steps", r.steps}};
  if (r.entered_ep_at) {
    j["entered_ep_at"] = *r.entered_ep_at;
  } else {
    j["entered_ep_at"] = nullptr;
  }
  j["final_agreement"] = r.final_agreement;
}

void to_json(Json& j, const Configuration& c) {
  j = Json{{"level", c.level}, {"spins", c.spins}};
}

void to_json(Json& j, const CompatibilityReport& r) {
  j = Json{{"level", r.level}, {"ok", r.ok}, {"configurations_checked", r.configurations_checked}};
  if (r.min_valuation == PadicNumber::kUnbounded) {
    j["min_valuation"] = nullptr;
  } else {
    j["min_valuation"] = r.min_valuation;
  }
  if (r.witness) {
    j["witness"] = *r.witness;
    j["witness_values"] = {r.witness_values->first, r.witness_values->second};
  }
}

void to_json(Json& j, const LineField& f) { j = Json{{"label", f.label}, {"values", f.values}}; }

}  // namespace padic
