#pragma once

#include "json.hpp"

#include "padic/gibbs.hpp"
#include "padic/potts_bethe.hpp"
#include "padic/repeller.hpp"
#include "padic/roots.hpp"
#include "padic/subshift.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

// A p-adic number is {"valuation": v, "digits": [d0, d1, ...], "precision": n}
// with x = p^v (d0 + d1 p + ...) + O(p^(v+n)). A value that is zero at
// precision has empty digits, precision 0 and "valuation" the bound A of
// x = O(p^A); the exact zero has "valuation": null.
void to_json(Json& j, const PadicNumber& x);
void to_json(Json& j, const SolSet& s);
void to_json(Json& j, const Ball& b);
void to_json(Json& j, const SymbolWord& w);  // integer array, 1-based symbols
void to_json(Json& j, const IncidenceMatrix& a);
void to_json(Json& j, const CoveringX& c);
void to_json(Json& j, const Witness& w);
void to_json(Json& j, const CheckRecord& c);
void to_json(Json& j, const RepellerCertificate& c);
void to_json(Json& j, const ScalingReport& r);
void to_json(Json& j, const ContractionReport& r);
void to_json(Json& j, const Cylinder& c);
void to_json(Json& j, const JuliaApprox& a);
void to_json(Json& j, const PeriodicPoint& p);
void to_json(Json& j, const ConjugacyReport& r);
void to_json(Json& j, const FixedPointReport& r);
void to_json(Json& j, const OrbitConvergence& r);
void to_json(Json& j, const Configuration& c);
void to_json(Json& j, const CompatibilityReport& r);
void to_json(Json& j, const LineField& f);

}  // namespace padic
