#pragma once

#include "hnstrat/hilbert.hpp"
#include "hnstrat/instability.hpp"
#include "hnstrat/p1sheaf.hpp"
#include "hnstrat/quiver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hnstrat::io {

using nlohmann::json;

// Rationals travel as strings "p/q" (or "p"); integers may also appear as
// JSON numbers on input. No decimal forms.
json rat_json(const Rat& r);
Rat rat_from_json(const json& j);
Int int_from_json(const json& j);
json intvec_json(const IntVec& v);
IntVec intvec_from_json(const json& j);

json poly_json(const HilbertPoly& p);
HilbertPoly poly_from_json(const json& j);
json hn_type_json(const SheafHNType& t);
SheafHNType hn_type_from_json(const json& j);  // plain array of polynomials

struct TorusInput {
    WeightContext ctx;
    std::vector<WeightSet> points;
};
TorusInput torus_input_from_json(const json& j);
json strata_json(const std::vector<StratumLabel>& labels);

struct AnyRep {
    std::optional<RepQ> q;
    std::optional<RepF> f;
};
AnyRep rep_from_json(const json& j);
StabilityPair stability_from_json(const json& j, const DimVector& ambient);

json gamma_json(const std::vector<DimVector>& gamma);
json hn_result_json(const HNResultQ& r);
json hn_result_json(const HNResultF& r);
json hesselink_report_json(const HesselinkReport& r);

SheafP1 sheaf_from_json(const json& j);
json sheaf_json(const SheafP1& e);
json kronecker_type_json(const KroneckerHNType& g);
json ack_report_json(const AckReport& r);
json grid_report_json(const GridReport& r);
json quot_index_json(const QuotIndex& b);
json collisions_json(const std::vector<std::pair<SheafHNType, SheafHNType>>& pairs);

}  // namespace hnstrat::io
