#include "hnstrat/json_io.hpp"

namespace hnstrat::io {

json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw std::invalid_argument("expected rational string or integer");
}

Int int_from_json(const json& j) {
    const Rat r = rat_from_json(j);
    if (!is_integer(r)) throw std::invalid_argument("expected an integer");
    return r.get_num();
}

json intvec_json(const IntVec& v) {
    json out = json::array();
    for (const Int& x : v) {
        if (!x.fits_slong_p()) throw std::domain_error("integer too large for JSON output");
        out.push_back(x.get_si());
    }
    return out;
}

IntVec intvec_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array");
    IntVec out;
    for (const auto& x : j) out.push_back(int_from_json(x));
    return out;
}

json poly_json(const HilbertPoly& p) {
    json out = json::array();
    for (const Rat& c : p.coeffs) out.push_back(rat_json(c));
    return out;
}

HilbertPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be a coefficient array");
    RatVec coeffs;
    for (const auto& x : j) coeffs.push_back(rat_from_json(x));
    return HilbertPoly::from_coeffs(std::move(coeffs));
}

json hn_type_json(const SheafHNType& t) {
    json out;
    out["entries"] = json::array();
    for (const auto& p : t.entries) out["entries"].push_back(poly_json(p));
    out["total"] = poly_json(t.total);
    return out;
}

SheafHNType hn_type_from_json(const json& j) {
    const json& arr = j.is_array() ? j : j.at("entries");
    std::vector<HilbertPoly> entries;
    for (const auto& x : arr) entries.push_back(poly_from_json(x));
    return SheafHNType::make(std::move(entries));
}

TorusInput torus_input_from_json(const json& j) {
    TorusInput in;
    in.ctx.dim = j.at("dim").get<std::size_t>();
    in.ctx.metric = j.contains("metric") ? intvec_from_json(j.at("metric"))
                                         : IntVec(in.ctx.dim, Int(1));
    in.ctx.rho = intvec_from_json(j.at("rho"));
    in.ctx.validate();
    for (const auto& ws : j.at("weight_sets")) {
        std::vector<IntVec> weights;
        for (const auto& w : ws) {
            IntVec v = intvec_from_json(w);
            if (v.size() != in.ctx.dim) throw std::invalid_argument("weight dimension mismatch");
            weights.push_back(std::move(v));
        }
        in.points.push_back(WeightSet::make(std::move(weights)));
    }
    return in;
}

json strata_json(const std::vector<StratumLabel>& labels) {
    json out = json::array();
    for (const auto& lab : labels) {
        json cell;
        if (lab.semistable) {
            cell["status"] = "semistable";
        } else {
            cell["lambda"] = intvec_json(lab.lambda);
            cell["pairing"] = rat_json(lab.value.pairing);
            cell["norm_sq"] = rat_json(lab.value.norm_sq);
        }
        out.push_back(std::move(cell));
    }
    return out;
}

namespace {

Quiver quiver_from_json(const json& j) {
    Quiver q;
    for (const auto& v : j.at("vertices")) q.vertices.push_back(v.get<std::string>());
    for (const auto& a : j.at("arrows"))
        q.arrows.emplace_back(a.at(0).get<std::size_t>(), a.at(1).get<std::size_t>());
    if (j.contains("relations")) {
        for (const auto& r : j.at("relations")) {
            Quiver::Relation rel;
            for (const auto& c : r.at("coeffs")) rel.coeffs.push_back(int_from_json(c));
            for (const auto& p : r.at("paths")) {
                std::vector<std::size_t> path;
                for (const auto& a : p) path.push_back(a.get<std::size_t>());
                rel.paths.push_back(std::move(path));
            }
            q.relations.push_back(std::move(rel));
        }
    }
    return q;
}

DimVector dims_from_json(const json& j, const Quiver& q) {
    DimVector d(q.vertices.size(), 0);
    if (j.is_array()) {
        if (j.size() != q.vertices.size()) throw std::invalid_argument("dims size mismatch");
        for (std::size_t v = 0; v < d.size(); ++v) d[v] = j.at(v).get<long>();
    } else {
        for (std::size_t v = 0; v < q.vertices.size(); ++v) d[v] = j.at(q.vertices[v]).get<long>();
    }
    return d;
}

}  // namespace

AnyRep rep_from_json(const json& j) {
    Quiver q = quiver_from_json(j);
    DimVector dims = dims_from_json(j.at("dims"), q);
    const std::string field = j.value("field", "Q");

    const json& maps = j.at("maps");
    auto map_entry = [&](std::size_t a) -> const json& {
        if (maps.is_array()) return maps.at(a);
        return maps.at(std::to_string(a));
    };

    AnyRep out;
    if (field == "Q") {
        RepQ rep;
        rep.quiver = std::move(q);
        rep.dims = dims;
        for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
            const auto [t, h] = rep.quiver.arrows[a];
            Mat m(static_cast<std::size_t>(dims[h]), static_cast<std::size_t>(dims[t]));
            const json& rows = map_entry(a);
            if (rows.size() != m.rows) throw std::invalid_argument("map row count mismatch");
            for (std::size_t r = 0; r < m.rows; ++r) {
                if (rows.at(r).size() != m.cols) throw std::invalid_argument("map column mismatch");
                for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rat_from_json(rows.at(r).at(c));
            }
            rep.maps.push_back(std::move(m));
        }
        rep.validate();
        out.q = std::move(rep);
        return out;
    }
    if (field.size() < 2 || field[0] != 'F')
        throw std::invalid_argument("field must be \"Q\" or \"F<p>\"");
    const unsigned long p = std::stoul(field.substr(1));
    RepF rep;
    rep.quiver = std::move(q);
    rep.p = static_cast<std::uint32_t>(p);
    rep.dims = dims;
    for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
        const auto [t, h] = rep.quiver.arrows[a];
        FpMat m(rep.p, static_cast<std::size_t>(dims[h]), static_cast<std::size_t>(dims[t]));
        const json& rows = map_entry(a);
        if (rows.size() != m.rows) throw std::invalid_argument("map row count mismatch");
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (rows.at(r).size() != m.cols) throw std::invalid_argument("map column mismatch");
            for (std::size_t c = 0; c < m.cols; ++c) {
                const Int v = int_from_json(rows.at(r).at(c));
                m.at(r, c) = static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), rep.p));
            }
        }
        rep.maps.push_back(std::move(m));
    }
    rep.validate();
    out.f = std::move(rep);
    return out;
}

StabilityPair stability_from_json(const json& j, const DimVector& ambient) {
    StabilityPair sp;
    sp.theta = intvec_from_json(j.at("theta"));
    sp.alpha = j.contains("alpha") ? intvec_from_json(j.at("alpha"))
                                   : IntVec(sp.theta.size(), Int(1));
    sp.ambient = ambient;
    sp.validate();
    return sp;
}

json gamma_json(const std::vector<DimVector>& gamma) {
    json out = json::array();
    for (const auto& d : gamma) {
        json row = json::array();
        for (long x : d) row.push_back(x);
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

json filtration_json(const HNResultQ& r) {
    json out = json::array();
    for (const auto& step : r.filtration) {
        json st = json::array();
        for (const auto& m : step) {
            json rows = json::array();
            for (std::size_t i = 0; i < m.rows; ++i) {
                json row = json::array();
                for (std::size_t c = 0; c < m.cols; ++c) row.push_back(rat_json(m.at(i, c)));
                rows.push_back(std::move(row));
            }
            st.push_back(std::move(rows));
        }
        out.push_back(std::move(st));
    }
    return out;
}

json filtration_json(const HNResultF& r) {
    json out = json::array();
    for (const auto& step : r.filtration) {
        json st = json::array();
        for (const auto& m : step) {
            json rows = json::array();
            for (std::size_t i = 0; i < m.rows; ++i) {
                json row = json::array();
                for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(i, c));
                rows.push_back(std::move(row));
            }
            st.push_back(std::move(rows));
        }
        out.push_back(std::move(st));
    }
    return out;
}

}  // namespace

json hn_result_json(const HNResultQ& r) {
    return json{{"gamma", gamma_json(r.gamma)}, {"filtration", filtration_json(r)}};
}
json hn_result_json(const HNResultF& r) {
    return json{{"gamma", gamma_json(r.gamma)}, {"filtration", filtration_json(r)}};
}

json hesselink_report_json(const HesselinkReport& r) {
    json out;
    out["semistable"] = r.semistable;
    out["gamma"] = gamma_json(r.gamma);
    json lam = json::array();
    for (const auto& v : r.lambda) lam.push_back(intvec_json(v));
    out["lambda"] = std::move(lam);
    if (r.lambda_value) {
        out["pairing"] = rat_json(r.lambda_value->pairing);
        out["norm_sq"] = rat_json(r.lambda_value->norm_sq);
    }
    if (r.best_competitor) {
        out["best_competitor"] = {{"pairing", rat_json(r.best_competitor->pairing)},
                                  {"norm_sq", rat_json(r.best_competitor->norm_sq)}};
    }
    out["competitors"] = r.competitors;
    out["with_limit"] = r.with_limit;
    out["violations"] = r.violations;
    out["ok"] = r.ok;
    return out;
}

SheafP1 sheaf_from_json(const json& j) {
    std::vector<long> degrees;
    for (const auto& a : j.at("line_degrees")) degrees.push_back(a.get<long>());
    std::vector<TorsionBlock> torsion;
    if (j.contains("torsion")) {
        for (const auto& t : j.at("torsion")) {
            TorsionBlock b;
            const json& pt = t.at("point");
            if (pt.is_string() && pt.get<std::string>() == "inf") {
                b.at_infinity = true;
            } else {
                b.point = rat_from_json(pt);
            }
            b.length = t.at("length").get<long>();
            torsion.push_back(std::move(b));
        }
    }
    return SheafP1::make(std::move(degrees), std::move(torsion));
}

json sheaf_json(const SheafP1& e) {
    json out;
    out["line_degrees"] = e.line_degrees;
    json tor = json::array();
    for (const auto& t : e.torsion) {
        json b;
        b["point"] = t.at_infinity ? json("inf") : rat_json(t.point);
        b["length"] = t.length;
        tor.push_back(std::move(b));
    }
    out["torsion"] = std::move(tor);
    return out;
}

json kronecker_type_json(const KroneckerHNType& g) {
    json out = json::array();
    for (const auto& d : g) {
        if (!d[0].fits_slong_p() || !d[1].fits_slong_p())
            throw std::domain_error("dimension too large for JSON output");
        out.push_back(json::array({d[0].get_si(), d[1].get_si()}));
    }
    return out;
}

json ack_report_json(const AckReport& r) {
    json out;
    out["n"] = r.n;
    out["m"] = r.m;
    out["tau"] = hn_type_json(r.tau);
    out["expected_gamma"] = kronecker_type_json(r.expected);
    out["computed_gamma"] = kronecker_type_json(r.computed);
    out["match"] = r.match;
    out["primes"] = r.primes_used;
    return out;
}

json grid_report_json(const GridReport& r) {
    json out;
    json cells = json::array();
    for (const auto& c : r.cells) {
        json cell = {{"n", c.n}, {"m", c.m}, {"status", c.status}};
        if (!c.note.empty()) cell["note"] = c.note;
        cells.push_back(std::move(cell));
    }
    out["cells"] = std::move(cells);
    if (r.minimal_match)
        out["minimal_match"] = json::array({r.minimal_match->first, r.minimal_match->second});
    json nm = json::array();
    for (const auto& [n, m] : r.nonmonotone) nm.push_back(json::array({n, m}));
    out["nonmonotone"] = std::move(nm);
    return out;
}

json quot_index_json(const QuotIndex& b) {
    json out;
    json r = json::array(), l = json::array();
    for (const auto& x : b.r) r.push_back(rat_json(x));
    for (const auto& x : b.l) l.push_back(x.get_si());
    out["r"] = std::move(r);
    out["l"] = std::move(l);
    out["P"] = poly_json(b.P);
    out["n"] = b.n;
    out["merged"] = b.merged;
    return out;
}

json collisions_json(const std::vector<std::pair<SheafHNType, SheafHNType>>& pairs) {
    json out = json::array();
    for (const auto& [a, b] : pairs) {
        json entry;
        entry["first"] = hn_type_json(a);
        entry["second"] = hn_type_json(b);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace hnstrat::io
