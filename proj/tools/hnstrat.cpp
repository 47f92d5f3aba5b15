// Batch front-end: every computation as a subcommand with JSON input/output.

#include "hnstrat/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using hnstrat::io::json;

struct CommonOpts {
    std::string input_path;
    std::string inline_json;
    std::string format = "json";
    unsigned long budget = 1000000;
    std::vector<std::uint32_t> primes = {2, 3, 5, 7, 11, 13};
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
    if (with_input) {
        cmd->add_option("--input", o.input_path, "read the request JSON from a file");
        cmd->add_option("--inline", o.inline_json, "request JSON given inline");
    }
    cmd->add_option("--format", o.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--budget", o.budget, "enumeration budget");
    cmd->add_option("--primes", o.primes, "candidate primes for the multi-prime oracle")
        ->delimiter(',');
    cmd->add_option("--seed", o.seed, "seed for sampled competitor sets");
}

json load_input(const CommonOpts& o) {
    if (!o.inline_json.empty()) return json::parse(o.inline_json);
    if (o.input_path.empty()) throw std::invalid_argument("missing --input or --inline");
    std::ifstream in(o.input_path);
    if (!in) throw std::ios_base::failure("cannot open " + o.input_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::ios_base::failure("read error on " + o.input_path);
    return json::parse(buf.str());
}

void emit(const json& out, const CommonOpts& o, const std::string& text) {
    if (o.format == "json")
        std::cout << out.dump() << "\n";
    else
        std::cout << text;
}

std::string order_name(hnstrat::RudakovOrder o) {
    switch (o) {
        case hnstrat::RudakovOrder::precedes: return "precedes";
        case hnstrat::RudakovOrder::succeeds: return "succeeds";
        default: return "equivalent";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Hesselink and Harder-Narasimhan stratification computations"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* torus = app.add_subcommand("torus-strata", "stratify torus weight sets");
    add_common(torus, o);

    auto* grass = app.add_subcommand("grassmann", "rank stratification of a matrix under GL_r");
    std::string matrix_arg;
    grass->add_option("--matrix", matrix_arg, "matrix as a JSON array of rows of rationals");
    add_common(grass, o);

    auto* qhn = app.add_subcommand("quiver-hn", "Harder-Narasimhan filtration of a representation");
    add_common(qhn, o);

    auto* vqh = app.add_subcommand("verify-quiver-hesselink",
                                   "check lambda_gamma against sampled competitors");
    long bound = 3, conjugates = 100;
    vqh->add_option("--bound", bound, "competitor entry bound B");
    vqh->add_option("--conjugates", conjugates, "random basis changes");
    add_common(vqh, o);

    auto* horder = app.add_subcommand("hilbert-order", "compare polynomials in the Rudakov order");
    std::string p_arg, q_arg;
    horder->add_option("--p", p_arg, "first polynomial, ascending coefficients")->required();
    horder->add_option("--q", q_arg, "second polynomial")->required();
    add_common(horder, o, false);

    auto* beta = app.add_subcommand("beta-index", "Hesselink index of a sheaf HN type");
    long n_arg = 0, m_arg = 0;
    beta->add_option("--n", n_arg, "twist n")->required();
    beta->add_option("--m", m_arg, "twist m")->required();
    add_common(beta, o);

    auto* coll = app.add_subcommand("collisions", "search HN types with equal beta index");
    long deg_bound = 1, coeff_bound = 3;
    int parts_bound = 2;
    coll->add_option("--n", n_arg, "twist n")->required();
    coll->add_option("--m", m_arg, "twist m")->required();
    coll->add_option("--deg", deg_bound, "degree bound");
    coll->add_option("--coeff", coeff_bound, "binomial coefficient bound");
    coll->add_option("--parts", parts_bound, "maximal number of parts");
    add_common(coll, o, false);

    auto* ackv = app.add_subcommand("ack-verify", "compare sheaf and quiver HN types under Phi");
    ackv->add_option("--n", n_arg, "twist n")->required();
    ackv->add_option("--m", m_arg, "twist m")->required();
    add_common(ackv, o);

    auto* ackg = app.add_subcommand("ack-grid", "run ack-verify over a grid of (n, m)");
    long n_max = 6, m_max = 14;
    ackg->add_option("--n-max", n_max, "largest n");
    ackg->add_option("--m-max", m_max, "largest m");
    add_common(ackg, o);

    auto* multi = app.add_subcommand("multi-vertex", "chain-quiver parameters and images");
    add_common(multi, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // malformed request, nothing was computed
    }

    if (torus->parsed()) {
        auto in = hnstrat::io::torus_input_from_json(load_input(o));
        auto labels = hnstrat::stratify_weight_sets(in.points, in.ctx);
        std::ostringstream text;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            text << "point " << i << ": ";
            if (labels[i].semistable) {
                text << "semistable\n";
            } else {
                text << "lambda=(";
                for (std::size_t k = 0; k < labels[i].lambda.size(); ++k)
                    text << (k ? "," : "") << labels[i].lambda[k].get_str();
                text << ") pairing=" << hnstrat::rat_to_string(labels[i].value.pairing)
                     << " norm_sq=" << hnstrat::rat_to_string(labels[i].value.norm_sq) << "\n";
            }
        }
        emit(hnstrat::io::strata_json(labels), o, text.str());
        return 0;
    }
    if (grass->parsed()) {
        json jm;
        if (!matrix_arg.empty())
            jm = json::parse(matrix_arg);
        else
            jm = load_input(o).at("matrix");
        if (!jm.is_array() || jm.empty()) throw std::invalid_argument("matrix must be nonempty");
        hnstrat::Mat m(jm.size(), jm.at(0).size());
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (jm.at(r).size() != m.cols) throw std::invalid_argument("ragged matrix");
            for (std::size_t c = 0; c < m.cols; ++c)
                m.at(r, c) = hnstrat::io::rat_from_json(jm.at(r).at(c));
        }
        auto s = hnstrat::grassmann_stratum(m);
        json out;
        out["rank"] = s.k;
        std::ostringstream text;
        if (s.semistable) {
            out["status"] = "semistable";
            text << "rank " << s.k << ": semistable\n";
        } else {
            out["lambda"] = hnstrat::io::intvec_json(s.lambda);
            text << "rank " << s.k << ": lambda=(";
            for (std::size_t k = 0; k < s.lambda.size(); ++k)
                text << (k ? "," : "") << s.lambda[k].get_str();
            text << ")\n";
        }
        emit(out, o, text.str());
        return 0;
    }
    if (qhn->parsed() || vqh->parsed()) {
        json in = load_input(o);
        auto rep = hnstrat::io::rep_from_json(in);
        const hnstrat::DimVector& dims = rep.q ? rep.q->dims : rep.f->dims;
        auto sp = hnstrat::io::stability_from_json(in, dims);
        if (qhn->parsed()) {
            json out;
            std::vector<hnstrat::DimVector> gamma;
            if (rep.q) {
                auto r = hnstrat::hn_filtration_quiver(*rep.q, sp, o.budget);
                out = hnstrat::io::hn_result_json(r);
                gamma = r.gamma;
            } else {
                auto r = hnstrat::hn_filtration_quiver(*rep.f, sp, o.budget);
                out = hnstrat::io::hn_result_json(r);
                gamma = r.gamma;
            }
            std::ostringstream text;
            text << "gamma:";
            for (const auto& d : gamma) {
                text << " (";
                for (std::size_t k = 0; k < d.size(); ++k) text << (k ? "," : "") << d[k];
                text << ")";
            }
            text << "\n";
            emit(out, o, text.str());
        } else {
            hnstrat::HesselinkReport r =
                rep.q ? hnstrat::verify_hn_equals_hesselink(*rep.q, sp, bound, conjugates, o.seed,
                                                            o.budget)
                      : hnstrat::verify_hn_equals_hesselink(*rep.f, sp, bound, conjugates, o.seed,
                                                            o.budget);
            std::ostringstream text;
            if (r.semistable)
                text << "semistable, M >= 0: " << (r.ok ? "PASS" : "FAIL");
            else
                text << "dominance: " << (r.ok ? "PASS" : "FAIL");
            text << " (" << r.competitors << " competitors, " << r.with_limit << " with limit, "
                 << r.violations << " violations)\n";
            emit(hnstrat::io::hesselink_report_json(r), o, text.str());
            if (!r.ok) return 2;
        }
        return 0;
    }
    if (horder->parsed()) {
        auto p = hnstrat::io::poly_from_json(json::parse(p_arg));
        auto q = hnstrat::io::poly_from_json(json::parse(q_arg));
        const auto ord = hnstrat::rudakov_cmp(p, q);
        emit(json{{"order", order_name(ord)}}, o, order_name(ord) + "\n");
        return 0;
    }
    if (beta->parsed()) {
        json in = load_input(o);
        auto tau = hnstrat::io::hn_type_from_json(in.contains("tau") ? in.at("tau") : in);
        auto b = hnstrat::beta_nm(tau, n_arg, m_arg);
        json out;
        out["beta"] = hnstrat::io::quot_index_json(b);
        std::ostringstream text;
        text << "r = (";
        for (std::size_t i = 0; i < b.r.size(); ++i)
            text << (i ? "," : "") << hnstrat::rat_to_string(b.r[i]);
        text << "), l = (";
        for (std::size_t i = 0; i < b.l.size(); ++i) text << (i ? "," : "") << b.l[i].get_str();
        text << ")" << (b.merged ? " [merged]" : "") << "\n";
        try {
            out["gamma"] = hnstrat::io::kronecker_type_json(hnstrat::gamma_of_beta(b, m_arg));
        } catch (const std::domain_error&) {
            out["gamma"] = nullptr;
        }
        emit(out, o, text.str());
        return 0;
    }
    if (coll->parsed()) {
        auto pairs = hnstrat::collision_search(n_arg, m_arg, static_cast<int>(deg_bound),
                                               coeff_bound, parts_bound, o.budget);
        std::ostringstream text;
        if (pairs.empty())
            text << "no collisions within bounds\n";
        else
            text << pairs.size() << " collision(s) within bounds\n";
        emit(hnstrat::io::collisions_json(pairs), o, text.str());
        return 0;
    }
    if (ackv->parsed()) {
        auto e = hnstrat::io::sheaf_from_json(load_input(o));
        auto r = hnstrat::verify_ack_hn(e, n_arg, m_arg, o.primes, o.budget);
        std::ostringstream text;
        text << (r.match ? "MATCH" : "MISMATCH") << " at (n,m)=(" << r.n << "," << r.m << ")\n";
        emit(hnstrat::io::ack_report_json(r), o, text.str());
        return 0;
    }
    if (ackg->parsed()) {
        auto e = hnstrat::io::sheaf_from_json(load_input(o));
        auto r = hnstrat::threshold_grid(e, n_max, m_max, o.primes, o.budget);
        std::ostringstream text;
        if (r.minimal_match)
            text << "minimal match at (n,m)=(" << r.minimal_match->first << ","
                 << r.minimal_match->second << ")\n";
        else
            text << "no matching cell in the grid\n";
        emit(hnstrat::io::grid_report_json(r), o, text.str());
        return 0;
    }
    if (multi->parsed()) {
        json in = load_input(o);
        std::vector<long> ns;
        for (const auto& x : in.at("ns")) ns.push_back(x.get<long>());
        json out;
        std::ostringstream text;
        if (in.contains("P")) {
            auto P = hnstrat::io::poly_from_json(in.at("P"));
            auto mp = hnstrat::multi_parameters(ns, P);
            out["d"] = hnstrat::io::intvec_json(mp.d);
            out["theta"] = hnstrat::io::intvec_json(mp.theta);
            out["alpha"] = hnstrat::io::intvec_json(mp.alpha);
            text << "d/theta/alpha computed for " << ns.size() << " vertices\n";
        }
        if (in.contains("tau")) {
            auto tau = hnstrat::io::hn_type_from_json(in.at("tau"));
            auto g = hnstrat::gamma_multi(ns, tau);
            json rows = json::array();
            for (const auto& row : g.entries) rows.push_back(hnstrat::io::intvec_json(row));
            out["gamma"] = std::move(rows);
            out["subregular"] = g.subregular;
            text << "gamma has " << g.entries.size() << " blocks"
                 << (g.subregular ? " [subregular]" : "") << "\n";
        }
        if (out.empty()) throw std::invalid_argument("need \"P\" or \"tau\" in the input");
        emit(out, o, text.str());
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::ios_base::failure& ex) {
        std::cerr << "io error: " << ex.what() << "\n";
        return 1;
    } catch (const json::parse_error& ex) {
        std::cerr << "bad input: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
