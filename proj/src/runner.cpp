#include "arckit/runner.hpp"

#include <fstream>
#include <sstream>

#include "arckit/certificate_doc.hpp"
#include "arckit/curvesel.hpp"
#include "arckit/elimination.hpp"
#include "arckit/errors.hpp"
#include "arckit/jets.hpp"
#include "arckit/script.hpp"
#include "arckit/weierstrass.hpp"

namespace arckit {

namespace {

struct Session {
    const Script& script;
    const RunOptions& opts;
    RingPtr ring;

    std::optional<std::uint32_t> resolve_base(const std::string& name) const {
        for (std::uint32_t i = 0; i < ring->num_vars(); ++i)
            if (ring->name(i) == name) return i;
        return std::nullopt;
    }

    Series bind_in_base(const PolyExprPtr& e) const {
        return bind_poly(e, ring, [this](const std::string& n) { return resolve_base(n); });
    }

    const IdealDecl& ideal(const std::string& name) const {
        const IdealDecl* d = script.find_ideal(name);
        if (!d) throw Error("undeclared ideal '" + name + "'");
        return *d;
    }

    IdealPresentation bind_ideal(const std::string& name) const {
        std::vector<Series> gens;
        for (const auto& p : ideal(name).polys) gens.push_back(bind_in_base(p));
        return IdealPresentation(ring, std::move(gens));
    }

    Point bind_point(const std::string& name) const {
        const PointDecl* d = script.find_point(name);
        if (!d) throw Error("undeclared point '" + name + "'");
        if (d->coords.size() != ring->num_vars())
            throw DimensionMismatch("point '" + name +
                                    "' does not match the ring dimension");
        std::vector<Rational> coords;
        for (const auto& c : d->coords) coords.push_back(ring->field().reduce(c));
        return Point(std::move(coords));
    }

    std::uint32_t variable_index(const std::string& name) const {
        auto idx = resolve_base(name);
        if (!idx) throw Error("unknown variable '" + name + "'");
        return *idx;
    }

    std::string options_echo() const {
        return "search-bound=" + std::to_string(opts.search_bound) + " max-steps=" +
               (opts.max_steps ? std::to_string(*opts.max_steps)
                               : std::string("default"));
    }

    CurveSelectOptions select_options() const {
        CurveSelectOptions o;
        o.search_bound = opts.search_bound;
        o.max_steps = opts.max_steps;
        return o;
    }
};

RunResult exec_curvesel(const Session& s, const CmdCurvesel& cmd) {
    IdealPresentation n_set = s.bind_ideal(cmd.n);
    IdealPresentation z_set = s.bind_ideal(cmd.z);
    Point base = s.bind_point(cmd.point);

    CurveSelection sel =
        curve_select(n_set, z_set, base, cmd.order, s.select_options());

    std::string echo = "curvesel " + cmd.n + " " + cmd.z + " " + cmd.point +
                       " order " + std::to_string(cmd.order);
    CertificateDocument doc = make_certificate_document(
        echo, s.options_echo(), n_set, z_set, base, sel.arc, sel.certificate);

    std::ostringstream report;
    report << "arc found (ramification " << sel.arc.ramification << ")\n";
    for (std::uint32_t i = 0; i < s.ring->num_vars(); ++i)
        report << "  " << s.ring->name(i) << "(s) = "
               << sel.arc.components[i].to_string() << "\n";
    report << "witness: Z[" << sel.certificate.witness_index << "] pulls back to "
           << sel.certificate.witness_series.to_string() << "\n";
    report << "chain: " << sel.certificate.chain_summary << "\n";
    return RunResult{0, report.str(), serialize_certificate(doc)};
}

RunResult exec_wdiv(const Session& s, const CmdWdiv& cmd) {
    Series g = s.bind_in_base(cmd.g);
    Series f = s.bind_in_base(cmd.f);
    std::uint32_t d = s.variable_index(cmd.var);
    auto k = regular_order(f, d);
    if (!k) throw NotRegular("divisor is not regular in " + cmd.var);
    WDivision div = wdivide(g, f, d);
    Series residue = g - (div.quotient * f + div.remainder.to_series());
    std::ostringstream report;
    report << "k: " << *k << "\n";
    report << "q: " << div.quotient.to_string() << "\n";
    report << "r: " << div.remainder.to_series().to_string() << "\n";
    report << "g - (q*f + r): " << residue.to_string() << " (mod degree "
           << s.ring->trunc_order() + 1 << ")\n";
    if (!residue.is_zero()) return RunResult{1, report.str(), std::nullopt};
    return RunResult{0, report.str(), std::nullopt};
}

RunResult exec_wprep(const Session& s, const CmdWprep& cmd) {
    Series f = s.bind_in_base(cmd.f);
    std::uint32_t d = s.variable_index(cmd.var);
    WeierstrassFactorization wf = wprepare(f, d);
    Series residue = f - wf.unit * wf.wpoly.to_series();
    std::ostringstream report;
    report << "k: " << wf.order_k << "\n";
    report << "unit: " << wf.unit.to_string() << "\n";
    report << "wpoly: " << wf.wpoly.to_series().to_string() << "\n";
    report << "f - unit*wpoly: " << residue.to_string() << " (mod degree "
           << s.ring->trunc_order() + 1 << ")\n";
    return RunResult{residue.is_zero() ? 0 : 1, report.str(), std::nullopt};
}

RunResult exec_eliminate(const Session& s, const CmdEliminate& cmd) {
    IdealPresentation ideal = s.bind_ideal(cmd.ideal);
    std::uint32_t d = s.variable_index(cmd.var);
    if (!ideal.has_nonzero_generator())
        throw Error("ideal '" + cmd.ideal + "' has no nonzero generator");

    std::size_t chosen = 0;
    std::uint32_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < ideal.generators().size(); ++i) {
        auto o = ideal.generators()[i].order();
        if (o && (!have || *o < best)) {
            have = true;
            best = *o;
            chosen = i;
        }
    }
    RegularizeResult reg =
        regularize(ideal.generators()[chosen], d, s.opts.search_bound);
    IdealPresentation moved =
        reg.change.is_identity() ? ideal : ideal.transformed(reg.change);
    WeierstrassFactorization prep = wprepare(moved.generators()[chosen], d);
    EliminationResult res = eliminate_variable(moved, prep, chosen);

    std::ostringstream report;
    report << "pivot generator: index " << chosen << ", order " << best << "\n";
    report << "change: " << (reg.change.is_identity() ? "identity" : "mixing") << "\n";
    report << "weierstrass degree: " << prep.order_k << "\n";
    if (res.image.is_whole_space()) {
        report << "image: whole base (no generators)\n";
    } else {
        for (const auto& e : res.emitted)
            report << "image generator (from index " << e.source_index
                   << "): " << e.value.to_string() << "  [membership "
                   << (e.certificate.identity_checked ? "checked" : "UNCHECKED")
                   << "]\n";
    }
    if (res.dropped_truncated > 0)
        report << "dropped modulo truncation: " << res.dropped_truncated << "\n";
    return RunResult{0, report.str(), std::nullopt};
}

RunResult exec_jets(const Session& s, const CmdJets& cmd) {
    std::vector<Series> gens;
    for (const auto& p : s.ideal(cmd.ideal).polys) gens.push_back(s.bind_in_base(p));
    JetRing jets(s.ring, cmd.order);
    IdealPresentation eqs = jet_equations(jets, gens);
    std::ostringstream report;
    report << "jet ring: " << jets.ring()->num_vars() << " coordinates (level "
           << cmd.order << ")\n";
    std::size_t idx = 0;
    for (const auto& e : eqs.generators())
        report << "eq[" << idx++ << "]: " << e.to_string() << "\n";
    return RunResult{0, report.str(), std::nullopt};
}

RunResult exec_arcsel(const Session& s, const CmdArcsel& cmd) {
    std::vector<Series> variety;
    for (const auto& p : s.ideal(cmd.variety).polys)
        variety.push_back(s.bind_in_base(p));
    JetRing jets(s.ring, cmd.level);

    auto resolve_jet = [&](const std::string& name) -> std::optional<std::uint32_t> {
        for (std::uint32_t i = 0; i < jets.ring()->num_vars(); ++i)
            if (jets.ring()->name(i) == name) return i;
        return std::nullopt;
    };
    auto bind_jet_list = [&](const std::string& ideal_name) {
        std::vector<Series> out;
        for (const auto& p : s.ideal(ideal_name).polys)
            out.push_back(bind_poly(p, jets.ring(), resolve_jet));
        return out;
    };
    std::vector<Series> n_extra = bind_jet_list(cmd.n_extra);
    std::vector<Series> z_extra = bind_jet_list(cmd.z_extra);

    const ArcDecl* gamma_decl = s.script.find_arc(cmd.gamma);
    if (!gamma_decl) throw Error("undeclared arc '" + cmd.gamma + "'");
    if (gamma_decl->polys_in_t.size() != s.ring->num_vars())
        throw DimensionMismatch("arc '" + cmd.gamma +
                                "' needs one component per variable");
    RingPtr t_ring = make_ring(s.ring->field(), {"t"}, cmd.level);
    std::vector<std::vector<Rational>> gamma_coeffs;
    for (const auto& p : gamma_decl->polys_in_t) {
        Series component = bind_poly(p, t_ring, [&](const std::string& n)
                                                    -> std::optional<std::uint32_t> {
            if (n == "t") return 0u;
            return std::nullopt;
        });
        std::vector<Rational> row;
        for (std::uint32_t j = 0; j <= cmd.level; ++j)
            row.push_back(component.univariate_coeff(j));
        gamma_coeffs.push_back(std::move(row));
    }
    TruncatedArcPoint gamma(jets, variety, std::move(gamma_coeffs));

    ArcSelection sel = arc_curve_select(jets, variety, n_extra, z_extra, gamma,
                                        cmd.order, s.select_options());

    std::string echo = "arcsel " + cmd.variety + " " + cmd.n_extra + " " +
                       cmd.z_extra + " " + cmd.gamma + " level " +
                       std::to_string(cmd.level) + " order " +
                       std::to_string(cmd.order);
    CertificateDocument doc = make_certificate_document(
        echo, s.options_echo(), sel.n_full, sel.z_full, gamma.as_point(jets),
        sel.jet_arc, sel.certificate);

    std::ostringstream report;
    report << "arc family found (ramification " << sel.family.ramification << ")\n";
    for (std::uint32_t i = 0; i < s.ring->num_vars(); ++i)
        report << "  " << sel.family.component_string(i, s.ring->names()) << "\n";
    report << "witness: Z[" << sel.certificate.witness_index << "] pulls back to "
           << sel.certificate.witness_series.to_string() << "\n";
    report << "chain: " << sel.certificate.chain_summary << "\n";
    return RunResult{0, report.str(), serialize_certificate(doc)};
}

RunResult exec_verify(const CmdVerify& cmd) {
    std::ifstream in(cmd.path);
    if (!in) throw Error("cannot open certificate '" + cmd.path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    CertificateDocument doc = parse_certificate(buffer.str());
    RebuiltCertificate rc = rebuild_certificate(doc);
    VerifyReport report =
        verify_certificate(rc.n_set, rc.z_set, rc.base, rc.arc, rc.cert);
    return RunResult{report.all_pass ? 0 : 1, report.to_string(), std::nullopt};
}

bool is_input_error(const std::exception& e) {
    return dynamic_cast<const MismatchedRing*>(&e) ||
           dynamic_cast<const DimensionMismatch*>(&e) ||
           dynamic_cast<const NotPolynomial*>(&e) ||
           dynamic_cast<const ParseError*>(&e);
}

}  // namespace

RunResult run_script_text(const std::string& text, const RunOptions& options) {
    Script script;
    try {
        script = parse_script(text);
    } catch (const ParseError& e) {
        std::string msg = "parse error at line " + std::to_string(e.line) +
                          ", column " + std::to_string(e.column) + ": " + e.what() +
                          " (expected " + e.expected + ")\n";
        return RunResult{2, msg, std::nullopt};
    }

    try {
        Session session{script, options,
                        make_ring(script.ring.field, script.ring.vars,
                                  script.ring.trunc)};
        return std::visit(
            [&](const auto& cmd) -> RunResult {
                using T = std::decay_t<decltype(cmd)>;
                if constexpr (std::is_same_v<T, CmdCurvesel>)
                    return exec_curvesel(session, cmd);
                else if constexpr (std::is_same_v<T, CmdWdiv>)
                    return exec_wdiv(session, cmd);
                else if constexpr (std::is_same_v<T, CmdWprep>)
                    return exec_wprep(session, cmd);
                else if constexpr (std::is_same_v<T, CmdEliminate>)
                    return exec_eliminate(session, cmd);
                else if constexpr (std::is_same_v<T, CmdJets>)
                    return exec_jets(session, cmd);
                else if constexpr (std::is_same_v<T, CmdArcsel>)
                    return exec_arcsel(session, cmd);
                else
                    return exec_verify(cmd);
            },
            script.command);
    } catch (const ParseError& e) {
        return RunResult{2, std::string("input error: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const PointNotOnN& e) {
        return RunResult{1, std::string("PointNotOnN: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const GammaNotOnN& e) {
        return RunResult{1, std::string("GammaNotOnN: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const ZIsEverything& e) {
        return RunResult{1, std::string("ZIsEverything: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const NoBranchAvoidsZ& e) {
        return RunResult{1, std::string("NoBranchAvoidsZ: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const AlgebraicExtensionRequired& e) {
        return RunResult{1,
                         std::string("AlgebraicExtensionRequired: ") + e.what() +
                             "\n  obstruction: " + e.obstruction + "\n",
                         std::nullopt};
    } catch (const TruncationTooCoarse& e) {
        return RunResult{1, std::string("TruncationTooCoarse: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const SearchExhausted& e) {
        return RunResult{1, std::string("SearchExhausted: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const BudgetExhausted& e) {
        return RunResult{1, std::string("BudgetExhausted: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const NotRegular& e) {
        return RunResult{1, std::string("NotRegular: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const ZeroSeries& e) {
        return RunResult{1, std::string("ZeroSeries: ") + e.what() + "\n",
                         std::nullopt};
    } catch (const Error& e) {
        if (is_input_error(e))
            return RunResult{2, std::string("input error: ") + e.what() + "\n",
                             std::nullopt};
        return RunResult{2, std::string("error: ") + e.what() + "\n", std::nullopt};
    }
}

}  // namespace arckit
