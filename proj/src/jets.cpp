#include "arckit/jets.hpp"

#include <algorithm>

#include "arckit/errors.hpp"

namespace arckit {

JetRing::JetRing(RingPtr base_ring, std::uint32_t level)
    : base_(std::move(base_ring)), level_(level) {
    const std::uint32_t n = base_->num_vars();
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n) * (level + 1));
    for (std::uint32_t j = 0; j <= level; ++j)
        for (std::uint32_t i = 0; i < n; ++i)
            names.push_back(base_->name(i) + std::to_string(j));
    // the jet equations are polynomials of base-generator degree; keep at
    // least that much room so they stay exact
    std::uint32_t trunc = base_->trunc_order();
    jet_ = make_ring(base_->field(), std::move(names), trunc);
}

std::uint32_t JetRing::flat_index(std::uint32_t base_var, std::uint32_t t_power) const {
    if (base_var >= base_->num_vars() || t_power > level_)
        throw DimensionMismatch("jet coordinate out of range");
    return t_power * base_->num_vars() + base_var;
}

std::string JetRing::coordinate_name(std::uint32_t base_var,
                                     std::uint32_t t_power) const {
    return jet_->name(flat_index(base_var, t_power));
}

IdealPresentation jet_equations(const JetRing& jets,
                                const std::vector<Series>& generators) {
    const RingPtr& base = jets.base();
    const RingPtr& jr = jets.ring();
    const std::uint32_t n = base->num_vars();
    const std::uint32_t M = jets.level();

    for (const auto& h : generators) {
        if (!h.ring()->same_as(*base))
            throw MismatchedRing("variety generator outside the base ring");
        if (!h.is_exact()) throw NotPolynomial("variety generators must be polynomials");
    }

    // generic arc per base variable as a t-jet vector of jet-ring series
    std::vector<std::vector<Series>> generic(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        generic[i].reserve(M + 1);
        for (std::uint32_t j = 0; j <= M; ++j)
            generic[i].push_back(Series::variable(jr, jets.flat_index(i, j)));
    }

    auto jet_mul = [&](const std::vector<Series>& a, const std::vector<Series>& b) {
        std::vector<Series> out(M + 1, Series::zero(jr));
        for (std::uint32_t i = 0; i <= M; ++i) {
            if (a[i].is_zero()) continue;
            for (std::uint32_t j = 0; i + j <= M; ++j) {
                if (b[j].is_zero()) continue;
                out[i + j] = out[i + j] + a[i] * b[j];
            }
        }
        return out;
    };

    // coefficients of t^0..t^M of each generator, t-degree major overall
    std::vector<std::vector<Series>> per_gen;
    per_gen.reserve(generators.size());
    for (const auto& h : generators) {
        std::vector<Series> acc(M + 1, Series::zero(jr));
        for (const auto& [m, c] : h.terms()) {
            std::vector<Series> term(M + 1, Series::zero(jr));
            term[0] = Series::constant(jr, c);
            for (const auto& [var, exp] : m.factors())
                for (std::uint32_t e = 0; e < exp; ++e) term = jet_mul(term, generic[var]);
            for (std::uint32_t j = 0; j <= M; ++j) acc[j] = acc[j] + term[j];
        }
        per_gen.push_back(std::move(acc));
    }

    std::vector<Series> equations;
    equations.reserve(per_gen.size() * (M + 1));
    for (std::uint32_t j = 0; j <= M; ++j)
        for (const auto& acc : per_gen) equations.push_back(acc[j]);
    return IdealPresentation(jr, std::move(equations));
}

TruncatedArcPoint::TruncatedArcPoint(const JetRing& jets,
                                     const std::vector<Series>& base_generators,
                                     std::vector<std::vector<Rational>> coefficients)
    : coeffs_(std::move(coefficients)) {
    const std::uint32_t n = jets.base()->num_vars();
    if (coeffs_.size() != n)
        throw DimensionMismatch("one coefficient list per base variable required");
    for (auto& row : coeffs_) {
        if (row.size() > jets.level() + 1)
            throw DimensionMismatch("arc coefficients beyond the jet level");
        row.resize(jets.level() + 1, Rational(0));
        for (auto& c : row) c = jets.base()->field().reduce(c);
    }
    IdealPresentation eqs = jet_equations(jets, base_generators);
    Point p = as_point(jets);
    for (const auto& e : eqs.generators())
        if (!e.evaluate_point(p).is_zero())
            throw GammaNotOnN("the truncated arc does not satisfy the jet equations");
}

Point TruncatedArcPoint::as_point(const JetRing& jets) const {
    const std::uint32_t n = jets.base()->num_vars();
    std::vector<Rational> flat(jets.ring()->num_vars(), Rational(0));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j <= jets.level(); ++j)
            flat[jets.flat_index(i, j)] = coeffs_[i][j];
    return Point(std::move(flat));
}

std::string ArcFamily::component_string(
    std::uint32_t base_var, const std::vector<std::string>& base_names) const {
    std::string out = base_names.at(base_var) + "(t,s) =";
    bool any = false;
    for (std::size_t j = 0; j < coefficients[base_var].size(); ++j) {
        const Series& c = coefficients[base_var][j];
        if (c.is_zero()) continue;
        out += any ? " + (" : " (";
        any = true;
        out += c.to_string();
        out += ")";
        if (j == 1) out += "*t";
        if (j > 1) out += "*t^" + std::to_string(j);
    }
    if (!any) out += " 0";
    return out;
}

ArcSelection arc_curve_select(const JetRing& jets,
                              const std::vector<Series>& base_generators,
                              const std::vector<Series>& n_extra,
                              const std::vector<Series>& z_extra,
                              const TruncatedArcPoint& gamma,
                              std::uint32_t arc_order,
                              const CurveSelectOptions& options) {
    const RingPtr& jr = jets.ring();
    IdealPresentation jet_eqs = jet_equations(jets, base_generators);

    auto check_ring = [&](const std::vector<Series>& list, const char* what) {
        for (const auto& f : list) {
            if (!f.ring()->same_as(*jr))
                throw MismatchedRing(std::string(what) + " outside the jet ring");
            if (!f.is_exact())
                throw NotPolynomial(std::string(what) + " must be polynomials");
        }
    };
    check_ring(n_extra, "extra N equations");
    check_ring(z_extra, "extra Z equations");

    std::vector<Series> n_all = jet_eqs.generators();
    n_all.insert(n_all.end(), n_extra.begin(), n_extra.end());
    std::vector<Series> z_all = jet_eqs.generators();
    z_all.insert(z_all.end(), z_extra.begin(), z_extra.end());
    IdealPresentation n_full(jr, std::move(n_all));
    IdealPresentation z_full(jr, std::move(z_all));

    Point gp = gamma.as_point(jets);
    for (const auto& f : n_full.generators())
        if (!f.evaluate_point(gp).is_zero())
            throw GammaNotOnN("gamma does not satisfy the assembled N equations");

    CurveSelection sel = curve_select(n_full, z_full, gp, arc_order, options);

    ArcFamily family;
    family.ramification = sel.arc.ramification;
    const std::uint32_t n = jets.base()->num_vars();
    family.coefficients.assign(n, {});
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j <= jets.level(); ++j)
            family.coefficients[i].push_back(sel.arc.components[jets.flat_index(i, j)]);

    return ArcSelection{std::move(family), std::move(sel.arc), std::move(sel.certificate),
                        std::move(n_full), std::move(z_full)};
}

std::string StablePresentationReport::to_string() const {
    std::string out = valid ? "presentation: valid\n" : "presentation: INVALID\n";
    out += "generators: " + std::to_string(generator_count) + "\n";
    out += "support:";
    for (const auto& s : support) out += " " + s;
    out += "\n";
    if (!message.empty()) out += message + "\n";
    return out;
}

StablePresentationReport check_generically_stable_presentation(
    const JetRing& jets, const std::vector<Series>& n_extra) {
    StablePresentationReport report;
    report.generator_count = n_extra.size();
    std::set<std::uint32_t> used;
    for (const auto& f : n_extra) {
        if (!f.ring()->same_as(*jets.ring())) {
            report.valid = false;
            report.message = "equation outside the level-" +
                             std::to_string(jets.level()) + " jet coordinates";
            return report;
        }
        if (!f.is_exact()) {
            report.valid = false;
            report.message = "equation is not a polynomial";
            return report;
        }
        for (const auto& [m, c] : f.terms())
            for (const auto& [var, exp] : m.factors()) used.insert(var);
    }
    for (auto v : used) report.support.push_back(jets.ring()->name(v));
    return report;
}

}  // namespace arckit
