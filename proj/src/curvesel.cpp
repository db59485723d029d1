#include "arckit/curvesel.hpp"

#include <algorithm>

#include "arckit/errors.hpp"
#include "arckit/puiseux.hpp"

namespace arckit {

namespace {

long rank_to_value(std::uint32_t r) {
    if (r == 0) return 0;
    return (r % 2 == 1) ? static_cast<long>((r + 1) / 2) : -static_cast<long>(r / 2);
}

bool advance_odometer(std::vector<std::uint32_t>& ranks, std::uint32_t max_rank) {
    for (std::size_t pos = ranks.size(); pos > 0;) {
        --pos;
        if (ranks[pos] < max_rank) {
            ++ranks[pos];
            std::fill(ranks.begin() + pos + 1, ranks.end(), 0);
            return true;
        }
        ranks[pos] = 0;
    }
    return false;
}

}  // namespace

namespace {

// enumerate full-length direction vectors v supported on base_vars with
// g_{k0}(v) != 0, in the fixed order; visit returns true to stop
template <typename Visit>
bool enumerate_lines(const IdealPresentation& z_image,
                     const std::vector<std::uint32_t>& base_vars,
                     std::uint32_t search_bound, std::size_t& generator_index,
                     Visit visit) {
    if (!z_image.has_nonzero_generator())
        throw ZIsEverything("projected Z has no nonzero generator");
    if (base_vars.empty())
        throw NoBranchAvoidsZ(
            "projection eliminated every variable; no line exists in the base");

    // minimal-order generator, ties by position
    std::size_t gi = 0;
    std::uint32_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < z_image.generators().size(); ++i) {
        auto o = z_image.generators()[i].order();
        if (!o) continue;
        if (!have || *o < best) {
            have = true;
            best = *o;
            gi = i;
        }
    }
    generator_index = gi;
    const Series& g = z_image.generators()[gi];
    Series form = g.homogeneous_component(best);
    const Field& F = g.ring()->field();
    const std::uint32_t n = g.ring()->num_vars();

    std::vector<std::uint32_t> ranks(base_vars.size(), 0);
    for (std::uint32_t norm = 1; norm <= search_bound; ++norm) {
        const std::uint32_t max_rank = 2 * norm;
        std::fill(ranks.begin(), ranks.end(), 0);
        do {
            std::uint32_t vnorm = 0;
            for (auto r : ranks)
                vnorm = std::max<std::uint32_t>(
                    vnorm, static_cast<std::uint32_t>(std::labs(rank_to_value(r))));
            if (vnorm != norm) continue;
            std::vector<Rational> v(n, Rational(0));
            for (std::size_t i = 0; i < base_vars.size(); ++i)
                v[base_vars[i]] = F.from_long(rank_to_value(ranks[i]));
            if (F.is_zero(form.evaluate_point(Point(v)))) continue;
            if (visit(v)) return true;
        } while (advance_odometer(ranks, max_rank));
    }
    return false;
}

}  // namespace

SelectedLine select_line(const IdealPresentation& z_image,
                         const std::vector<std::uint32_t>& base_vars,
                         std::uint32_t search_bound) {
    std::size_t gi = 0;
    std::vector<Rational> found;
    bool ok = enumerate_lines(z_image, base_vars, search_bound, gi,
                              [&](const std::vector<Rational>& v) {
                                  found = v;
                                  return true;
                              });
    if (!ok)
        throw SearchExhausted("no line direction within max-norm " +
                              std::to_string(search_bound));
    return SelectedLine{std::move(found), gi};
}

// ---------------------------------------------------------------------------
// curve_select
// ---------------------------------------------------------------------------

namespace {

struct BranchState {
    std::vector<Series> components;  // in the coordinates of the current step
    std::uint32_t ram = 1;
};

// Collected while searching; used to report the deepest failure honestly.
struct SearchDiary {
    std::size_t deepest_step = 0;
    std::string deepest_note;
    std::optional<std::string> algebraic_obstruction;
    bool truncation_failure = false;
    bool reached_final_checks = false;

    void note(std::size_t step, const std::string& msg) {
        if (step >= deepest_step) {
            deepest_step = step;
            deepest_note = msg;
        }
    }
};

class LiftSearch {
  public:
    LiftSearch(const ProjectionChain& chain, const IdealPresentation& n_translated,
               const IdealPresentation& z_translated, RingPtr s_ring,
               const CurveSelectOptions& opts)
        : chain_(chain),
          n_(n_translated),
          z_(z_translated),
          s_ring_(std::move(s_ring)),
          opts_(opts) {}

    // Depth-first over the reversed chain; returns the first branch whose
    // translated arc annihilates every N-generator and leaves some
    // Z-generator alive, in the deterministic branch order.
    std::optional<BranchState> run(BranchState start, SearchDiary& diary) {
        return descend(std::move(start), chain_.steps.size(), diary);
    }

  private:
    std::optional<BranchState> descend(BranchState st, std::size_t remaining,
                                       SearchDiary& diary) {
        if (remaining == 0) return finish(std::move(st), diary);
        const ProjectionStep& step = chain_.steps[remaining - 1];
        const std::size_t depth = chain_.steps.size() - remaining;

        // pull the monic coefficients back along the arc so far
        const PolyInVar& wp = step.prep.wpoly;
        std::vector<Series> coeffs;
        coeffs.reserve(wp.coeffs().size());
        for (const auto& c : wp.coeffs()) {
            for (const auto& [m, cf] : c.terms())
                if (m.involves(step.var))
                    throw Error("prepared coefficient touches its own variable");
            coeffs.push_back(c.substitute(st.components));
        }

        PuiseuxOptions popts;
        popts.max_ramification =
            std::max<std::uint32_t>(1, opts_.max_ramification / st.ram);
        PuiseuxResult lifted = puiseux_lift(coeffs, popts);
        for (const auto& fail : lifted.failures) {
            if (fail.kind == PuiseuxFailure::Kind::algebraic_extension) {
                if (!diary.algebraic_obstruction)
                    diary.algebraic_obstruction = fail.characteristic_poly;
            } else {
                diary.truncation_failure = true;
            }
            diary.note(depth, fail.message);
        }
        if (lifted.roots.empty())
            diary.note(depth, "no liftable branch at this step");

        for (const auto& root : lifted.roots) {
            BranchState child;
            child.ram = st.ram * root.ramification;
            child.components.reserve(st.components.size());
            for (const auto& c : st.components)
                child.components.push_back(c.ramified(root.ramification));
            child.components[step.var] = root.root;
            // back out of this step's coordinates
            child.components = step.change.apply_to_components(child.components);
            auto found = descend(std::move(child), remaining - 1, diary);
            if (found) return found;
        }
        return std::nullopt;
    }

    std::optional<BranchState> finish(BranchState st, SearchDiary& diary) {
        const std::size_t depth = chain_.steps.size();
        diary.reached_final_checks = true;
        // every generator of (translated) N must die along the arc
        for (const auto& f : n_.generators()) {
            Series pulled = f.substitute(st.components);
            if (!pulled.is_zero()) {
                diary.note(depth, "a generator of N survives along the branch");
                return std::nullopt;
            }
        }
        for (const auto& gz : z_.generators()) {
            if (!gz.substitute(st.components).is_zero()) return st;  // witness exists
        }
        diary.note(depth, "every generator of Z vanishes along the branch");
        return std::nullopt;
    }

    const ProjectionChain& chain_;
    const IdealPresentation& n_;
    const IdealPresentation& z_;
    RingPtr s_ring_;
    CurveSelectOptions opts_;
};

}  // namespace

CurveSelection curve_select(const IdealPresentation& n_set,
                            const IdealPresentation& z_set, const Point& base,
                            std::uint32_t arc_order,
                            const CurveSelectOptions& options) {
    RingPtr ring = n_set.ring();
    if (!ring->same_as(*z_set.ring()))
        throw MismatchedRing("N and Z live in different rings");
    const std::uint32_t n = ring->num_vars();
    if (base.size() != n) throw DimensionMismatch("base point has the wrong length");
    if (arc_order == 0)
        throw DimensionMismatch("arc order must be at least 1");

    for (const auto& f : n_set.generators()) {
        if (!f.is_exact())
            throw NotPolynomial("generators of N must be exact polynomials");
        if (!f.evaluate_point(base).is_zero())
            throw PointNotOnN("the base point does not satisfy every generator of N");
    }
    for (const auto& g : z_set.generators())
        if (!g.is_exact())
            throw NotPolynomial("generators of Z must be exact polynomials");

    // move the base point to the origin
    auto translate_all = [&](const IdealPresentation& p) {
        std::vector<Series> out;
        out.reserve(p.generators().size());
        for (const auto& f : p.generators()) out.push_back(f.translate(base));
        return IdealPresentation(ring, std::move(out));
    };
    IdealPresentation n0 = translate_all(n_set);
    IdealPresentation z0 = translate_all(z_set);

    ChainOptions copts;
    copts.search_bound = options.search_bound;
    copts.max_steps = options.max_steps;
    ProjectionChain chain = project_chain(n0, z0, copts);

    // lines are part of the backtracking: directions come in the fixed order
    // and the first one whose lift survives every check wins
    RingPtr s_ring = make_ring(ring->field(), {"s"}, arc_order);
    Series s_var = Series::variable(s_ring, 0);
    LiftSearch search(chain, n0, z0, s_ring, options);
    SearchDiary diary;
    std::optional<BranchState> found;
    std::size_t lines_tried = 0;
    std::size_t line_generator = 0;
    enumerate_lines(chain.image_Z, chain.final_base_vars, options.search_bound,
                    line_generator, [&](const std::vector<Rational>& direction) {
                        if (lines_tried >= options.max_line_candidates) return true;
                        ++lines_tried;
                        BranchState start;
                        start.components.assign(n, Series::zero(s_ring));
                        for (auto v : chain.final_base_vars)
                            start.components[v] = s_var.scaled(direction[v]);
                        found = search.run(std::move(start), diary);
                        return found.has_value();
                    });
    if (lines_tried == 0)
        throw SearchExhausted("no line direction within max-norm " +
                              std::to_string(options.search_bound));
    if (!found) {
        // a branch that reached the final checks means the geometry, not the
        // field, refused the certificate
        if (diary.algebraic_obstruction && !diary.reached_final_checks)
            throw AlgebraicExtensionRequired(
                "a lift needs a root outside " + ring->field().to_string(),
                *diary.algebraic_obstruction);
        std::string msg =
            "no branch yields a certificate at arc order " + std::to_string(arc_order) +
            " (tried " + std::to_string(lines_tried) +
            " line directions; deepest failure at lift step " +
            std::to_string(diary.deepest_step) + ": " +
            (diary.deepest_note.empty() ? "none" : diary.deepest_note) + ")";
        if (diary.truncation_failure)
            msg += "; some branches were unresolvable at this truncation";
        throw NoBranchAvoidsZ(msg);
    }

    // translate back to the original coordinates
    Arc arc;
    arc.s_ring = s_ring;
    arc.ramification = found->ram;
    arc.components.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
        arc.components.push_back(found->components[i] +
                                 Series::constant(s_ring, base[i]));

    Certificate cert;
    cert.base_point = base;
    cert.trunc_order = ring->trunc_order();
    cert.arc_order = arc_order;
    cert.chain_summary = chain.digest(*ring);

    bool nonconstant = false;
    for (std::uint32_t i = 0; i < n; ++i)
        nonconstant = nonconstant || !found->components[i].is_zero();
    if (!nonconstant) throw Error("selected branch degenerated to a constant arc");

    for (const auto& f : n_set.generators()) {
        Series pulled = f.substitute(arc.components, /*strict=*/false);
        if (!pulled.is_zero())
            throw Error("internal: accepted branch fails an N-generator");
        cert.vanishing_orders.push_back(std::nullopt);
    }

    std::optional<std::uint32_t> best_order;
    for (std::size_t j = 0; j < z_set.generators().size(); ++j) {
        Series pulled = z_set.generators()[j].substitute(arc.components, false);
        auto o = pulled.order();
        if (!o) continue;
        if (!best_order || *o < *best_order) {
            best_order = o;
            cert.witness_index = static_cast<std::uint32_t>(j);
            cert.witness_series = pulled;
        }
    }
    if (!best_order) throw Error("internal: accepted branch lost its witness");

    return CurveSelection{std::move(arc), std::move(cert), std::move(chain)};
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

void VerifyReport::add(const std::string& name, bool pass, const std::string& detail) {
    checks.push_back(VerifyCheck{name, pass, detail});
    all_pass = all_pass && pass;
}

std::string VerifyReport::to_string() const {
    std::string out;
    for (const auto& c : checks) {
        out += (c.pass ? "pass " : "FAIL ") + c.name;
        if (!c.detail.empty()) out += ": " + c.detail;
        out += "\n";
    }
    out += all_pass ? "verification passed\n" : "verification FAILED\n";
    return out;
}

VerifyReport verify_certificate(const IdealPresentation& n_set,
                                const IdealPresentation& z_set, const Point& base,
                                const Arc& arc, const Certificate& cert) {
    VerifyReport report;
    const std::uint32_t n = n_set.ring()->num_vars();

    bool shape = arc.components.size() == n && arc.s_ring != nullptr;
    if (shape)
        for (const auto& c : arc.components)
            shape = shape && c.ring()->same_as(*arc.s_ring);
    report.add("arc-shape", shape);
    if (!shape) return report;

    bool at_base = base.size() == n;
    for (std::uint32_t i = 0; i < n && at_base; ++i)
        at_base = arc.components[i].constant_term() == base[i];
    report.add("base-point", at_base, "arc(0) equals the base point");

    bool moving = false;
    for (std::uint32_t i = 0; i < n; ++i) {
        Series tail = arc.components[i] -
                      Series::constant(arc.s_ring, arc.components[i].constant_term());
        moving = moving || !tail.is_zero();
    }
    report.add("non-constant", moving);

    bool orders_listed = cert.vanishing_orders.size() == n_set.generators().size();
    report.add("vanishing-claims", orders_listed,
               "one vanishing order per generator of N");
    for (std::size_t i = 0; i < n_set.generators().size(); ++i) {
        Series pulled =
            n_set.generators()[i].substitute(arc.components, /*strict=*/false);
        bool dies = pulled.is_zero();
        bool claimed = orders_listed ? !cert.vanishing_orders[i].has_value() : false;
        report.add("vanishing N[" + std::to_string(i) + "]", dies && claimed,
                   dies ? "zero modulo s^" + std::to_string(cert.arc_order + 1)
                        : "pullback " + pulled.to_string());
    }

    bool witness_in_range = cert.witness_index < z_set.generators().size();
    report.add("witness-index", witness_in_range);
    if (witness_in_range) {
        Series pulled = z_set.generators()[cert.witness_index].substitute(
            arc.components, /*strict=*/false);
        report.add("witness-match", pulled == cert.witness_series,
                   "stored witness equals the recomputed pullback");
        report.add("witness-nonzero", !pulled.is_zero(),
                   pulled.is_zero() ? "witness vanishes at this order"
                                    : pulled.to_string());
    }
    return report;
}

}  // namespace arckit
