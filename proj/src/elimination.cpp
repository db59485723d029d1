#include "arckit/elimination.hpp"

#include <algorithm>
#include <unordered_map>

#include "arckit/errors.hpp"

namespace arckit {

IdealPresentation::IdealPresentation(RingPtr ring, std::vector<Series> gens)
    : ring_(std::move(ring)) {
    for (auto& g : gens) {
        if (!g.ring()->same_as(*ring_))
            throw MismatchedRing("ideal generator in a different ring");
        if (!g.is_zero()) gens_.push_back(std::move(g));
    }
}

IdealPresentation IdealPresentation::transformed(const LinearChange& change) const {
    std::vector<Series> out;
    out.reserve(gens_.size());
    for (const auto& g : gens_) out.push_back(change.apply(g));
    return IdealPresentation(ring_, std::move(out));
}

// ---------------------------------------------------------------------------
// Sylvester matrix and cofactors
// ---------------------------------------------------------------------------

namespace {

// Determinants of submatrices selected by row/column bitmasks, memoized per
// matrix. Laplace expansion along the first selected row.
class MinorTable {
  public:
    explicit MinorTable(const std::vector<std::vector<Series>>& m, RingPtr ring)
        : m_(m), ring_(std::move(ring)) {}

    Series det(std::uint32_t rows, std::uint32_t cols) {
        if (rows == 0) return Series::constant(ring_, Rational(1));
        auto key = (static_cast<std::uint64_t>(rows) << 32) | cols;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        std::uint32_t row = lowest_bit(rows);
        Series acc = Series::zero(ring_);
        bool negate = false;
        std::uint32_t rest_rows = rows & ~(1u << row);
        for (std::uint32_t col = 0; col < 32; ++col) {
            if (!(cols & (1u << col))) continue;
            const Series& entry = m_[row][col];
            if (!entry.is_zero()) {
                Series sub = det(rest_rows, cols & ~(1u << col));
                Series term = entry * sub;
                acc = negate ? acc - term : acc + term;
            }
            negate = !negate;
        }
        memo_.emplace(key, acc);
        return acc;
    }

  private:
    static std::uint32_t lowest_bit(std::uint32_t mask) {
        std::uint32_t i = 0;
        while (!(mask & (1u << i))) ++i;
        return i;
    }

    const std::vector<std::vector<Series>>& m_;
    RingPtr ring_;
    std::unordered_map<std::uint64_t, Series> memo_;
};

}  // namespace

ResultantWithCofactors sylvester_resultant(const PolyInVar& p, const PolyInVar& r) {
    if (p.var() != r.var()) throw DimensionMismatch("resultant variables differ");
    RingPtr ring = p.ring();
    const std::uint32_t var = p.var();
    if (p.is_zero() || r.is_zero()) throw Error("resultant of a zero polynomial");
    const std::uint32_t k = p.degree();
    const std::uint32_t l = r.degree();
    const std::uint32_t n = k + l;
    if (n > 30) throw Error("Sylvester matrix too large (" + std::to_string(n) + ")");

    if (n == 0) {
        // both constants: Res = 1 by convention, cofactors 0, 1/r impossible;
        // callers never reach this (p is monic of degree >= 1).
        throw Error("resultant of two constants");
    }

    // rows 0..l-1: coefficients of x^{l-1-i} * p; rows l..l+k-1: of x^{k-1-j} * r.
    // column c holds the coefficient of x^{n-1-c}.
    std::vector<std::vector<Series>> m(n, std::vector<Series>(n, Series::zero(ring)));
    for (std::uint32_t i = 0; i < l; ++i)
        for (std::uint32_t j = 0; j <= k; ++j) {
            std::uint32_t deg = j + (l - 1 - i);
            m[i][n - 1 - deg] = j < p.coeffs().size() ? p.coeff(j) : Series::zero(ring);
        }
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j <= l; ++j) {
            std::uint32_t deg = j + (k - 1 - i);
            m[l + i][n - 1 - deg] =
                j < r.coeffs().size() ? r.coeff(j) : Series::zero(ring);
        }

    MinorTable minors(m, ring);
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    Series res = minors.det(full, full);

    // Cofactors from the last column of the adjugate: for row j the entry is
    // (-1)^{j+n-1} det(M without row j and the last column).
    const std::uint32_t cols_wo_last = full & ~(1u << (n - 1));
    PolyInVar cof_p(var, ring);
    PolyInVar cof_r(var, ring);
    for (std::uint32_t j = 0; j < n; ++j) {
        Series minor = minors.det(full & ~(1u << j), cols_wo_last);
        if (((j + n - 1) % 2) != 0) minor = -minor;
        if (j < l)
            cof_p.set_coeff(l - 1 - j, std::move(minor));
        else
            cof_r.set_coeff(k - 1 - (j - l), std::move(minor));
    }
    cof_p.trim();
    cof_r.trim();

    // membership identity, checked by expansion in the truncated ring
    PolyInVar combo = cof_p * p + cof_r * r;
    bool ok = true;
    for (std::uint32_t i = 0; i < combo.coeffs().size(); ++i) {
        const Series& c = combo.coeffs()[i];
        if (i == 0 ? !(c == res) : !c.is_zero()) {
            ok = false;
            break;
        }
    }
    if (combo.coeffs().empty()) ok = res.is_zero();
    if (!ok) throw Error("resultant cofactor identity failed");
    return ResultantWithCofactors{std::move(res), std::move(cof_p), std::move(cof_r), ok};
}

EliminationResult eliminate_variable(const IdealPresentation& ideal,
                                     const WeierstrassFactorization& prep,
                                     std::optional<std::size_t> source_index) {
    RingPtr ring = ideal.ring();
    const std::uint32_t d = prep.distinguished_var;
    Series f = prep.unit * prep.wpoly.to_series();  // the prepared generator

    std::vector<Series> image;
    std::vector<ImageGenerator> emitted;
    std::size_t dropped_exact = 0, dropped_trunc = 0;

    for (std::size_t gi = 0; gi < ideal.generators().size(); ++gi) {
        if (source_index && gi == *source_index) continue;
        const Series& g = ideal.generators()[gi];
        WDivision div = wdivide(g, f, d);
        if (div.remainder.is_zero()) {
            // g reduced to zero: a multiple of the prepared generator. The
            // quotient is almost never flagged exact, so this is counted as a
            // truncation drop unless everything in sight stayed exact.
            if (div.quotient.is_exact() && g.is_exact() && f.is_exact())
                ++dropped_exact;
            else
                ++dropped_trunc;
            continue;
        }
        ResultantWithCofactors cert = sylvester_resultant(prep.wpoly, div.remainder);
        if (cert.resultant.involves(d))
            throw Error("elimination output still involves the projected variable");
        if (cert.resultant.is_zero()) {
            if (cert.resultant.is_exact())
                ++dropped_exact;
            else
                ++dropped_trunc;
            continue;
        }
        image.push_back(cert.resultant);
        emitted.push_back(ImageGenerator{gi, cert.resultant, div.remainder, std::move(cert)});
    }
    return EliminationResult{IdealPresentation(ring, std::move(image)),
                             std::move(emitted), dropped_exact, dropped_trunc};
}

Series evaluate_at_zero(const Series& f, const std::set<std::uint32_t>& vars) {
    return f.evaluate_at_zero(vars);
}

std::string ProjectionChain::digest(const Ring& ring) const {
    std::string vars, degrees, changes;
    for (const auto& s : steps) {
        if (!vars.empty()) {
            vars += ",";
            degrees += ",";
            changes += ",";
        }
        vars += ring.name(s.var);
        degrees += std::to_string(s.prep.order_k);
        changes += s.change.is_identity() ? "I" : "M";
    }
    std::string base;
    for (auto v : final_base_vars) {
        if (!base.empty()) base += ",";
        base += ring.name(v);
    }
    return "steps=" + std::to_string(steps.size()) + " eliminated=" + vars +
           " degrees=" + degrees + " changes=" + changes + " base=" + base +
           " caveat=" + (truncation_caveat ? std::string("1") : std::string("0"));
}

ProjectionChain project_chain(const IdealPresentation& n_set,
                              const IdealPresentation& z_set,
                              const ChainOptions& options) {
    if (!n_set.ring()->same_as(*z_set.ring()))
        throw MismatchedRing("N and Z live in different rings");
    RingPtr ring = n_set.ring();
    const std::uint32_t n = ring->num_vars();

    std::vector<std::uint32_t> live;
    for (std::uint32_t i = 0; i < n; ++i) live.push_back(i);

    IdealPresentation cur_n = n_set;
    IdealPresentation cur_z = z_set;
    std::vector<ProjectionStep> steps;
    bool caveat = false;
    std::string note;

    const std::uint32_t budget = options.max_steps
                                     ? *options.max_steps
                                     : std::max<std::uint32_t>(
                                           1, static_cast<std::uint32_t>(
                                                  n_set.generators().size()));

    while (!cur_n.is_whole_space()) {
        if (steps.size() >= budget)
            throw BudgetExhausted("projection exceeded " + std::to_string(budget) +
                                  " steps");
        if (live.empty()) break;  // nothing left to project

        // minimal-order generator, ties broken by position
        std::size_t chosen = 0;
        std::uint32_t best = 0;
        bool have = false;
        for (std::size_t i = 0; i < cur_n.generators().size(); ++i) {
            auto o = cur_n.generators()[i].order();
            if (!o) continue;
            if (!have || *o < best) {
                have = true;
                best = *o;
                chosen = i;
            }
        }
        if (!have) break;  // already whole space modulo truncation
        const Series& f0 = cur_n.generators()[chosen];
        if (best == 0)
            throw Error("generator with nonzero constant term: the set is empty");

        // distinguished variable: first live one already regular of the
        // minimal possible order, otherwise regularize along the first.
        std::optional<std::uint32_t> d_pick;
        for (auto d : live) {
            auto ro = regular_order(f0, d);
            if (ro && *ro == best) {
                d_pick = d;
                break;
            }
        }
        LinearChange change = LinearChange::identity(n, ring->field());
        std::uint32_t d;
        if (d_pick) {
            d = *d_pick;
        } else {
            d = live.front();
            change = regularize(f0, d, options.search_bound, live).change;
        }

        IdealPresentation n_moved = change.is_identity() ? cur_n : cur_n.transformed(change);
        IdealPresentation z_moved = change.is_identity() ? cur_z : cur_z.transformed(change);

        // the chosen generator keeps its index: transformed() preserves order
        // and drops nothing (linear changes preserve the order of a series)
        WeierstrassFactorization prep = wprepare(n_moved.generators()[chosen], d);

        EliminationResult n_elim = eliminate_variable(n_moved, prep, chosen);
        EliminationResult z_elim = eliminate_variable(z_moved, prep, std::nullopt);

        if (n_elim.dropped_truncated > 0 || z_elim.dropped_truncated > 0) {
            caveat = true;
            note = "image generator vanished modulo the truncation at step " +
                   std::to_string(steps.size() + 1);
        }

        steps.push_back(ProjectionStep{change, d, std::move(prep), chosen,
                                       n_elim.dropped_truncated,
                                       std::move(n_elim.emitted),
                                       std::move(z_elim.emitted)});
        live.erase(std::find(live.begin(), live.end(), d));
        cur_n = std::move(n_elim.image);
        cur_z = std::move(z_elim.image);
    }

    if (!cur_z.has_nonzero_generator())
        throw ZIsEverything(
            "the projected Z covers the projected N at this truncation order");

    ProjectionChain chain{std::move(steps), std::move(live), std::move(cur_z), caveat,
                          std::move(note)};
    return chain;
}

}  // namespace arckit
