#include "arckit/weierstrass.hpp"

#include <algorithm>
#include <cstdlib>

#include "arckit/errors.hpp"

namespace arckit {

std::optional<std::uint32_t> regular_order(const Series& f, std::uint32_t d) {
    if (f.is_zero()) throw ZeroSeries("regular_order of the zero series");
    if (d >= f.ring()->num_vars())
        throw DimensionMismatch("distinguished variable out of range");
    std::optional<std::uint32_t> k;
    for (const auto& [m, c] : f.terms()) {
        // pure powers of x_d survive the axis restriction
        if (m.is_one()) return 0;
        if (m.factors().size() == 1 && m.factors()[0].first == d) {
            std::uint32_t e = m.factors()[0].second;
            if (!k || e < *k) k = e;
        }
    }
    return k;
}

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

// Enumerate integer vectors over `support` by increasing max-norm, within one
// norm lexicographically with per-coordinate value order 0, 1, -1, 2, -2, ...
// visit() sees full n-vectors (zeros outside support); returns true to stop.
template <typename Visit>
bool enumerate_directions(std::uint32_t n, const std::vector<std::uint32_t>& support,
                          std::uint32_t bound, Visit visit) {
    const std::size_t m = support.size();
    if (m == 0) return false;
    std::vector<std::uint32_t> ranks(m, 0);
    for (std::uint32_t norm = 1; norm <= bound; ++norm) {
        const std::uint32_t max_rank = 2 * norm;
        std::fill(ranks.begin(), ranks.end(), 0);
        do {
            std::uint32_t vnorm = 0;
            for (auto r : ranks)
                vnorm = std::max<std::uint32_t>(
                    vnorm, static_cast<std::uint32_t>(std::labs(rank_to_value(r))));
            if (vnorm != norm) continue;  // already visited at a smaller norm
            std::vector<long> v(n, 0);
            for (std::size_t i = 0; i < m; ++i) v[support[i]] = rank_to_value(ranks[i]);
            if (visit(v)) return true;
        } while (advance_odometer(ranks, max_rank));
    }
    return false;
}

}  // namespace

RegularizeResult regularize(const Series& f, std::uint32_t d, std::uint32_t search_bound,
                            const std::vector<std::uint32_t>& support_in) {
    if (f.is_zero()) throw ZeroSeries("regularize of the zero series");
    const std::uint32_t n = f.ring()->num_vars();
    if (d >= n) throw DimensionMismatch("distinguished variable out of range");
    const Field& F = f.ring()->field();
    const std::uint32_t k = *f.order();

    auto ro = regular_order(f, d);
    if (ro && *ro == k) return RegularizeResult{LinearChange::identity(n, F), k};

    Series fk = f.homogeneous_component(k);
    std::vector<std::uint32_t> support = support_in;
    if (support.empty())
        for (std::uint32_t i = 0; i < n; ++i) support.push_back(i);

    std::vector<Rational> found;
    bool ok = enumerate_directions(n, support, search_bound, [&](const std::vector<long>& v) {
        if (v[d] == 0) return false;  // change must stay invertible
        std::vector<Rational> coords;
        coords.reserve(n);
        for (long x : v) coords.push_back(F.from_long(x));
        Rational value = fk.evaluate_point(Point(coords));
        if (F.is_zero(value)) return false;
        found = std::move(coords);
        return true;
    });
    if (!ok)
        throw SearchExhausted("no regularizing direction within max-norm " +
                              std::to_string(search_bound));

    LinearChange change = LinearChange::regularizing(found, d, F);
    Series moved = change.apply(f);
    auto achieved = regular_order(moved, d);
    if (!achieved || *achieved != k)
        throw Error("regularizing change failed to achieve the expected order");
    return RegularizeResult{std::move(change), k};
}

namespace {

// split h = low + x_d^k * high with deg_{x_d} low < k
struct KSplit {
    Series low;
    Series high;
};

KSplit split_at_power(const Series& h, std::uint32_t d, std::uint32_t k) {
    std::map<Monomial, Rational, MonomialOrder> low, high;
    for (const auto& [m, c] : h.terms()) {
        std::uint32_t e = m.exponent_of(d);
        if (e < k) {
            low.emplace(m, c);
        } else {
            Monomial reduced = m.without(d) * Monomial::variable(d, e - k);
            high.emplace(reduced, c);
        }
    }
    return KSplit{Series::from_terms(h.ring(), std::move(low), h.is_exact()),
                  Series::from_terms(h.ring(), std::move(high), h.is_exact())};
}

}  // namespace

WDivision wdivide(const Series& g, const Series& f, std::uint32_t d) {
    check_same_ring(g, f);
    auto ro = regular_order(f, d);
    if (!ro)
        throw NotRegular("divisor is not regular in the distinguished variable");
    const std::uint32_t k = *ro;
    const std::uint32_t T = f.ring()->trunc_order();

    KSplit fsplit = split_at_power(f, d, k);
    const Series& f_low = fsplit.low;    // every term involves another variable
    const Series& f_unit = fsplit.high;  // constant term = x_d^k coefficient of f
    Series unit_inv = f_unit.inverse_unit();

    // Solve q = U^{-1} Q(g - q*f_low); f_low lies in the ideal of the other
    // variables, so each round pins one more grade and the iteration is
    // stationary after at most T+1 rounds.
    Series q = Series::zero(g.ring());
    bool stable = false;
    for (std::uint32_t round = 0; round <= T + 1; ++round) {
        Series rhs = g - q * f_low;
        Series q_next = unit_inv * split_at_power(rhs, d, k).high;
        if (q_next == q) {
            stable = true;
            break;
        }
        q = std::move(q_next);
    }
    if (!stable) throw Error("division iteration failed to stabilize");

    Series r = split_at_power(g - q * f, d, k).low;
    PolyInVar rem = PolyInVar::from_series(r, d);
    if (!rem.is_zero() && rem.degree() >= k)
        throw Error("division remainder exceeds the regularity order");
    return WDivision{std::move(q), std::move(rem)};
}

WeierstrassFactorization wprepare(const Series& f, std::uint32_t d) {
    auto ro = regular_order(f, d);
    if (!ro)
        throw NotRegular("series is not regular in the distinguished variable");
    const std::uint32_t k = *ro;

    Series xdk = Series::monomial(f.ring(), Monomial::variable(d, k), Rational(1));
    WDivision div = wdivide(xdk, f, d);
    // x_d^k = q f + r, hence q f = x_d^k - r is the monic factor.
    if (div.quotient.constant_term().is_zero())
        throw NotRegular("preparation quotient is not a unit");

    PolyInVar wpoly(d, f.ring());
    wpoly.set_coeff(k, Series::constant(f.ring(), Rational(1)));
    for (std::uint32_t i = 0; i < div.remainder.coeffs().size(); ++i)
        wpoly.set_coeff(i, -div.remainder.coeffs()[i]);

    Series unit = div.quotient.inverse_unit();
    for (std::uint32_t i = 0; i < k && i < wpoly.coeffs().size(); ++i)
        if (!wpoly.coeffs()[i].constant_term().is_zero())
            throw Error("prepared coefficients fail to vanish at the origin");
    return WeierstrassFactorization{std::move(unit), std::move(wpoly), d, k};
}

}  // namespace arckit
