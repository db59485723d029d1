#include "arckit/puiseux.hpp"

#include <gmp.h>

#include <algorithm>
#include <numeric>

#include "arckit/errors.hpp"

namespace arckit {

// ---------------------------------------------------------------------------
// polynomial root finding over the coefficient field
// ---------------------------------------------------------------------------

namespace {

Rational poly_eval(const std::vector<Rational>& coeffs, const Rational& x,
                   const Field& F) {
    Rational acc = F.zero();
    for (std::size_t i = coeffs.size(); i > 0; --i)
        acc = F.add(F.mul(acc, x), coeffs[i - 1]);
    return acc;
}

// divide by (z - c); returns quotient, sets exact to remainder == 0
std::vector<Rational> synthetic_divide(const std::vector<Rational>& coeffs,
                                       const Rational& c, const Field& F,
                                       bool& exact) {
    const std::size_t n = coeffs.size() - 1;  // degree
    std::vector<Rational> q(n, F.zero());
    Rational carry = coeffs[n];
    for (std::size_t i = n; i > 0; --i) {
        q[i - 1] = carry;
        carry = F.add(coeffs[i - 1], F.mul(c, carry));
    }
    exact = carry.is_zero();
    return q;
}

std::uint32_t multiplicity_of(const std::vector<Rational>& coeffs, const Rational& c,
                              const Field& F) {
    std::uint32_t mult = 0;
    std::vector<Rational> rest = coeffs;
    bool exact = true;
    while (rest.size() > 1 && exact) {
        std::vector<Rational> q = synthetic_divide(rest, c, F, exact);
        if (exact) {
            ++mult;
            rest = std::move(q);
        }
    }
    return mult;
}

// all positive divisors of |z| by full factorization; resource limits surface
// as SearchExhausted so an incomplete search is never mistaken for a proof
std::vector<Rational> positive_divisors(const __mpz_struct* z) {
    mpz_t n;
    mpz_init(n);
    mpz_abs(n, z);
    if (mpz_cmp_ui(n, 0) == 0) {
        mpz_clear(n);
        throw Error("divisors of zero requested");
    }
    std::vector<std::pair<unsigned long, unsigned>> factors;
    unsigned long p = 2;
    const unsigned long trial_limit = 1000000;
    while (mpz_cmp_ui(n, 1) > 0 && p <= trial_limit) {
        if (mpz_divisible_ui_p(n, p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n, p)) {
                mpz_divexact_ui(n, n, p);
                ++e;
            }
            factors.emplace_back(p, e);
        }
        p = (p == 2) ? 3 : p + 2;
    }
    bool leftover = mpz_cmp_ui(n, 1) > 0;
    Rational big;
    if (leftover) {
        if (mpz_probab_prime_p(n, 32) == 0) {
            mpz_clear(n);
            throw SearchExhausted("root search: cannot factor a constant coefficient");
        }
        mpq_set_z(big.raw(), n);
    }
    mpz_clear(n);

    std::vector<Rational> divisors;
    divisors.emplace_back(1);
    for (const auto& [prime, mult] : factors) {
        std::vector<Rational> next;
        next.reserve(divisors.size() * (mult + 1));
        Rational pw(1);
        Rational pr(static_cast<long>(prime));
        for (unsigned e = 0; e <= mult; ++e) {
            for (const auto& d : divisors) next.push_back(d * pw);
            pw = pw * pr;
        }
        divisors = std::move(next);
        if (divisors.size() > 100000)
            throw SearchExhausted("root search: divisor set too large");
    }
    if (leftover) {
        std::vector<Rational> next;
        next.reserve(divisors.size() * 2);
        for (const auto& d : divisors) {
            next.push_back(d);
            next.push_back(d * big);
        }
        divisors = std::move(next);
    }
    return divisors;
}

std::vector<std::pair<Rational, std::uint32_t>> rational_roots(
    const std::vector<Rational>& coeffs, const Field& F) {
    // integer model: clear denominators, strip content
    mpz_t lcm, g;
    mpz_init_set_ui(lcm, 1);
    mpz_init_set_ui(g, 0);
    for (const auto& c : coeffs) mpz_lcm(lcm, lcm, mpq_denref(c.raw()));
    std::vector<Rational> zs(coeffs.size());
    Rational mul;
    mpq_set_z(mul.raw(), lcm);
    for (std::size_t i = 0; i < coeffs.size(); ++i) zs[i] = coeffs[i] * mul;
    for (const auto& c : zs) mpz_gcd(g, g, mpq_numref(c.raw()));
    if (mpz_cmp_ui(g, 1) > 0) {
        Rational gr;
        mpq_set_z(gr.raw(), g);
        Rational ginv = gr.inverse();
        for (auto& c : zs) c = c * ginv;
    }
    mpz_clears(lcm, g, nullptr);

    // constant coefficient: lowest nonzero (rational roots of the cofactor;
    // z = 0 is never a candidate here)
    std::size_t low = 0;
    while (low < zs.size() && zs[low].is_zero()) ++low;
    if (low + 1 >= zs.size()) return {};

    std::vector<Rational> nums = positive_divisors(mpq_numref(zs[low].raw()));
    std::vector<Rational> dens = positive_divisors(mpq_numref(zs.back().raw()));
    std::vector<std::pair<Rational, std::uint32_t>> roots;
    for (const auto& nu : nums) {
        for (const auto& de : dens) {
            for (int sign = 0; sign < 2; ++sign) {
                Rational cand = sign ? -(nu / de) : nu / de;
                bool seen = false;
                for (const auto& r : roots) seen = seen || r.first == cand;
                if (seen) continue;
                if (!poly_eval(coeffs, cand, F).is_zero()) continue;
                roots.emplace_back(cand, multiplicity_of(coeffs, cand, F));
            }
        }
    }
    return roots;
}

std::vector<std::pair<Rational, std::uint32_t>> prime_field_roots(
    const std::vector<Rational>& coeffs, const Field& F) {
    const std::uint64_t p = F.characteristic();
    if (p > (1u << 21))
        throw SearchExhausted("root scan over F_p limited to p < 2^21");
    std::vector<std::pair<Rational, std::uint32_t>> roots;
    for (std::uint64_t v = 0; v < p; ++v) {
        Rational cand(static_cast<long>(v));
        if (!poly_eval(coeffs, cand, F).is_zero()) continue;
        roots.emplace_back(cand, multiplicity_of(coeffs, cand, F));
    }
    return roots;
}

}  // namespace

std::vector<std::pair<Rational, std::uint32_t>> field_roots(
    const std::vector<Rational>& coeffs, const Field& field) {
    if (coeffs.size() < 2) return {};
    if (coeffs.back().is_zero()) throw Error("field_roots: leading coefficient is zero");
    auto roots = field.kind() == FieldKind::rationals ? rational_roots(coeffs, field)
                                                      : prime_field_roots(coeffs, field);
    std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
        return field.canonical_less(a.first, b.first);
    });
    return roots;
}

// ---------------------------------------------------------------------------
// Newton polygon machinery
// ---------------------------------------------------------------------------

namespace {

struct HullPoint {
    std::uint32_t j;
    std::uint32_t v;
};

long cross(const HullPoint& o, const HullPoint& a, const HullPoint& b) {
    long ax = static_cast<long>(a.j) - o.j;
    long ay = static_cast<long>(a.v) - static_cast<long>(o.v);
    long bx = static_cast<long>(b.j) - o.j;
    long by = static_cast<long>(b.v) - static_cast<long>(o.v);
    return ax * by - ay * bx;
}

std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts) {
    std::vector<HullPoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

Rational binomial(std::uint32_t nn, std::uint32_t kk) {
    Rational acc(1);
    for (std::uint32_t i = 1; i <= kk; ++i)
        acc = acc * Rational(static_cast<long>(nn - kk + i)) /
              Rational(static_cast<long>(i));
    return acc;
}

struct LiftState {
    std::vector<Series> coeffs;  // monic; index = power of the unknown
    Series accumulated;          // root prefix, in the current parameter
    std::uint32_t ram;           // total ramification so far
    std::int64_t min_next;       // orders at or below this belong to siblings
};

class Lifter {
  public:
    Lifter(RingPtr s_ring, const PuiseuxOptions& opts)
        : ring_(std::move(s_ring)), opts_(opts) {}

    PuiseuxResult run(std::vector<Series> coeffs) {
        LiftState st{std::move(coeffs), Series::zero(ring_), 1, -1};
        descend(st, 0);
        return std::move(result_);
    }

  private:
    void descend(LiftState st, std::uint32_t depth) {
        if (depth > static_cast<std::uint64_t>(ring_->trunc_order()) *
                            opts_.max_ramification + 8)
            throw Error("lift recursion exceeded its depth guard");

        // factor out the unknown: zero constant coefficient means the prefix
        // already annihilates the polynomial modulo the truncation
        std::uint32_t m0 = 0;
        while (m0 < st.coeffs.size() && st.coeffs[m0].is_zero()) ++m0;
        if (m0 > 0) {
            result_.roots.push_back(PuiseuxRoot{st.accumulated, st.ram});
            st.coeffs.erase(st.coeffs.begin(), st.coeffs.begin() + m0);
        }
        if (st.coeffs.size() < 2) return;

        std::vector<HullPoint> pts;
        for (std::uint32_t j = 0; j < st.coeffs.size(); ++j) {
            auto o = st.coeffs[j].order();
            if (o) pts.push_back(HullPoint{j, *o});
        }
        std::vector<HullPoint> hull = lower_hull(pts);

        // hull edges left to right come in increasing slope already
        for (std::size_t ei = 0; ei + 1 < hull.size(); ++ei) {
            const HullPoint a = hull[ei];
            const HullPoint b = hull[ei + 1];
            if (b.v > a.v) continue;  // root of negative order: not a series
            const std::uint32_t rise = a.v - b.v;
            const std::uint32_t run = b.j - a.j;
            const std::uint32_t g = rise == 0 ? run : std::gcd(rise, run);
            const std::uint32_t p_num = rise / g;   // slope = p_num / q_den
            const std::uint32_t q_den = run / g;

            // orders settled at an earlier level belong to sibling branches
            if (st.min_next >= 0 &&
                static_cast<std::int64_t>(p_num) <=
                    st.min_next * static_cast<std::int64_t>(q_den))
                continue;

            if (static_cast<std::uint64_t>(st.ram) * q_den > opts_.max_ramification) {
                result_.failures.push_back(PuiseuxFailure{
                    PuiseuxFailure::Kind::truncation_too_coarse,
                    "ramification beyond " + std::to_string(opts_.max_ramification) +
                        " needed to separate branches at this order",
                    ""});
                continue;
            }

            // ramify so the edge slope becomes the integer p_num
            LiftState branch{st.coeffs, st.accumulated, st.ram, st.min_next};
            if (q_den > 1) {
                for (auto& c : branch.coeffs) c = c.ramified(q_den);
                branch.accumulated = branch.accumulated.ramified(q_den);
                branch.ram *= q_den;
            }
            const std::uint32_t mu = p_num;

            // characteristic polynomial from the lattice points on the edge
            std::vector<Rational> phi(run + 1, Rational(0));
            bool beyond_precision = false;
            for (std::uint32_t t = 0; t <= g; ++t) {
                std::uint32_t j = a.j + t * q_den;
                std::uint32_t want_old = a.v - t * p_num;
                std::uint32_t want = want_old * q_den;
                if (want > ring_->trunc_order()) {
                    beyond_precision = true;
                    break;
                }
                phi[t * q_den] = branch.coeffs[j].univariate_coeff(want);
            }
            if (beyond_precision) {
                result_.failures.push_back(PuiseuxFailure{
                    PuiseuxFailure::Kind::truncation_too_coarse,
                    "edge coefficients fall beyond the truncation after "
                    "ramification; raise the arc order",
                    ""});
                continue;
            }

            auto roots = field_roots(phi, ring_->field());
            bool used_any = false;
            for (const auto& [c, mult] : roots) {
                if (c.is_zero()) continue;
                used_any = true;
                Series shift = Series::monomial(ring_, Monomial::variable(0, mu), c);
                LiftState child{substitute_shift(branch.coeffs, shift),
                                branch.accumulated + shift, branch.ram,
                                static_cast<std::int64_t>(mu)};
                descend(std::move(child), depth + 1);
            }
            if (!used_any)
                result_.failures.push_back(PuiseuxFailure{
                    PuiseuxFailure::Kind::algebraic_extension,
                    "characteristic polynomial has no root in " +
                        ring_->field().to_string(),
                    render_poly(phi)});
        }
    }

    // Q(shift + Y) by binomial expansion
    std::vector<Series> substitute_shift(const std::vector<Series>& coeffs,
                                         const Series& shift) const {
        const std::size_t k = coeffs.size();
        std::vector<Series> out(k, Series::zero(ring_));
        std::vector<Series> shift_pows;
        shift_pows.push_back(Series::constant(ring_, Rational(1)));
        for (std::size_t i = 1; i < k; ++i)
            shift_pows.push_back(shift_pows.back() * shift);
        const Field& F = ring_->field();
        for (std::size_t j = 0; j < k; ++j) {
            if (coeffs[j].is_zero()) continue;
            for (std::size_t i = 0; i <= j; ++i) {
                Rational bin = F.reduce(binomial(static_cast<std::uint32_t>(j),
                                                 static_cast<std::uint32_t>(i)));
                if (bin.is_zero()) continue;
                out[i] = out[i] + (coeffs[j] * shift_pows[j - i]).scaled(bin);
            }
        }
        return out;
    }

    std::string render_poly(const std::vector<Rational>& phi) const {
        std::string out;
        for (std::size_t i = phi.size(); i > 0; --i) {
            if (phi[i - 1].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += phi[i - 1].to_string();
            if (i - 1 > 0) out += "*z^" + std::to_string(i - 1);
        }
        return out.empty() ? "0" : out;
    }

    RingPtr ring_;
    PuiseuxOptions opts_;
    PuiseuxResult result_;
};

}  // namespace

PuiseuxResult puiseux_lift(const std::vector<Series>& monic_coeffs,
                           const PuiseuxOptions& options) {
    if (monic_coeffs.size() < 2)
        throw DimensionMismatch("lift needs a polynomial of degree at least 1");
    RingPtr ring = monic_coeffs.front().ring();
    for (const auto& c : monic_coeffs) {
        if (!c.ring()->same_as(*ring))
            throw MismatchedRing("coefficients live in different rings");
        if (c.ring()->num_vars() != 1)
            throw DimensionMismatch("lift coefficients must be univariate");
    }
    const Series& top = monic_coeffs.back();
    if (!(top.term_count() == 1 && top.constant_term().is_one()))
        throw NotRegular("lift requires a monic polynomial");
    Lifter lifter(ring, options);
    return lifter.run(monic_coeffs);
}

}  // namespace arckit
