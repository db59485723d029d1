#ifndef ARCKIT_TESTS_SUPPORT_HPP
#define ARCKIT_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "arckit/series.hpp"

namespace arckit::testing {

// Deterministic sparse random series: bounded coefficients, bounded term
// count, optional order floor.
inline Series random_series(std::mt19937_64& rng, const RingPtr& ring,
                            std::size_t max_terms = 8, std::uint32_t min_order = 0,
                            long coeff_bound = 9) {
    std::uniform_int_distribution<std::size_t> terms_dist(1, max_terms);
    std::uniform_int_distribution<long> coeff_dist(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<std::uint32_t> deg_dist(
        min_order, std::max<std::uint32_t>(min_order, ring->trunc_order()));
    Series acc = Series::zero(ring);
    const std::size_t terms = terms_dist(rng);
    for (std::size_t t = 0; t < terms; ++t) {
        std::uint32_t target = deg_dist(rng);
        Monomial m;
        std::uint32_t remaining = target;
        for (std::uint32_t i = 0; i + 1 < ring->num_vars() && remaining > 0; ++i) {
            std::uniform_int_distribution<std::uint32_t> part(0, remaining);
            std::uint32_t e = part(rng);
            if (e > 0) m = m * Monomial::variable(i, e);
            remaining -= e;
        }
        if (remaining > 0)
            m = m * Monomial::variable(ring->num_vars() - 1, remaining);
        long c = coeff_dist(rng);
        if (c == 0) c = 1;
        acc = acc + Series::monomial(ring, m, ring->field().reduce(Rational(c)));
    }
    return acc;
}

inline Series random_nonzero_series(std::mt19937_64& rng, const RingPtr& ring,
                                    std::size_t max_terms = 8,
                                    std::uint32_t min_order = 0) {
    for (int tries = 0; tries < 64; ++tries) {
        Series s = random_series(rng, ring, max_terms, min_order);
        if (!s.is_zero()) return s;
    }
    return Series::variable(ring, 0);
}

}  // namespace arckit::testing

#endif
