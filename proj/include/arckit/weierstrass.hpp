#ifndef ARCKIT_WEIERSTRASS_HPP
#define ARCKIT_WEIERSTRASS_HPP

#include <cstdint>
#include <optional>

#include "arckit/linear_change.hpp"
#include "arckit/poly_in_var.hpp"
#include "arckit/series.hpp"

namespace arckit {

// f = unit * wpoly mod m^{T+1}, wpoly monic of degree k in the distinguished
// variable with non-leading coefficients vanishing at the origin.
struct WeierstrassFactorization {
    Series unit;
    PolyInVar wpoly;
    std::uint32_t distinguished_var;
    std::uint32_t order_k;
};

// Order of f restricted to the x_d axis; nullopt when the restriction is
// zero modulo the truncation. Throws ZeroSeries for f == 0 mod m^{T+1}.
std::optional<std::uint32_t> regular_order(const Series& f, std::uint32_t d);

struct RegularizeResult {
    LinearChange change;
    std::uint32_t order_k;  // equals order(f); achieved by the change
};

// Deterministic search for an invertible change A with
// regular_order(f o A, d) == order(f). Direction vectors are enumerated by
// increasing max-norm, within a norm by lexicographic rank with the value
// order 0, 1, -1, 2, -2, ...; vectors with v_d == 0 are skipped (they give a
// singular change). Over Q the search always succeeds within a bound of
// order(f)/2 + 1; over small F_p it can genuinely exhaust, which surfaces as
// SearchExhausted. Only variables listed in support (all when empty) are
// mixed into the change.
RegularizeResult regularize(const Series& f, std::uint32_t d,
                            std::uint32_t search_bound = 16,
                            const std::vector<std::uint32_t>& support = {});

struct WDivision {
    Series quotient;
    PolyInVar remainder;  // degree < k in x_d
};

// Weierstrass division of g by f, regular of order k in x_d:
// g = q*f + r mod m^{T+1} with deg_{x_d} r < k. Classical fixed-point
// iteration; every intermediate is truncated at m^{T+1} and the iteration
// stabilizes within T+1 rounds.
WDivision wdivide(const Series& g, const Series& f, std::uint32_t d);

// Weierstrass preparation via division of x_d^k by f.
WeierstrassFactorization wprepare(const Series& f, std::uint32_t d);

}  // namespace arckit

#endif
