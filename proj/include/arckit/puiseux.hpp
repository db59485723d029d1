#ifndef ARCKIT_PUISEUX_HPP
#define ARCKIT_PUISEUX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "arckit/series.hpp"

namespace arckit {

// One branch of the solution set: a univariate series x(s) together with the
// ramification index e, meaning the original parameter t satisfied t = s^e.
struct PuiseuxRoot {
    Series root;
    std::uint32_t ramification;
};

struct PuiseuxFailure {
    enum class Kind { algebraic_extension, truncation_too_coarse };
    Kind kind;
    std::string message;
    std::string characteristic_poly;  // set for algebraic_extension
};

struct PuiseuxOptions {
    std::uint32_t max_ramification = 64;
};

struct PuiseuxResult {
    std::vector<PuiseuxRoot> roots;        // deterministic branch order
    std::vector<PuiseuxFailure> failures;  // edges that could not be followed
};

// All roots of a monic polynomial P(X) = X^k + c_{k-1}(s) X^{k-1} + ... +
// c_0(s) over the truncated univariate series ring, found by Newton-polygon
// edge selection and coefficient recursion. Each emitted (x(s), e) satisfies
// P with its coefficients ramified by s -> s^e evaluated at x(s) == 0 modulo
// s^{T+1}. Edges are processed by increasing slope; roots of a characteristic
// polynomial in the field's canonical order.
PuiseuxResult puiseux_lift(const std::vector<Series>& monic_coeffs,
                           const PuiseuxOptions& options = {});

// Roots in the coefficient field of a dense univariate polynomial, with
// multiplicities, in canonical order. Complete over Q (rational root theorem
// with full divisor enumeration) and over F_p (exhaustive scan); resource
// limits surface as SearchExhausted.
std::vector<std::pair<Rational, std::uint32_t>> field_roots(
    const std::vector<Rational>& coeffs, const Field& field);

}  // namespace arckit

#endif
