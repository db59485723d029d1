#ifndef ARCKIT_SERIES_HPP
#define ARCKIT_SERIES_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arckit/field.hpp"
#include "arckit/rational.hpp"

namespace arckit {

// Monomial in finitely many variables: sorted (index, exponent) pairs with no
// zero exponents, plus the cached total degree.
class Monomial {
  public:
    Monomial() = default;
    static Monomial one() { return Monomial(); }
    static Monomial variable(std::uint32_t index, std::uint32_t exp = 1);

    std::uint32_t degree() const { return degree_; }
    bool is_one() const { return factors_.empty(); }
    std::uint32_t exponent_of(std::uint32_t index) const;
    bool involves(std::uint32_t index) const { return exponent_of(index) > 0; }
    std::uint32_t max_index() const;

    Monomial operator*(const Monomial& o) const;
    // Remove a single variable entirely (used when regrouping by one variable).
    Monomial without(std::uint32_t index) const;
    // Multiply every exponent by q (parameter ramification s -> s^q).
    Monomial stretched(std::uint32_t q) const;

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors() const {
        return factors_;
    }

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    // Graded lexicographic order: by total degree, then lex on exponent
    // vectors. Gives deterministic iteration with the lowest degree first.
    bool graded_lex_less(const Monomial& o) const;

    std::string to_string(const std::vector<std::string>& names) const;

  private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors_;
    std::uint32_t degree_ = 0;
};

struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return a.graded_lex_less(b);
    }
};

// Descriptor of a truncated power-series ring: coefficient field, number of
// variables, their print names, and the truncation order T (series are kept
// modulo total degree T+1).
class Ring {
  public:
    Ring(Field field, std::vector<std::string> names, std::uint32_t trunc)
        : field_(std::move(field)), names_(std::move(names)), trunc_(trunc) {}

    const Field& field() const { return field_; }
    std::uint32_t num_vars() const { return static_cast<std::uint32_t>(names_.size()); }
    std::uint32_t trunc_order() const { return trunc_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::uint32_t i) const { return names_.at(i); }

    bool same_as(const Ring& o) const {
        return field_ == o.field_ && names_ == o.names_ && trunc_ == o.trunc_;
    }

  private:
    Field field_;
    std::vector<std::string> names_;
    std::uint32_t trunc_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(Field field, std::vector<std::string> names, std::uint32_t trunc);

class Point;

// Multivariate formal power series stored modulo total degree T+1, sparse,
// over an exact field. Immutable after construction; all operations are pure.
//
// A series with no surviving term is "zero modulo m^{T+1}". The exact() flag
// tracks whether the stored terms are the complete expansion of the value the
// object arose from (no truncation loss anywhere in its history); it is what
// separates genuine polynomials from truncated representatives.
class Series {
  public:
    explicit Series(RingPtr ring) : ring_(std::move(ring)), exact_(true) {}

    static Series zero(RingPtr ring) { return Series(std::move(ring)); }
    static Series constant(RingPtr ring, const Rational& c);
    static Series variable(RingPtr ring, std::uint32_t index);
    static Series monomial(RingPtr ring, const Monomial& m, const Rational& c);

    const RingPtr& ring() const { return ring_; }
    const std::map<Monomial, Rational, MonomialOrder>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }  // zero modulo m^{T+1}
    bool is_exact() const { return exact_; }
    std::size_t term_count() const { return terms_.size(); }

    // Minimum total degree among stored terms; nullopt when zero mod m^{T+1}.
    std::optional<std::uint32_t> order() const;
    bool involves(std::uint32_t var) const;

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const { return coefficient(Monomial::one()); }

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series operator-() const;
    Series scaled(const Rational& c) const;

    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }

    // f(images): one image per variable, evaluated in the images' common
    // ring. Finite whenever every image has order >= 1; an image with a
    // nonzero constant term is accepted only for exact f with strict off.
    Series substitute(std::span<const Series> images, bool strict = true) const;

    // Sum of the terms of total degree exactly d.
    Series homogeneous_component(std::uint32_t d) const;

    // Substitute 0 for every variable whose index is in vars.
    Series evaluate_at_zero(const std::set<std::uint32_t>& vars) const;

    // Exact evaluation at a point; requires an exact polynomial.
    Rational evaluate_point(const Point& a) const;

    // f(x + a); requires an exact polynomial (translation of a truncated
    // series by a nonzero point is not defined in this model).
    Series translate(const Point& a) const;

    // Multiplicative inverse of a unit (nonzero constant term).
    Series inverse_unit() const;

    // Univariate helpers (ring must have exactly one variable).
    Series ramified(std::uint32_t q) const;     // s -> s^q
    Rational univariate_coeff(std::uint32_t e) const;

    std::string to_string() const;

    // Internal constructor for algorithms that assemble term maps directly.
    static Series from_terms(RingPtr ring,
                             std::map<Monomial, Rational, MonomialOrder> terms,
                             bool exact);

  private:
    void add_term(const Monomial& m, const Rational& c);

    RingPtr ring_;
    std::map<Monomial, Rational, MonomialOrder> terms_;
    bool exact_;
};

// K-valued point of the ambient affine space.
class Point {
  public:
    Point() = default;
    explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    static Point origin(std::uint32_t n) { return Point(std::vector<Rational>(n, Rational(0))); }

    std::uint32_t size() const { return static_cast<std::uint32_t>(coords_.size()); }
    const Rational& operator[](std::uint32_t i) const { return coords_.at(i); }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_origin() const;

    bool operator==(const Point& o) const { return coords_ == o.coords_; }

  private:
    std::vector<Rational> coords_;
};

void check_same_ring(const Series& a, const Series& b);

}  // namespace arckit

#endif
