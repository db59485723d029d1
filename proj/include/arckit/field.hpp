#ifndef ARCKIT_FIELD_HPP
#define ARCKIT_FIELD_HPP

#include <cstdint>
#include <string>

#include "arckit/rational.hpp"

namespace arckit {

enum class FieldKind { rationals, prime_field };

// Coefficient domain of a computation: Q, or F_p for a configured prime p.
// F_p elements are carried as integer-valued Rationals in [0, p).
class Field {
  public:
    static Field rationals() { return Field(FieldKind::rationals, 0); }
    static Field prime(std::uint64_t p);

    FieldKind kind() const { return kind_; }
    std::uint64_t characteristic() const { return p_; }

    Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
    Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
    Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
    Rational neg(const Rational& a) const { return reduce(-a); }
    Rational div(const Rational& a, const Rational& b) const;
    Rational inv(const Rational& a) const;
    Rational pow(const Rational& a, unsigned long e) const;

    // Map an arbitrary rational into the field. For F_p this is n * d^{-1}
    // mod p and throws Error when p divides d.
    Rational reduce(const Rational& a) const;

    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_long(long n) const { return reduce(Rational(n)); }

    bool is_zero(const Rational& a) const { return a.is_zero(); }

    // Total order used wherever a deterministic sweep over field elements is
    // needed (root enumeration): over Q ascending |x| with positive before
    // negative; over F_p ascending representative.
    bool canonical_less(const Rational& a, const Rational& b) const;

    std::string to_string() const;  // "Q" or "F <p>"

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

  private:
    Field(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
    FieldKind kind_;
    std::uint64_t p_;
};

}  // namespace arckit

#endif
