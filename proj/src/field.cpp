#include "arckit/field.hpp"

#include <gmp.h>

#include "arckit/errors.hpp"

namespace arckit {

Field Field::prime(std::uint64_t p) {
    if (p < 2) throw Error("field characteristic must be a prime >= 2");
    mpz_t z;
    mpz_init_set_ui(z, p);
    bool ok = mpz_probab_prime_p(z, 32) != 0;
    mpz_clear(z);
    if (!ok) throw Error("field characteristic " + std::to_string(p) + " is not prime");
    return Field(FieldKind::prime_field, p);
}

Rational Field::reduce(const Rational& a) const {
    if (kind_ == FieldKind::rationals) return a;  // mpq keeps canonical form
    mpz_t p, num, den, inv;
    mpz_init_set_ui(p, p_);
    mpz_init_set(num, mpq_numref(a.raw()));
    mpz_init_set(den, mpq_denref(a.raw()));
    mpz_init(inv);
    Rational out;
    if (mpz_invert(inv, den, p) == 0) {
        mpz_clears(p, num, den, inv, nullptr);
        throw Error("denominator not invertible mod " + std::to_string(p_));
    }
    mpz_mul(num, num, inv);
    mpz_mod(num, num, p);
    mpq_set_z(out.raw(), num);
    mpz_clears(p, num, den, inv, nullptr);
    return out;
}

Rational Field::div(const Rational& a, const Rational& b) const {
    if (b.is_zero()) throw Error("division by zero");
    if (kind_ == FieldKind::rationals) return a / b;
    return mul(a, inv(b));
}

Rational Field::inv(const Rational& a) const {
    if (a.is_zero()) throw Error("inverse of zero");
    if (kind_ == FieldKind::rationals) return a.inverse();
    mpz_t p, num, inv;
    mpz_init_set_ui(p, p_);
    mpz_init_set(num, mpq_numref(a.raw()));
    mpz_init(inv);
    Rational out;
    if (mpz_invert(inv, num, p) == 0) {
        mpz_clears(p, num, inv, nullptr);
        throw Error("element not invertible mod " + std::to_string(p_));
    }
    mpq_set_z(out.raw(), inv);
    mpz_clears(p, num, inv, nullptr);
    return out;
}

Rational Field::pow(const Rational& a, unsigned long e) const {
    Rational r = one();
    Rational base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

bool Field::canonical_less(const Rational& a, const Rational& b) const {
    if (kind_ == FieldKind::prime_field) return a < b;  // representatives in [0,p)
    int c = a.cmp_abs(b);
    if (c != 0) return c < 0;
    return a.sign() > b.sign();  // same magnitude: positive first
}

std::string Field::to_string() const {
    if (kind_ == FieldKind::rationals) return "Q";
    return "F " + std::to_string(p_);
}

}  // namespace arckit
