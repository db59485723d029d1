#include "arckit/rational.hpp"

#include <stdexcept>

#include "arckit/errors.hpp"

namespace arckit {

Rational::Rational(long n, long d) {
    mpq_init(v_);
    if (d == 0) throw Error("rational with zero denominator");
    mpq_set_si(v_, n, 1);
    mpq_t den;
    mpq_init(den);
    mpq_set_si(den, d, 1);
    mpq_div(v_, v_, den);
    mpq_clear(den);
}

Rational::Rational(const std::string& text) {
    mpq_init(v_);
    if (mpq_set_str(v_, text.c_str(), 10) != 0)
        throw Error("cannot parse rational literal '" + text + "'");
    if (mpz_sgn(mpq_denref(v_)) == 0)
        throw Error("rational with zero denominator");
    mpq_canonicalize(v_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw Error("division by zero");
    Rational r;
    mpq_div(r.v_, v_, o.v_);
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    Rational r;
    mpq_inv(r.v_, v_);
    return r;
}

Rational Rational::pow(unsigned long e) const {
    Rational r(1);
    Rational base(*this);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

int Rational::cmp_abs(const Rational& o) const {
    // |a/b| vs |c/d|  <=>  |a|*d vs |c|*b   (b, d > 0)
    mpz_t lhs, rhs;
    mpz_init(lhs);
    mpz_init(rhs);
    mpz_mul(lhs, mpq_numref(v_), mpq_denref(o.v_));
    mpz_abs(lhs, lhs);
    mpz_mul(rhs, mpq_numref(o.v_), mpq_denref(v_));
    mpz_abs(rhs, rhs);
    int c = mpz_cmp(lhs, rhs);
    mpz_clear(lhs);
    mpz_clear(rhs);
    return c;
}

std::string Rational::to_string() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

static std::string mpz_to_string(const __mpz_struct* z) {
    char* s = mpz_get_str(nullptr, 10, z);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

std::string Rational::num_string() const { return mpz_to_string(mpq_numref(v_)); }
std::string Rational::den_string() const { return mpz_to_string(mpq_denref(v_)); }

}  // namespace arckit
