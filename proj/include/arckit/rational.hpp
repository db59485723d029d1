#ifndef ARCKIT_RATIONAL_HPP
#define ARCKIT_RATIONAL_HPP

#include <gmp.h>

#include <cstdint>
#include <string>

namespace arckit {

// Arbitrary-precision rational, always canonical: lowest terms, positive
// denominator. Value semantics over GMP's mpq_t.
class Rational {
  public:
    Rational() { mpq_init(v_); }
    Rational(long n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rational(long n, long d);
    explicit Rational(const std::string& text);  // "n" or "n/d", arbitrary size

    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    bool is_one() const { return mpq_cmp_si(v_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
    int sign() const { return mpq_sgn(v_); }

    Rational operator+(const Rational& o) const {
        Rational r;
        mpq_add(r.v_, v_, o.v_);
        return r;
    }
    Rational operator-(const Rational& o) const {
        Rational r;
        mpq_sub(r.v_, v_, o.v_);
        return r;
    }
    Rational operator*(const Rational& o) const {
        Rational r;
        mpq_mul(r.v_, v_, o.v_);
        return r;
    }
    Rational operator/(const Rational& o) const;  // throws Error on /0
    Rational operator-() const {
        Rational r;
        mpq_neg(r.v_, v_);
        return r;
    }
    Rational abs() const {
        Rational r;
        mpq_abs(r.v_, v_);
        return r;
    }
    Rational inverse() const;  // throws Error on 0

    Rational pow(unsigned long e) const;

    bool operator==(const Rational& o) const { return mpq_equal(v_, o.v_) != 0; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return mpq_cmp(v_, o.v_) < 0; }

    // compare |*this| with |o|
    int cmp_abs(const Rational& o) const;

    // Canonical rendering: "n" when integral, else "n/d".
    std::string to_string() const;
    std::string num_string() const;
    std::string den_string() const;

    // Direct GMP access for algorithms that need integer machinery.
    const __mpq_struct* raw() const { return v_; }
    __mpq_struct* raw() { return v_; }

  private:
    mpq_t v_;
};

}  // namespace arckit

#endif
