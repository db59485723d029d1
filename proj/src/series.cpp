#include "arckit/series.hpp"

#include <algorithm>

#include "arckit/errors.hpp"

namespace arckit {

// --- Monomial -------------------------------------------------------------

Monomial Monomial::variable(std::uint32_t index, std::uint32_t exp) {
    Monomial m;
    if (exp > 0) {
        m.factors_.emplace_back(index, exp);
        m.degree_ = exp;
    }
    return m;
}

std::uint32_t Monomial::exponent_of(std::uint32_t index) const {
    for (const auto& [i, e] : factors_)
        if (i == index) return e;
    return 0;
}

std::uint32_t Monomial::max_index() const {
    return factors_.empty() ? 0 : factors_.back().first;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin();
    auto b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first < b->first)
            out.factors_.push_back(*a++);
        else if (b->first < a->first)
            out.factors_.push_back(*b++);
        else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    out.factors_.insert(out.factors_.end(), a, factors_.end());
    out.factors_.insert(out.factors_.end(), b, o.factors_.end());
    out.degree_ = degree_ + o.degree_;
    return out;
}

Monomial Monomial::without(std::uint32_t index) const {
    Monomial out;
    for (const auto& f : factors_) {
        if (f.first == index) continue;
        out.factors_.push_back(f);
        out.degree_ += f.second;
    }
    return out;
}

Monomial Monomial::stretched(std::uint32_t q) const {
    Monomial out;
    out.factors_ = factors_;
    for (auto& f : out.factors_) f.second *= q;
    out.degree_ = degree_ * q;
    return out;
}

bool Monomial::graded_lex_less(const Monomial& o) const {
    if (degree_ != o.degree_) return degree_ < o.degree_;
    // within one degree: sparse lex with later-indexed pure powers first,
    // deterministic and stable for rendering and iteration
    auto a = factors_.begin();
    auto b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first != b->first) return a->first > b->first;
        if (a->second != b->second) return a->second < b->second;
        ++a;
        ++b;
    }
    return a == factors_.end() && b != o.factors_.end();
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
    if (factors_.empty()) return "1";
    std::string out;
    bool first = true;
    for (const auto& [i, e] : factors_) {
        if (!first) out += "*";
        first = false;
        out += i < names.size() ? names[i] : "v" + std::to_string(i);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

// --- Ring -------------------------------------------------------------------

RingPtr make_ring(Field field, std::vector<std::string> names, std::uint32_t trunc) {
    return std::make_shared<const Ring>(std::move(field), std::move(names), trunc);
}

void check_same_ring(const Series& a, const Series& b) {
    if (!a.ring()->same_as(*b.ring()))
        throw MismatchedRing("operands live in different rings");
}

// --- Series -------------------------------------------------------------------

Series Series::constant(RingPtr ring, const Rational& c) {
    Series s(std::move(ring));
    Rational r = s.ring_->field().reduce(c);
    if (!r.is_zero()) s.terms_.emplace(Monomial::one(), std::move(r));
    return s;
}

Series Series::variable(RingPtr ring, std::uint32_t index) {
    if (index >= ring->num_vars())
        throw DimensionMismatch("variable index out of range");
    Series s(std::move(ring));
    if (s.ring_->trunc_order() >= 1)
        s.terms_.emplace(Monomial::variable(index), Rational(1));
    else
        s.exact_ = false;  // the variable itself does not survive truncation
    return s;
}

Series Series::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
    Series s(std::move(ring));
    if (m.max_index() >= s.ring_->num_vars() && !m.is_one())
        throw DimensionMismatch("monomial variable out of range");
    Rational r = s.ring_->field().reduce(c);
    if (r.is_zero()) return s;
    if (m.degree() > s.ring_->trunc_order()) {
        s.exact_ = false;
        return s;
    }
    s.terms_.emplace(m, std::move(r));
    return s;
}

Series Series::from_terms(RingPtr ring,
                          std::map<Monomial, Rational, MonomialOrder> terms,
                          bool exact) {
    Series s(std::move(ring));
    s.terms_ = std::move(terms);
    s.exact_ = exact;
    for (auto it = s.terms_.begin(); it != s.terms_.end();) {
        if (it->second.is_zero())
            it = s.terms_.erase(it);
        else
            ++it;
    }
    return s;
}

std::optional<std::uint32_t> Series::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();
}



bool Series::involves(std::uint32_t var) const {
    for (const auto& [m, c] : terms_)
        if (m.involves(var)) return true;
    return false;
}

Rational Series::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Series::add_term(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second = ring_->field().add(it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
}

Series Series::operator+(const Series& o) const {
    check_same_ring(*this, o);
    Series out(*this);
    out.exact_ = exact_ && o.exact_;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

Series Series::operator-(const Series& o) const {
    check_same_ring(*this, o);
    Series out(*this);
    out.exact_ = exact_ && o.exact_;
    const Field& F = ring_->field();
    for (const auto& [m, c] : o.terms_) out.add_term(m, F.neg(c));
    return out;
}

Series Series::operator-() const {
    Series out(ring_);
    out.exact_ = exact_;
    const Field& F = ring_->field();
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, F.neg(c));
    return out;
}

Series Series::scaled(const Rational& c) const {
    Series out(ring_);
    out.exact_ = exact_;
    const Field& F = ring_->field();
    Rational r = F.reduce(c);
    if (r.is_zero()) return out;
    for (const auto& [m, cf] : terms_) {
        Rational v = F.mul(cf, r);
        if (!v.is_zero()) out.terms_.emplace(m, std::move(v));
    }
    return out;
}

Series Series::operator*(const Series& o) const {
    check_same_ring(*this, o);
    Series out(ring_);
    const Field& F = ring_->field();
    const std::uint32_t T = ring_->trunc_order();
    bool dropped = false;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            if (ma.degree() + mb.degree() > T) {
                dropped = true;
                continue;
            }
            out.add_term(ma * mb, F.mul(ca, cb));
        }
    }
    out.exact_ = exact_ && o.exact_ && !dropped;
    return out;
}

bool Series::operator==(const Series& o) const {
    if (!ring_->same_as(*o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b) {
        if (a->first != b->first || a->second != b->second) return false;
    }
    return true;
}

Series Series::substitute(std::span<const Series> images, bool strict) const {
    if (images.size() != ring_->num_vars())
        throw DimensionMismatch("substitute: one image per variable required");
    RingPtr target = images.empty() ? ring_ : images[0].ring();
    for (const auto& img : images) {
        if (!img.ring()->same_as(*target))
            throw MismatchedRing("substitute: images live in different rings");
        if (!img.constant_term().is_zero() && (strict || !exact_))
            throw SubstitutionNotFinite(
                "image with nonzero constant term; translate the base point first");
    }

    // power cache per variable
    std::vector<std::vector<Series>> powers(images.size());
    auto power = [&](std::uint32_t i, std::uint32_t e) -> const Series& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Series::constant(target, Rational(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };

    Series acc(target);
    bool exact = exact_;
    for (const auto& [m, c] : terms_) {
        Series term = Series::constant(target, c);
        for (const auto& [i, e] : m.factors()) term = term * power(i, e);
        exact = exact && term.is_exact();
        acc = acc + term;
    }
    for (const auto& img : images) exact = exact && img.is_exact();
    acc.exact_ = exact && acc.exact_;
    return acc;
}

Series Series::homogeneous_component(std::uint32_t d) const {
    Series out(ring_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == d) out.terms_.emplace(m, c);
    // a degree slice below the truncation is fully determined
    out.exact_ = d <= ring_->trunc_order();
    return out;
}

Series Series::evaluate_at_zero(const std::set<std::uint32_t>& vars) const {
    Series out(ring_);
    out.exact_ = exact_;
    for (const auto& [m, c] : terms_) {
        bool touched = false;
        for (const auto& [i, e] : m.factors()) {
            if (vars.count(i)) {
                touched = true;
                break;
            }
        }
        if (!touched) out.terms_.emplace(m, c);
    }
    return out;
}

Rational Series::evaluate_point(const Point& a) const {
    if (!exact_)
        throw NotPolynomial("exact evaluation requires an untruncated polynomial");
    if (a.size() != ring_->num_vars())
        throw DimensionMismatch("point dimension does not match ring");
    const Field& F = ring_->field();
    Rational acc = F.zero();
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        for (const auto& [i, e] : m.factors()) v = F.mul(v, F.pow(a[i], e));
        acc = F.add(acc, v);
    }
    return acc;
}

Series Series::translate(const Point& a) const {
    if (!exact_)
        throw NotPolynomial("translate is defined for exact polynomials only");
    if (a.size() != ring_->num_vars())
        throw DimensionMismatch("point dimension does not match ring");
    if (a.is_origin()) return *this;
    Series acc(ring_);
    for (const auto& [m, c] : terms_) {
        Series term = Series::constant(ring_, c);
        for (const auto& [i, e] : m.factors()) {
            Series lin = Series::variable(ring_, i) + Series::constant(ring_, a[i]);
            for (std::uint32_t k = 0; k < e; ++k) term = term * lin;
        }
        acc = acc + term;
    }
    return acc;  // degrees never grow, so exactness survives the products
}

Series Series::inverse_unit() const {
    Rational c = constant_term();
    if (c.is_zero()) throw NotRegular("inverse of a non-unit series");
    const Field& F = ring_->field();
    Rational cinv = F.inv(c);
    // f = c(1 - h), order(h) >= 1:  f^{-1} = c^{-1} (1 + h + h^2 + ...)
    Series h = Series::constant(ring_, Rational(1)) - scaled(cinv);
    Series acc = Series::constant(ring_, Rational(1));
    Series pw = h;
    for (std::uint32_t i = 1; i <= ring_->trunc_order() && !pw.is_zero(); ++i) {
        acc = acc + pw;
        pw = pw * h;
    }
    Series out = acc.scaled(cinv);
    out.exact_ = h.is_zero() && exact_;  // genuine inverse only for constants
    return out;
}

Series Series::ramified(std::uint32_t q) const {
    if (ring_->num_vars() != 1)
        throw DimensionMismatch("ramified is a univariate operation");
    if (q == 1) return *this;
    Series out(ring_);
    bool dropped = false;
    const std::uint32_t T = ring_->trunc_order();
    for (const auto& [m, c] : terms_) {
        Monomial sm = m.stretched(q);
        if (sm.degree() > T) {  // sound: precision only grows under s -> s^q
            dropped = true;
            continue;
        }
        out.terms_.emplace(sm, c);
    }
    out.exact_ = exact_ && !dropped;
    return out;
}

Rational Series::univariate_coeff(std::uint32_t e) const {
    if (ring_->num_vars() != 1)
        throw DimensionMismatch("univariate_coeff on a multivariate series");
    return coefficient(e == 0 ? Monomial::one() : Monomial::variable(0, e));
}



std::string Series::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational cc = c;
        if (first) {
            if (cc.sign() < 0 && ring_->field().kind() == FieldKind::rationals) {
                out += "-";
                cc = -cc;
            }
        } else {
            if (cc.sign() < 0 && ring_->field().kind() == FieldKind::rationals) {
                out += " - ";
                cc = -cc;
            } else {
                out += " + ";
            }
        }
        first = false;
        if (m.is_one()) {
            out += cc.to_string();
        } else if (cc.is_one()) {
            out += m.to_string(ring_->names());
        } else {
            out += cc.to_string() + "*" + m.to_string(ring_->names());
        }
    }
    return out;
}

bool Point::is_origin() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

}  // namespace arckit
