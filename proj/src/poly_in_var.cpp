#include "arckit/poly_in_var.hpp"

#include "arckit/errors.hpp"

namespace arckit {

PolyInVar PolyInVar::from_series(const Series& f, std::uint32_t var) {
    PolyInVar out(var, f.ring());
    for (const auto& [m, c] : f.terms()) {
        std::uint32_t e = m.exponent_of(var);
        Series piece = Series::monomial(f.ring(), m.without(var), c);
        if (e < out.coeffs_.size())
            out.coeffs_[e] = out.coeffs_[e] + piece;
        else
            out.set_coeff(e, std::move(piece));
    }
    out.trim();
    return out;
}

bool PolyInVar::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

const Series& PolyInVar::coeff(std::uint32_t i) const {
    if (i >= coeffs_.size()) throw DimensionMismatch("coefficient index beyond degree");
    return coeffs_[i];
}

void PolyInVar::set_coeff(std::uint32_t i, Series c) {
    if (coeffs_.size() <= i) coeffs_.resize(i + 1, Series::zero(ring_));
    coeffs_[i] = std::move(c);
}

void PolyInVar::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool PolyInVar::is_monic() const {
    if (coeffs_.empty()) return false;
    const Series& top = coeffs_.back();
    return top.term_count() == 1 && top.constant_term().is_one();
}

Series PolyInVar::to_series() const {
    Series acc(ring_);
    for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (i == 0) {
            acc = acc + coeffs_[i];
        } else {
            Series xi = Series::monomial(ring_, Monomial::variable(var_, i), Rational(1));
            acc = acc + coeffs_[i] * xi;
        }
    }
    return acc;
}

PolyInVar PolyInVar::operator+(const PolyInVar& o) const {
    PolyInVar out(var_, ring_);
    const std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        Series c = Series::zero(ring_);
        if (i < coeffs_.size()) c = c + coeffs_[i];
        if (i < o.coeffs_.size()) c = c + o.coeffs_[i];
        out.set_coeff(static_cast<std::uint32_t>(i), std::move(c));
    }
    out.trim();
    return out;
}

PolyInVar PolyInVar::operator-(const PolyInVar& o) const {
    PolyInVar out(var_, ring_);
    const std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        Series c = Series::zero(ring_);
        if (i < coeffs_.size()) c = c + coeffs_[i];
        if (i < o.coeffs_.size()) c = c - o.coeffs_[i];
        out.set_coeff(static_cast<std::uint32_t>(i), std::move(c));
    }
    out.trim();
    return out;
}

PolyInVar PolyInVar::operator*(const PolyInVar& o) const {
    PolyInVar out(var_, ring_);
    if (is_zero() || o.is_zero()) return out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            if (o.coeffs_[j].is_zero()) continue;
            std::uint32_t k = static_cast<std::uint32_t>(i + j);
            Series prod = coeffs_[i] * o.coeffs_[j];
            if (k < out.coeffs_.size())
                out.coeffs_[k] = out.coeffs_[k] + prod;
            else
                out.set_coeff(k, std::move(prod));
        }
    }
    out.trim();
    return out;
}



std::string PolyInVar::to_string() const { return to_series().to_string(); }

}  // namespace arckit
