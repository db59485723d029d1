#include "arckit/linear_change.hpp"

#include "arckit/errors.hpp"

namespace arckit {

LinearChange::LinearChange(std::vector<std::vector<Rational>> f,
                           std::vector<std::vector<Rational>> i, Field field)
    : n_(static_cast<std::uint32_t>(f.size())),
      field_(std::move(field)),
      fwd_(std::move(f)),
      inv_(std::move(i)) {}

static std::vector<std::vector<Rational>> identity_matrix(std::uint32_t n) {
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (std::uint32_t i = 0; i < n; ++i) m[i][i] = Rational(1);
    return m;
}

LinearChange LinearChange::identity(std::uint32_t n, const Field& field) {
    return LinearChange(identity_matrix(n), identity_matrix(n), field);
}

LinearChange LinearChange::from_matrix(std::vector<std::vector<Rational>> m,
                                       const Field& field) {
    const std::uint32_t n = static_cast<std::uint32_t>(m.size());
    for (auto& row : m) {
        if (row.size() != n) throw DimensionMismatch("matrix is not square");
        for (auto& e : row) e = field.reduce(e);
    }
    // Gauss-Jordan with exact arithmetic.
    auto a = m;
    auto inv = identity_matrix(n);
    for (std::uint32_t col = 0; col < n; ++col) {
        std::uint32_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw Error("linear change matrix is singular");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rational pinv = field.inv(a[col][col]);
        for (std::uint32_t j = 0; j < n; ++j) {
            a[col][j] = field.mul(a[col][j], pinv);
            inv[col][j] = field.mul(inv[col][j], pinv);
        }
        for (std::uint32_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational factor = a[r][col];
            for (std::uint32_t j = 0; j < n; ++j) {
                a[r][j] = field.sub(a[r][j], field.mul(factor, a[col][j]));
                inv[r][j] = field.sub(inv[r][j], field.mul(factor, inv[col][j]));
            }
        }
    }
    return LinearChange(std::move(m), std::move(inv), field);
}

LinearChange LinearChange::regularizing(const std::vector<Rational>& v,
                                        std::uint32_t d, const Field& field) {
    const std::uint32_t n = static_cast<std::uint32_t>(v.size());
    if (d >= n) throw DimensionMismatch("distinguished index out of range");
    if (v[d].is_zero()) throw Error("regularizing vector must have v_d != 0");
    auto fwd = identity_matrix(n);
    auto inv = identity_matrix(n);
    Rational vd_inv = field.inv(v[d]);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (i == d) {
            fwd[d][d] = field.reduce(v[d]);
            inv[d][d] = vd_inv;
        } else {
            fwd[i][d] = field.reduce(v[i]);
            inv[i][d] = field.neg(field.mul(v[i], vd_inv));
        }
    }
    return LinearChange(std::move(fwd), std::move(inv), field);
}

bool LinearChange::is_identity() const {
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) {
            if (i == j && !fwd_[i][j].is_one()) return false;
            if (i != j && !fwd_[i][j].is_zero()) return false;
        }
    return true;
}

LinearChange LinearChange::inverted() const { return LinearChange(inv_, fwd_, field_); }

Series LinearChange::apply_matrix(const Series& f,
                                  const std::vector<std::vector<Rational>>& m) const {
    if (f.ring()->num_vars() != n_)
        throw DimensionMismatch("linear change dimension does not match ring");
    std::vector<Series> images;
    images.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        Series form(f.ring());
        for (std::uint32_t j = 0; j < n_; ++j) {
            if (m[i][j].is_zero()) continue;
            form = form + Series::variable(f.ring(), j).scaled(m[i][j]);
        }
        images.push_back(std::move(form));
    }
    return f.substitute(images);
}

Series LinearChange::apply(const Series& f) const { return apply_matrix(f, fwd_); }

std::vector<Series> LinearChange::apply_to_components(
    const std::vector<Series>& comps) const {
    if (comps.size() != n_)
        throw DimensionMismatch("component count does not match change dimension");
    std::vector<Series> out;
    out.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        Series acc(comps[i].ring());
        for (std::uint32_t j = 0; j < n_; ++j) {
            if (fwd_[i][j].is_zero()) continue;
            acc = acc + comps[j].scaled(fwd_[i][j]);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace arckit
