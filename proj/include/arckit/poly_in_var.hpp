#ifndef ARCKIT_POLY_IN_VAR_HPP
#define ARCKIT_POLY_IN_VAR_HPP

#include <cstdint>
#include <vector>

#include "arckit/series.hpp"

namespace arckit {

// Polynomial in one distinguished ring variable whose coefficients are series
// in the remaining variables (their support never touches the variable).
class PolyInVar {
  public:
    PolyInVar(std::uint32_t var, RingPtr ring) : var_(var), ring_(std::move(ring)) {}

    // Regroup a series by powers of x_var.
    static PolyInVar from_series(const Series& f, std::uint32_t var);

    std::uint32_t var() const { return var_; }
    const RingPtr& ring() const { return ring_; }

    // Degree of the top stored coefficient; coefficients above it are zero.
    // trim() drops zero leading coefficients.
    std::uint32_t degree() const {
        return coeffs_.empty() ? 0 : static_cast<std::uint32_t>(coeffs_.size()) - 1;
    }
    bool is_zero() const;
    const Series& coeff(std::uint32_t i) const;
    const std::vector<Series>& coeffs() const { return coeffs_; }
    void set_coeff(std::uint32_t i, Series c);
    void trim();

    bool is_monic() const;

    Series to_series() const;  // multiply back by powers of x_var

    PolyInVar operator+(const PolyInVar& o) const;
    PolyInVar operator-(const PolyInVar& o) const;
    PolyInVar operator*(const PolyInVar& o) const;

    std::string to_string() const;

  private:
    std::uint32_t var_;
    RingPtr ring_;
    std::vector<Series> coeffs_;  // coeffs_[i] multiplies x_var^i
};

}  // namespace arckit

#endif
