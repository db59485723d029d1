#ifndef ARCKIT_LINEAR_CHANGE_HPP
#define ARCKIT_LINEAR_CHANGE_HPP

#include <cstdint>
#include <vector>

#include "arckit/series.hpp"

namespace arckit {

// Invertible linear change of variables with an exactly computed inverse.
// Applying the change substitutes x_i -> sum_j M[i][j] * x_j.
class LinearChange {
  public:
    static LinearChange identity(std::uint32_t n, const Field& field);
    // General constructor; computes the inverse by exact elimination and
    // throws Error when the matrix is singular.
    static LinearChange from_matrix(std::vector<std::vector<Rational>> m,
                                    const Field& field);
    // Change sending the d-th basis direction to v and fixing the complement:
    // x_i -> x_i + v_i x_d for i != d, x_d -> v_d x_d. Requires v_d != 0.
    static LinearChange regularizing(const std::vector<Rational>& v,
                                     std::uint32_t d, const Field& field);

    std::uint32_t dimension() const { return n_; }
    bool is_identity() const;
    const std::vector<std::vector<Rational>>& matrix() const { return fwd_; }
    const std::vector<std::vector<Rational>>& inverse_matrix() const { return inv_; }

    LinearChange inverted() const;

    Series apply(const Series& f) const;  // f(Mx)

    // Transform a vector of univariate components: out_i = sum_j M[i][j] c_j.
    std::vector<Series> apply_to_components(const std::vector<Series>& comps) const;

  private:
    LinearChange(std::vector<std::vector<Rational>> f,
                 std::vector<std::vector<Rational>> i, Field field);
    Series apply_matrix(const Series& f,
                        const std::vector<std::vector<Rational>>& m) const;

    std::uint32_t n_;
    Field field_;
    std::vector<std::vector<Rational>> fwd_;
    std::vector<std::vector<Rational>> inv_;
};

}  // namespace arckit

#endif
