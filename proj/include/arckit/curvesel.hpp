#ifndef ARCKIT_CURVESEL_HPP
#define ARCKIT_CURVESEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arckit/elimination.hpp"
#include "arckit/series.hpp"

namespace arckit {

// A truncated formal arc: one univariate series in the parameter s per
// ambient variable, plus the ramification index accumulated across lifts
// (an intermediate parameter t satisfied t = s^e).
struct Arc {
    RingPtr s_ring;                 // univariate, truncation order T_s
    std::vector<Series> components; // indexed like the ambient variables
    std::uint32_t ramification = 1;
};

// Machine-checkable evidence for the conclusion: base-point match, vanishing
// of every N-generator along the arc beyond s^{T_s}, and one Z-generator
// whose pullback survives. nullopt vanishing order means "zero modulo
// s^{T_s+1}", the only value a valid certificate may carry.
struct Certificate {
    Point base_point;
    std::vector<std::optional<std::uint32_t>> vanishing_orders;
    std::uint32_t witness_index = 0;
    Series witness_series;
    std::string chain_summary;
    std::uint32_t trunc_order;  // ambient T
    std::uint32_t arc_order;    // T_s

    Certificate() : witness_series(RingPtr()) {}
};

struct SelectedLine {
    std::vector<Rational> direction;  // full-length vector, zero off the base
    std::size_t generator_index;      // the Z_r generator that certified it
};

// Direction v with g_{k0}(v) != 0 for the minimal-order generator g of Z_r,
// searched over integer vectors supported on base_vars by increasing
// max-norm. Throws ZIsEverything when Z_r has no nonzero generator.
SelectedLine select_line(const IdealPresentation& z_image,
                         const std::vector<std::uint32_t>& base_vars,
                         std::uint32_t search_bound = 16);

struct CurveSelectOptions {
    std::uint32_t search_bound = 16;
    std::optional<std::uint32_t> max_steps;
    std::uint32_t max_ramification = 64;
    // line directions tried before the search gives up; the enumeration order
    // is fixed, so the first direction whose lift succeeds wins
    std::uint32_t max_line_candidates = 64;
};

struct CurveSelection {
    Arc arc;
    Certificate certificate;
    ProjectionChain chain;
};

// End-to-end pipeline: translate the base point to the origin, project the
// codimension away, select a line avoiding the projected Z, lift it back up
// the chain by iterated univariate root finding with depth-first backtracking
// over branches, and emit the certified arc. Generators of N and Z must be
// exact polynomials.
CurveSelection curve_select(const IdealPresentation& n_set,
                            const IdealPresentation& z_set, const Point& base,
                            std::uint32_t arc_order,
                            const CurveSelectOptions& options = {});

struct VerifyCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& detail = "");
    std::string to_string() const;
};

// Independent checker: recomputes the base point, every vanishing order and
// the witness from scratch using only core substitution. Shares no code with
// curve_select beyond the series ring itself.
VerifyReport verify_certificate(const IdealPresentation& n_set,
                                const IdealPresentation& z_set, const Point& base,
                                const Arc& arc, const Certificate& cert);

}  // namespace arckit

#endif
