#ifndef ARCKIT_JETS_HPP
#define ARCKIT_JETS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "arckit/curvesel.hpp"
#include "arckit/elimination.hpp"
#include "arckit/series.hpp"

namespace arckit {

// Coordinates of arcs truncated at t^M on an affine variety: one coordinate
// a_{i,j} per base variable i and t-power j, laid out t-degree major
// (flat(i, j) = j*n + i) so level-M' equations are a prefix of level-M ones.
class JetRing {
  public:
    JetRing(RingPtr base_ring, std::uint32_t level);

    const RingPtr& base() const { return base_; }
    const RingPtr& ring() const { return jet_; }
    std::uint32_t level() const { return level_; }

    std::uint32_t flat_index(std::uint32_t base_var, std::uint32_t t_power) const;
    std::string coordinate_name(std::uint32_t base_var, std::uint32_t t_power) const;

  private:
    RingPtr base_;
    RingPtr jet_;
    std::uint32_t level_;
};

// Equations of the level-M jet scheme of V(generators): the t^0..t^M
// coefficients of each generator under x_i -> sum_j a_{i,j} t^j, ordered
// t-degree major (all generators' t^0 rows first, then t^1, ...).
IdealPresentation jet_equations(const JetRing& jets,
                                const std::vector<Series>& generators);

// Polynomial truncation of an arc on the variety; construction checks the
// jet equations and throws GammaNotOnN on failure.
class TruncatedArcPoint {
  public:
    TruncatedArcPoint(const JetRing& jets, const std::vector<Series>& base_generators,
                      std::vector<std::vector<Rational>> coefficients);

    const std::vector<std::vector<Rational>>& coefficients() const { return coeffs_; }
    Point as_point(const JetRing& jets) const;

  private:
    std::vector<std::vector<Rational>> coeffs_;  // [base var][t power]
};

// Deformation of gamma: for each base variable the t-coefficients as series
// in s; the s = 0 fibre is gamma itself.
struct ArcFamily {
    std::vector<std::vector<Series>> coefficients;  // [base var][t power]
    std::uint32_t ramification = 1;

    std::string component_string(std::uint32_t base_var,
                                 const std::vector<std::string>& base_names) const;
};

struct ArcSelection {
    ArcFamily family;
    Arc jet_arc;            // the arc over the jet coordinates
    Certificate certificate;
    IdealPresentation n_full;  // assembled N over the jet coordinates
    IdealPresentation z_full;  // assembled Z over the jet coordinates
};

// Assemble N = jet equations + extra equations, Z = jet equations + Z_extra,
// base point = the coefficient vector of gamma, and delegate to curve_select.
ArcSelection arc_curve_select(const JetRing& jets,
                              const std::vector<Series>& base_generators,
                              const std::vector<Series>& n_extra,
                              const std::vector<Series>& z_extra,
                              const TruncatedArcPoint& gamma,
                              std::uint32_t arc_order,
                              const CurveSelectOptions& options = {});

struct StablePresentationReport {
    bool valid = true;
    std::size_t generator_count = 0;
    std::vector<std::string> support;  // jet coordinates actually used
    std::string message;

    std::string to_string() const;
};

// Validate that the extra equations form a finite polynomial presentation in
// the level-M jet coordinates and report their support.
StablePresentationReport check_generically_stable_presentation(
    const JetRing& jets, const std::vector<Series>& n_extra);

}  // namespace arckit

#endif
