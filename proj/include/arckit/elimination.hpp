#ifndef ARCKIT_ELIMINATION_HPP
#define ARCKIT_ELIMINATION_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arckit/poly_in_var.hpp"
#include "arckit/series.hpp"
#include "arckit/weierstrass.hpp"

namespace arckit {

// Finite presentation of a closed set by series generators. Generators that
// are zero modulo m^{T+1} are dropped on construction; an empty list presents
// the whole space.
class IdealPresentation {
  public:
    IdealPresentation(RingPtr ring, std::vector<Series> gens);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Series>& generators() const { return gens_; }
    bool is_whole_space() const { return gens_.empty(); }
    bool has_nonzero_generator() const { return !gens_.empty(); }

    IdealPresentation transformed(const LinearChange& change) const;

  private:
    RingPtr ring_;
    std::vector<Series> gens_;
};

// Sylvester resultant of two polynomials in the same variable, together with
// cofactors A, B satisfying A*P + B*R = Res identically in the truncated
// coefficient ring. The identity is re-expanded and checked on every call.
struct ResultantWithCofactors {
    Series resultant;
    PolyInVar cof_p;
    PolyInVar cof_r;
    bool identity_checked;
};

ResultantWithCofactors sylvester_resultant(const PolyInVar& p, const PolyInVar& r);

// One emitted image generator with its membership evidence.
struct ImageGenerator {
    std::size_t source_index;  // generator of the input presentation
    Series value;              // the resultant (or the x_d-free remainder^k)
    PolyInVar remainder;       // reduced form of the source generator
    ResultantWithCofactors certificate;
};

struct EliminationResult {
    IdealPresentation image;
    std::vector<ImageGenerator> emitted;
    std::size_t dropped_exact_zero = 0;   // remainders/resultants exactly zero
    std::size_t dropped_truncated = 0;    // zero modulo m^{T+1} only
};

// Project out variable d using the prepared generator at source_index: every
// other generator is reduced to its division remainder modulo that generator
// and the Sylvester resultant with the Weierstrass polynomial is emitted.
// The resultants generate a sub-ideal of the image ideal; membership, not
// exactness, is the contract.
EliminationResult eliminate_variable(const IdealPresentation& ideal,
                                     const WeierstrassFactorization& prep,
                                     std::optional<std::size_t> source_index);

// Substitute 0 for every variable in vars.
Series evaluate_at_zero(const Series& f, const std::set<std::uint32_t>& vars);

struct ProjectionStep {
    LinearChange change;
    std::uint32_t var;
    WeierstrassFactorization prep;
    std::size_t chosen_generator;    // index before elimination
    std::size_t dropped_truncated;   // image generators lost to truncation
    std::vector<ImageGenerator> emitted_n;  // membership records, N image
    std::vector<ImageGenerator> emitted_z;  // membership records, Z image
};

struct ProjectionChain {
    std::vector<ProjectionStep> steps;
    std::vector<std::uint32_t> final_base_vars;
    IdealPresentation image_Z;
    bool truncation_caveat = false;
    std::string caveat_note;

    std::string digest(const Ring& ring) const;
};

struct ChainOptions {
    std::uint32_t search_bound = 16;
    std::optional<std::uint32_t> max_steps;  // default: number of N-generators
};

// Iterate regularize / prepare / eliminate on the minimal-order generator of
// the N-image until no generator survives; Z is carried through the same
// projections. Throws ZIsEverything when the final Z-image has no nonzero
// generator, BudgetExhausted past the step budget.
ProjectionChain project_chain(const IdealPresentation& n_set,
                              const IdealPresentation& z_set,
                              const ChainOptions& options = {});

}  // namespace arckit

#endif
