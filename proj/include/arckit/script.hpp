#ifndef ARCKIT_SCRIPT_HPP
#define ARCKIT_SCRIPT_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arckit/field.hpp"
#include "arckit/series.hpp"

namespace arckit {

struct SourceLoc {
    int line = 1;
    int column = 1;
};

// Polynomial expression tree; names are resolved against a ring only when a
// command runs, so declarations may reference jet coordinates that exist
// only at a level chosen later in the script.
struct PolyExpr {
    enum class Kind { number, variable, add, sub, mul, neg, pow };
    Kind kind;
    SourceLoc loc;
    Rational value;                        // number
    std::string name;                      // variable
    std::shared_ptr<const PolyExpr> lhs;
    std::shared_ptr<const PolyExpr> rhs;   // binary ops
    unsigned long exponent = 0;            // pow
};
using PolyExprPtr = std::shared_ptr<const PolyExpr>;

struct RingDecl {
    Field field = Field::rationals();
    std::vector<std::string> vars;
    std::uint32_t trunc = 0;
};

struct IdealDecl {
    std::string name;
    std::vector<PolyExprPtr> polys;
    SourceLoc loc;
};

struct PointDecl {
    std::string name;
    std::vector<Rational> coords;
    SourceLoc loc;
};

struct ArcDecl {
    std::string name;
    std::vector<PolyExprPtr> polys_in_t;
    SourceLoc loc;
};

struct CmdCurvesel {
    std::string n, z, point;
    std::uint32_t order;
};
struct CmdWdiv {
    PolyExprPtr g, f;
    std::string var;
};
struct CmdWprep {
    PolyExprPtr f;
    std::string var;
};
struct CmdEliminate {
    std::string ideal;
    std::string var;
};
struct CmdJets {
    std::string ideal;
    std::uint32_t order;
};
struct CmdArcsel {
    std::string variety, n_extra, z_extra, gamma;
    std::uint32_t level;
    std::uint32_t order;
};
struct CmdVerify {
    std::string path;
};

using Command = std::variant<CmdCurvesel, CmdWdiv, CmdWprep, CmdEliminate, CmdJets,
                             CmdArcsel, CmdVerify>;

struct Script {
    RingDecl ring;
    std::vector<IdealDecl> ideals;
    std::vector<PointDecl> points;
    std::vector<ArcDecl> arcs;
    Command command;

    const IdealDecl* find_ideal(const std::string& name) const;
    const PointDecl* find_point(const std::string& name) const;
    const ArcDecl* find_arc(const std::string& name) const;
};

// Recursive-descent parse of the script grammar; throws ParseError with a
// precise location and the expected-token set.
Script parse_script(const std::string& text);

// Parse a single polynomial expression (the rendering grammar used inside
// certificate documents).
PolyExprPtr parse_polynomial_text(const std::string& text);

// Evaluate an expression tree in a ring. resolve maps a variable name to its
// index; unresolvable names and polynomials that do not fit below the
// truncation raise Error with the source location in the message.
Series bind_poly(const PolyExprPtr& expr, const RingPtr& ring,
                 const std::function<std::optional<std::uint32_t>(const std::string&)>&
                     resolve);

}  // namespace arckit

#endif
