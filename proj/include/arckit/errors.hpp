#ifndef ARCKIT_ERRORS_HPP
#define ARCKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arckit {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input / structural errors ------------------------------------------

struct MismatchedRing : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotPolynomial : Error {
    using Error::Error;
};

struct SubstitutionNotFinite : Error {
    using Error::Error;
};

// --- mathematical failures ----------------------------------------------

struct ZeroSeries : Error {
    using Error::Error;
};

struct NotRegular : Error {
    using Error::Error;
};

struct SearchExhausted : Error {
    using Error::Error;
};

struct BudgetExhausted : Error {
    using Error::Error;
};

struct ZIsEverything : Error {
    using Error::Error;
};

// Carries a textual rendering of the unsolvable characteristic polynomial,
// so the caller can switch fields or extend the corpus.
struct AlgebraicExtensionRequired : Error {
    std::string obstruction;
    AlgebraicExtensionRequired(const std::string& msg, std::string poly)
        : Error(msg), obstruction(std::move(poly)) {}
};

struct TruncationTooCoarse : Error {
    using Error::Error;
};

struct PointNotOnN : Error {
    using Error::Error;
};

struct NoBranchAvoidsZ : Error {
    using Error::Error;
};

struct GammaNotOnN : Error {
    using Error::Error;
};

// Script-language parse failure with a precise source location.
struct ParseError : Error {
    int line;
    int column;
    std::string expected;
    ParseError(const std::string& msg, int ln, int col, std::string exp = {})
        : Error(msg), line(ln), column(col), expected(std::move(exp)) {}
};

}  // namespace arckit

#endif
