#ifndef ARCKIT_CERTIFICATE_DOC_HPP
#define ARCKIT_CERTIFICATE_DOC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arckit/curvesel.hpp"
#include "arckit/field.hpp"

namespace arckit {

// Series rendered as ordered (exponent, numerator, denominator) triples.
struct SeriesTriples {
    std::vector<std::tuple<std::uint32_t, Rational>> terms;  // exponent, value

    bool operator==(const SeriesTriples& o) const { return terms == o.terms; }
};

// Self-contained, bit-exact certificate document: everything the independent
// checker needs (inputs included), exact integers only.
struct CertificateDocument {
    std::string command_echo;
    std::string options_echo;
    Field field = Field::rationals();
    std::vector<std::string> var_names;
    std::uint32_t trunc = 0;
    std::uint32_t arc_order = 0;
    std::uint32_t ramification = 1;
    std::vector<Rational> base_point;
    std::vector<SeriesTriples> components;                   // one per variable
    std::vector<std::optional<std::uint32_t>> vanishing;     // nullopt: beyond T_s
    std::uint32_t witness_index = 0;
    SeriesTriples witness;
    std::string chain_summary;
    std::vector<std::string> n_polys;  // script-grammar renderings
    std::vector<std::string> z_polys;

    bool operator==(const CertificateDocument& o) const;
};

SeriesTriples series_to_triples(const Series& s);
Series triples_to_series(const SeriesTriples& t, const RingPtr& univariate_ring);

// Canonical rendering: identical documents serialize to identical bytes and
// parse(serialize(d)) == d.
std::string serialize_certificate(const CertificateDocument& doc);
CertificateDocument parse_certificate(const std::string& text);  // throws ParseError

// Assemble a document from a pipeline result.
CertificateDocument make_certificate_document(
    const std::string& command_echo, const std::string& options_echo,
    const IdealPresentation& n_set, const IdealPresentation& z_set,
    const Point& base, const Arc& arc, const Certificate& cert);

// Rebuild the checker's inputs from a parsed document.
struct RebuiltCertificate {
    RingPtr ring;
    IdealPresentation n_set;
    IdealPresentation z_set;
    Point base;
    Arc arc;
    Certificate cert;
};
RebuiltCertificate rebuild_certificate(const CertificateDocument& doc);

}  // namespace arckit

#endif
