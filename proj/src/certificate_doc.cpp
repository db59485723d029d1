#include "arckit/certificate_doc.hpp"

#include <sstream>

#include "arckit/errors.hpp"
#include "arckit/script.hpp"

namespace arckit {

bool CertificateDocument::operator==(const CertificateDocument& o) const {
    return command_echo == o.command_echo && options_echo == o.options_echo &&
           field == o.field && var_names == o.var_names && trunc == o.trunc &&
           arc_order == o.arc_order && ramification == o.ramification &&
           base_point == o.base_point && components == o.components &&
           vanishing == o.vanishing && witness_index == o.witness_index &&
           witness == o.witness && chain_summary == o.chain_summary &&
           n_polys == o.n_polys && z_polys == o.z_polys;
}

SeriesTriples series_to_triples(const Series& s) {
    SeriesTriples out;
    for (const auto& [m, c] : s.terms()) {
        std::uint32_t e = m.is_one() ? 0 : m.factors()[0].second;
        out.terms.emplace_back(e, c);
    }
    return out;
}

Series triples_to_series(const SeriesTriples& t, const RingPtr& ring) {
    std::map<Monomial, Rational, MonomialOrder> terms;
    for (const auto& [e, c] : t.terms) {
        if (e > ring->trunc_order())
            throw Error("certificate term beyond the stated arc order");
        Monomial m = e == 0 ? Monomial::one() : Monomial::variable(0, e);
        terms.emplace(m, ring->field().reduce(c));
    }
    return Series::from_terms(ring, std::move(terms), /*exact=*/false);
}

namespace {

std::string render_triples(const SeriesTriples& t) {
    if (t.terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : t.terms) {
        if (!out.empty()) out += " ";
        out += "(" + std::to_string(e) + "," + c.num_string() + "," +
               c.den_string() + ")";
    }
    return out;
}

}  // namespace

std::string serialize_certificate(const CertificateDocument& doc) {
    std::ostringstream out;
    out << "arckit certificate v1\n";
    out << "command: " << doc.command_echo << "\n";
    out << "options: " << doc.options_echo << "\n";
    out << "field: " << doc.field.to_string() << "\n";
    out << "vars:";
    for (const auto& v : doc.var_names) out << " " << v;
    out << "\n";
    out << "trunc: " << doc.trunc << "\n";
    out << "arc-order: " << doc.arc_order << "\n";
    out << "ramification: " << doc.ramification << "\n";
    out << "base-point:";
    for (const auto& c : doc.base_point) out << " " << c.to_string();
    out << "\n";
    for (std::size_t i = 0; i < doc.components.size(); ++i)
        out << "component " << doc.var_names.at(i) << ": "
            << render_triples(doc.components[i]) << "\n";
    for (const auto& v : doc.vanishing)
        out << "vanishing: " << (v ? std::to_string(*v) : std::string("beyond"))
            << "\n";
    out << "witness-index: " << doc.witness_index << "\n";
    out << "witness: " << render_triples(doc.witness) << "\n";
    out << "chain: " << doc.chain_summary << "\n";
    for (const auto& p : doc.n_polys) out << "N: " << p << "\n";
    for (const auto& p : doc.z_polys) out << "Z: " << p << "\n";
    out << "end\n";
    return out.str();
}

namespace {

class DocReader {
  public:
    explicit DocReader(const std::string& text) : in_(text) {}

    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line))
            throw ParseError("certificate document ends early", line_no_, 1,
                             "more document lines");
        ++line_no_;
        return line;
    }

    bool peek_prefix(const std::string& prefix) {
        std::streampos pos = in_.tellg();
        std::string line;
        bool ok = static_cast<bool>(std::getline(in_, line));
        in_.clear();
        in_.seekg(pos);
        return ok && line.rfind(prefix, 0) == 0;
    }

    std::string expect_prefix(const std::string& prefix) {
        std::string line = next_line();
        if (line.rfind(prefix, 0) != 0)
            throw ParseError("expected line starting with '" + prefix + "'",
                             line_no_, 1, prefix);
        return line.substr(prefix.size());
    }

    int line_no() const { return line_no_; }

  private:
    std::istringstream in_;
    int line_no_ = 0;
};

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::uint32_t parse_u32(const std::string& s, int line) {
    if (s.empty() || s.size() > 9)
        throw ParseError("expected an integer, found '" + s + "'", line, 1,
                         "integer");
    for (char c : s)
        if (c < '0' || c > '9')
            throw ParseError("expected an integer, found '" + s + "'", line, 1,
                             "integer");
    return static_cast<std::uint32_t>(std::stoul(s));
}

SeriesTriples parse_triples(const std::string& body, int line) {
    SeriesTriples out;
    std::string s = body;
    // body is "0" or "(e,n,d) (e,n,d) ..."
    std::size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < s.size() && s[pos] == ' ') ++pos;
    };
    skip_ws();
    if (pos < s.size() && s[pos] == '0' && pos + 1 >= s.size()) return out;
    while (pos < s.size()) {
        skip_ws();
        if (pos >= s.size()) break;
        if (s[pos] != '(')
            throw ParseError("expected '(' in series triples", line, 1, "'('");
        std::size_t close = s.find(')', pos);
        if (close == std::string::npos)
            throw ParseError("unterminated series triple", line, 1, "')'");
        std::string inner = s.substr(pos + 1, close - pos - 1);
        pos = close + 1;
        std::size_t c1 = inner.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                 : inner.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError("series triple needs exponent, numerator, denominator",
                             line, 1, "(e,n,d)");
        std::uint32_t e = parse_u32(inner.substr(0, c1), line);
        Rational num(inner.substr(c1 + 1, c2 - c1 - 1));
        Rational den(inner.substr(c2 + 1));
        if (den.is_zero())
            throw ParseError("zero denominator in series triple", line, 1, "(e,n,d)");
        out.terms.emplace_back(e, num / den);
    }
    return out;
}

}  // namespace

CertificateDocument parse_certificate(const std::string& text) {
    DocReader reader(text);
    CertificateDocument doc;
    std::string header = reader.next_line();
    if (header != "arckit certificate v1")
        throw ParseError("not an arckit certificate document", 1, 1,
                         "arckit certificate v1");
    doc.command_echo = reader.expect_prefix("command: ");
    doc.options_echo = reader.expect_prefix("options: ");
    std::string field_word = reader.expect_prefix("field: ");
    if (field_word == "Q") {
        doc.field = Field::rationals();
    } else {
        auto words = split_words(field_word);
        if (words.size() != 2 || words[0] != "F")
            throw ParseError("unknown field descriptor '" + field_word + "'",
                             reader.line_no(), 1, "Q or F <p>");
        try {
            doc.field = Field::prime(std::stoull(words[1]));
        } catch (const std::exception& e) {
            throw ParseError(e.what(), reader.line_no(), 1, "prime");
        }
    }
    doc.var_names = split_words(reader.expect_prefix("vars:"));
    if (doc.var_names.empty())
        throw ParseError("certificate lists no variables", reader.line_no(), 1,
                         "variable names");
    doc.trunc = parse_u32(reader.expect_prefix("trunc: "), reader.line_no());
    doc.arc_order = parse_u32(reader.expect_prefix("arc-order: "), reader.line_no());
    doc.ramification =
        parse_u32(reader.expect_prefix("ramification: "), reader.line_no());
    for (const auto& w : split_words(reader.expect_prefix("base-point:"))) {
        try {
            doc.base_point.emplace_back(w);
        } catch (const Error& e) {
            throw ParseError(e.what(), reader.line_no(), 1, "rational");
        }
    }
    if (doc.base_point.size() != doc.var_names.size())
        throw ParseError("base point length does not match the variables",
                         reader.line_no(), 1, "one coordinate per variable");
    for (const auto& name : doc.var_names) {
        std::string body = reader.expect_prefix("component " + name + ": ");
        doc.components.push_back(parse_triples(body, reader.line_no()));
    }
    while (reader.peek_prefix("vanishing: ")) {
        std::string body = reader.expect_prefix("vanishing: ");
        if (body == "beyond")
            doc.vanishing.push_back(std::nullopt);
        else
            doc.vanishing.push_back(parse_u32(body, reader.line_no()));
    }
    doc.witness_index =
        parse_u32(reader.expect_prefix("witness-index: "), reader.line_no());
    doc.witness = parse_triples(reader.expect_prefix("witness: "), reader.line_no());
    doc.chain_summary = reader.expect_prefix("chain: ");
    while (reader.peek_prefix("N: "))
        doc.n_polys.push_back(reader.expect_prefix("N: "));
    while (reader.peek_prefix("Z: "))
        doc.z_polys.push_back(reader.expect_prefix("Z: "));
    std::string tail = reader.next_line();
    if (tail != "end")
        throw ParseError("expected the 'end' marker", reader.line_no(), 1, "end");
    if (doc.vanishing.size() != doc.n_polys.size())
        throw ParseError("one vanishing claim per N generator required",
                         reader.line_no(), 1, "matching counts");
    return doc;
}

CertificateDocument make_certificate_document(
    const std::string& command_echo, const std::string& options_echo,
    const IdealPresentation& n_set, const IdealPresentation& z_set,
    const Point& base, const Arc& arc, const Certificate& cert) {
    CertificateDocument doc;
    doc.command_echo = command_echo;
    doc.options_echo = options_echo;
    doc.field = n_set.ring()->field();
    doc.var_names = n_set.ring()->names();
    doc.trunc = cert.trunc_order;
    doc.arc_order = cert.arc_order;
    doc.ramification = arc.ramification;
    doc.base_point = base.coords();
    for (const auto& c : arc.components)
        doc.components.push_back(series_to_triples(c));
    doc.vanishing = cert.vanishing_orders;
    doc.witness_index = cert.witness_index;
    doc.witness = series_to_triples(cert.witness_series);
    doc.chain_summary = cert.chain_summary;
    for (const auto& f : n_set.generators()) doc.n_polys.push_back(f.to_string());
    for (const auto& g : z_set.generators()) doc.z_polys.push_back(g.to_string());
    return doc;
}

RebuiltCertificate rebuild_certificate(const CertificateDocument& doc) {
    RingPtr ring = make_ring(doc.field, doc.var_names, doc.trunc);
    RingPtr s_ring = make_ring(doc.field, {"s"}, doc.arc_order);

    auto resolve = [&](const std::string& name) -> std::optional<std::uint32_t> {
        for (std::uint32_t i = 0; i < ring->num_vars(); ++i)
            if (ring->name(i) == name) return i;
        return std::nullopt;
    };
    auto bind_list = [&](const std::vector<std::string>& texts) {
        std::vector<Series> out;
        for (const auto& t : texts)
            out.push_back(bind_poly(parse_polynomial_text(t), ring, resolve));
        return out;
    };

    RebuiltCertificate rebuilt{ring,
                               IdealPresentation(ring, bind_list(doc.n_polys)),
                               IdealPresentation(ring, bind_list(doc.z_polys)),
                               Point(doc.base_point),
                               Arc{},
                               Certificate{}};
    rebuilt.arc.s_ring = s_ring;
    rebuilt.arc.ramification = doc.ramification;
    for (const auto& t : doc.components)
        rebuilt.arc.components.push_back(triples_to_series(t, s_ring));
    rebuilt.cert.base_point = rebuilt.base;
    rebuilt.cert.vanishing_orders = doc.vanishing;
    rebuilt.cert.witness_index = doc.witness_index;
    rebuilt.cert.witness_series = triples_to_series(doc.witness, s_ring);
    rebuilt.cert.chain_summary = doc.chain_summary;
    rebuilt.cert.trunc_order = doc.trunc;
    rebuilt.cert.arc_order = doc.arc_order;
    return rebuilt;
}

}  // namespace arckit
