// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 4-6 and 8-10 exercise the command-line binary itself.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arckit/certificate_doc.hpp"
#include "arckit/curvesel.hpp"
#include "arckit/elimination.hpp"
#include "arckit/errors.hpp"
#include "arckit/jets.hpp"
#include "arckit/weierstrass.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace arckit;
using arckit::testing::naive_mul;
using arckit::testing::random_nonzero_series;
using arckit::testing::random_series;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion-%02d %s%s%s\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

struct CliRun {
    int exit_code;
    std::string document;
    std::string errors;
};

CliRun run_cli(const std::string& script, const std::string& tag,
               const std::string& flags = "") {
    std::string base = std::string("/tmp/arckit_acceptance_") + tag;
    std::string script_path = base + ".ak";
    std::string out_path = base + ".cert";
    std::string err_path = base + ".err";
    {
        std::ofstream out(script_path, std::ios::binary);
        out << script;
    }
    std::string cmd = std::string(ARCKIT_BIN) + " --script " + script_path +
                      " --out " + out_path + " --quiet " + flags + " 2> " +
                      err_path;
    int status = std::system(cmd.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    run.document = slurp(out_path);
    run.errors = slurp(err_path);
    return run;
}

std::string cusp_script(std::uint32_t order) {
    return "ring Q[x,y] trunc 8\nideal N = x^2 - y^3\nideal Z = x, y\n"
           "point a = (0,0)\ncurvesel N Z a order " +
           std::to_string(order) + "\n";
}

std::string chain_script(std::uint32_t k_max) {
    std::string vars = "x1";
    for (std::uint32_t k = 2; k <= k_max; ++k) vars += ",x" + std::to_string(k);
    std::string script = "ring Q[" + vars + "] trunc 12\nideal N = ";
    for (std::uint32_t k = 2; k <= k_max; ++k) {
        if (k > 2) script += ", ";
        script += "x1 - x" + std::to_string(k) + "^" + std::to_string(k);
    }
    script += "\nideal Z = x1";
    for (std::uint32_t k = 2; k <= k_max; ++k) script += ", x" + std::to_string(k);
    script += "\npoint a = (0";
    for (std::uint32_t k = 2; k <= k_max; ++k) script += ",0";
    script += ")\ncurvesel N Z a order 24\n";
    return script;
}

const char* kJetScript =
    "ring Q[x,y] trunc 8\nideal X = x^2 - y^3\nideal Ne = 0\nideal Ze = x2\n"
    "arc g = (0, t^2)\narcsel X Ne Ze g level 2 order 12\n";

std::optional<std::uint32_t> component_order(const CertificateDocument& doc,
                                             const std::string& var) {
    for (std::size_t i = 0; i < doc.var_names.size(); ++i) {
        if (doc.var_names[i] != var) continue;
        const auto& terms = doc.components[i].terms;
        if (terms.empty()) return std::nullopt;
        std::uint32_t best = std::get<0>(terms.front());
        for (const auto& t : terms) best = std::min(best, std::get<0>(t));
        return best;
    }
    return std::nullopt;
}

// independent re-check of one membership record: A*P + B*r == Res by
// expansion with the naive product
bool recheck_membership(const WeierstrassFactorization& prep,
                        const ImageGenerator& record) {
    const PolyInVar& p = prep.wpoly;
    const PolyInVar& r = record.remainder;
    const PolyInVar& a = record.certificate.cof_p;
    const PolyInVar& b = record.certificate.cof_r;
    RingPtr ring = p.ring();
    std::size_t deg = std::max(a.coeffs().size() + p.coeffs().size(),
                               b.coeffs().size() + r.coeffs().size());
    std::vector<Series> combo(deg + 1, Series::zero(ring));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < p.coeffs().size(); ++j)
            combo[i + j] = combo[i + j] + naive_mul(a.coeffs()[i], p.coeffs()[j]);
    for (std::size_t i = 0; i < b.coeffs().size(); ++i)
        for (std::size_t j = 0; j < r.coeffs().size(); ++j)
            combo[i + j] = combo[i + j] + naive_mul(b.coeffs()[i], r.coeffs()[j]);
    if (!(combo[0] == record.certificate.resultant)) return false;
    for (std::size_t i = 1; i < combo.size(); ++i)
        if (!combo[i].is_zero()) return false;
    return record.value == record.certificate.resultant;
}

RingPtr qring(std::vector<std::string> names, std::uint32_t t) {
    return make_ring(Field::rationals(), std::move(names), t);
}

void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (Field field : {Field::rationals(), Field::prime(10007)}) {
        std::mt19937_64 rng(101);
        std::uniform_int_distribution<std::uint32_t> nv(1, 4), tv(4, 12);
        for (int i = 0; i < 200 && ok; ++i) {
            std::uint32_t n = nv(rng), T = tv(rng);
            std::vector<std::string> names;
            for (std::uint32_t v = 0; v < n; ++v)
                names.push_back("x" + std::to_string(v + 1));
            auto r = make_ring(field, names, T);
            Series f = random_nonzero_series(rng, r, 5, 1);
            Series g = random_series(rng, r, 6);
            try {
                RegularizeResult reg = regularize(f, 0);
                Series fr = reg.change.apply(f);
                auto k = regular_order(fr, 0);
                WDivision div = wdivide(g, fr, 0);
                Series recombined =
                    naive_mul(div.quotient, fr) + div.remainder.to_series();
                if (!(recombined == g)) {
                    ok = false;
                    detail = "identity failed at instance " + std::to_string(i);
                }
                if (!div.remainder.is_zero() && div.remainder.degree() >= *k) {
                    ok = false;
                    detail = "remainder degree bound failed";
                }
            } catch (const Error& e) {
                ok = false;
                detail = e.what();
            }
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed > 60.0) {
        ok = false;
        detail = "exceeded 60 s";
    }
    report(1, "weierstrass-division-fuzz", ok,
           detail.empty() ? "400 instances, " + std::to_string(elapsed) + " s"
                          : detail);
}

void criterion_2() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<std::uint32_t> nv(1, 4), tv(4, 10);
    for (int i = 0; i < 100 && ok; ++i) {
        std::uint32_t n = nv(rng), T = tv(rng);
        std::vector<std::string> names;
        for (std::uint32_t v = 0; v < n; ++v)
            names.push_back("x" + std::to_string(v + 1));
        auto r = qring(names, T);
        Series f = random_nonzero_series(rng, r, 5, 1);
        try {
            RegularizeResult reg = regularize(f, 0);
            Series fr = reg.change.apply(f);
            WeierstrassFactorization wf = wprepare(fr, 0);
            if (wf.unit.constant_term().is_zero()) ok = false;
            if (!wf.wpoly.is_monic() || wf.wpoly.degree() != wf.order_k) ok = false;
            for (std::uint32_t j = 0; j < wf.order_k && ok; ++j)
                if (!wf.wpoly.coeff(j).constant_term().is_zero()) ok = false;
            if (!(naive_mul(wf.unit, wf.wpoly.to_series()) == fr)) {
                ok = false;
                detail = "round trip failed at instance " + std::to_string(i);
            }
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed > 30.0) {
        ok = false;
        detail = "exceeded 30 s";
    }
    report(2, "preparation-round-trip", ok,
           detail.empty() ? "100 instances, " + std::to_string(elapsed) + " s"
                          : detail);
}

void criterion_3() {
    bool ok = true;
    std::size_t records = 0;
    std::string detail;

    auto check_chain = [&](const IdealPresentation& n, const IdealPresentation& z) {
        try {
            ProjectionChain chain = project_chain(n, z);
            for (const auto& step : chain.steps) {
                for (const auto* list : {&step.emitted_n, &step.emitted_z}) {
                    for (const auto& record : *list) {
                        ++records;
                        if (!record.certificate.identity_checked ||
                            !recheck_membership(step.prep, record)) {
                            ok = false;
                            detail = "membership recheck failed";
                        }
                    }
                }
            }
        } catch (const ZIsEverything&) {
        }
    };

    {  // cusp
        auto r = qring({"x", "y"}, 12);
        Series x = Series::variable(r, 0), y = Series::variable(r, 1);
        check_chain(IdealPresentation(r, {x * x - y * y * y}),
                    IdealPresentation(r, {x, y}));
    }
    for (std::uint32_t kmax : {2u, 3u, 4u}) {  // coupled chains
        std::vector<std::string> names{"x1"};
        for (std::uint32_t k = 2; k <= kmax; ++k)
            names.push_back("x" + std::to_string(k));
        auto r = qring(names, 12);
        std::vector<Series> gens, origin;
        for (std::uint32_t k = 2; k <= kmax; ++k) {
            Series pw = Series::variable(r, k - 1);
            for (std::uint32_t e = 1; e < k; ++e)
                pw = pw * Series::variable(r, k - 1);
            gens.push_back(Series::variable(r, 0) - pw);
        }
        for (std::uint32_t v = 0; v < r->num_vars(); ++v)
            origin.push_back(Series::variable(r, v));
        check_chain(IdealPresentation(r, gens), IdealPresentation(r, origin));
    }
    {  // jet instance
        auto r = qring({"x", "y"}, 8);
        Series cusp = Series::variable(r, 0) * Series::variable(r, 0) -
                      Series::variable(r, 1) * Series::variable(r, 1) *
                          Series::variable(r, 1);
        JetRing jets(r, 2);
        IdealPresentation eqs = jet_equations(jets, {cusp});
        std::vector<Series> zgens = eqs.generators();
        zgens.push_back(Series::variable(jets.ring(), jets.flat_index(0, 2)));
        check_chain(eqs, IdealPresentation(jets.ring(), zgens));
    }
    if (records == 0) {
        ok = false;
        detail = "no membership records produced";
    }
    report(3, "resultant-membership", ok,
           detail.empty() ? std::to_string(records) + " records rechecked" : detail);
}

void criterion_4() {
    auto start = std::chrono::steady_clock::now();
    CliRun run = run_cli(cusp_script(12), "cusp12");
    bool ok = run.exit_code == 0;
    std::string detail = ok ? "" : ("exit " + std::to_string(run.exit_code));
    if (ok) {
        try {
            CertificateDocument doc = parse_certificate(run.document);
            auto ox = component_order(doc, "x");
            auto oy = component_order(doc, "y");
            if (!(ox && *ox == 3 && oy && *oy == 2)) {
                ok = false;
                detail = "component orders differ from (3, 2)";
            }
            RebuiltCertificate rc = rebuild_certificate(doc);
            VerifyReport rep =
                verify_certificate(rc.n_set, rc.z_set, rc.base, rc.arc, rc.cert);
            if (!rep.all_pass) {
                ok = false;
                detail = "independent checker rejected the certificate";
            }
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed > 5.0) {
        ok = false;
        detail = "exceeded 5 s";
    }
    report(4, "cusp-curve-selection", ok,
           detail.empty() ? "arc orders (3, 2), verified, " +
                                std::to_string(elapsed) + " s"
                          : detail);
}

void criterion_5() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    const std::uint32_t expect[] = {0, 0, 2, 6, 12};
    for (std::uint32_t kmax : {2u, 3u, 4u}) {
        CliRun run = run_cli(chain_script(kmax), "chain" + std::to_string(kmax));
        if (run.exit_code != 0) {
            ok = false;
            detail = "K=" + std::to_string(kmax) + " exit " +
                     std::to_string(run.exit_code);
            break;
        }
        CertificateDocument doc = parse_certificate(run.document);
        auto o = component_order(doc, "x1");
        if (!o || *o != expect[kmax]) {
            ok = false;
            detail = "K=" + std::to_string(kmax) + " x1-order " +
                     (o ? std::to_string(*o) : "none") + " != " +
                     std::to_string(expect[kmax]);
            break;
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed > 30.0) {
        ok = false;
        detail = "exceeded 30 s";
    }
    report(5, "ramified-chain-orders", ok,
           detail.empty() ? "orders 2, 6, 12, " + std::to_string(elapsed) + " s"
                          : detail);
}

void criterion_6() {
    bool ok = true;
    std::string detail;
    std::vector<std::string> scripts;
    // hypersurfaces and coupled systems with Z literally equal to N
    const char* eqs[] = {"x^2 - y^3", "x*y", "x^2 - y^2", "x + y^2",
                         "x^3 - y^4", "x^2*y - y^3", "x", "x^2 + y^5"};
    for (const char* e : eqs)
        scripts.push_back("ring Q[x,y] trunc 8\nideal N = " + std::string(e) +
                          "\nideal Z = " + e +
                          "\npoint a = (0,0)\ncurvesel N Z a order 8\n");
    scripts.push_back(
        "ring Q[x1,x2,x3] trunc 10\nideal N = x1 - x2^2, x1 - x3^3\n"
        "ideal Z = x1 - x2^2, x1 - x3^3\npoint a = (0,0,0)\n"
        "curvesel N Z a order 12\n");
    scripts.push_back(
        "ring F 10007 [x,y] trunc 8\nideal N = x^2 - y^3\nideal Z = x^2 - y^3\n"
        "point a = (0,0)\ncurvesel N Z a order 8\n");
    for (std::size_t i = 0; i < scripts.size(); ++i) {
        CliRun run = run_cli(scripts[i], "zn" + std::to_string(i));
        if (run.exit_code != 1 ||
            run.errors.find("ZIsEverything") == std::string::npos) {
            ok = false;
            detail = "instance " + std::to_string(i) + " exit " +
                     std::to_string(run.exit_code);
            break;
        }
    }
    report(6, "improper-inclusion-guard", ok,
           detail.empty() ? std::to_string(scripts.size()) + " instances exit 1"
                          : detail);
}

void criterion_7() {
    bool ok = true;
    std::string detail;
    auto r = qring({"x", "y"}, 8);
    Series x = Series::variable(r, 0), y = Series::variable(r, 1);
    Series cusp = x * x - y * y * y;
    try {
        for (std::uint32_t M : {1u, 2u, 3u}) {
            JetRing jets(r, M);
            IdealPresentation eqs = jet_equations(jets, {cusp});
            auto a = [&](std::uint32_t j) {
                return Series::variable(jets.ring(), jets.flat_index(0, j));
            };
            auto b = [&](std::uint32_t j) {
                return Series::variable(jets.ring(), jets.flat_index(1, j));
            };
            std::vector<Series> expect;
            expect.push_back(a(0) * a(0) - b(0) * b(0) * b(0));
            expect.push_back((a(0) * a(1)).scaled(Rational(2)) -
                             (b(0) * b(0) * b(1)).scaled(Rational(3)));
            if (M >= 2)
                expect.push_back(a(1) * a(1) + (a(0) * a(2)).scaled(Rational(2)) -
                                 (b(0) * b(0) * b(2)).scaled(Rational(3)) -
                                 (b(0) * b(1) * b(1)).scaled(Rational(3)));
            if (M >= 3)
                expect.push_back((a(0) * a(3)).scaled(Rational(2)) +
                                 (a(1) * a(2)).scaled(Rational(2)) -
                                 (b(0) * b(0) * b(3)).scaled(Rational(3)) -
                                 (b(0) * b(1) * b(2)).scaled(Rational(6)) -
                                 b(1) * b(1) * b(1));
            if (eqs.generators().size() != M + 1) ok = false;
            for (std::size_t i = 0; i < expect.size() && ok; ++i)
                if (!(eqs.generators()[i] == expect[i])) {
                    ok = false;
                    detail = "level " + std::to_string(M) + " row " +
                             std::to_string(i) + " differs from the hand oracle";
                }
            // (t^3, t^2) satisfies every row
            std::vector<std::vector<Rational>> coeffs(
                2, std::vector<Rational>(M + 1, Rational(0)));
            if (M >= 3) coeffs[0][3] = Rational(1);
            if (M >= 2) coeffs[1][2] = Rational(1);
            TruncatedArcPoint gamma(jets, {cusp}, coeffs);  // throws if violated
        }
    } catch (const Error& e) {
        ok = false;
        detail = e.what();
    }
    report(7, "jet-equations-hand-oracle", ok,
           detail.empty() ? "levels 1-3 match, (t^3, t^2) satisfies all" : detail);
}

void criterion_8() {
    auto start = std::chrono::steady_clock::now();
    CliRun run = run_cli(kJetScript, "jets");
    bool ok = run.exit_code == 0;
    std::string detail = ok ? "" : ("exit " + std::to_string(run.exit_code));
    if (ok) {
        try {
            CertificateDocument doc = parse_certificate(run.document);
            // the s = 0 fibre must be gamma: all base coordinates zero except y2
            for (std::size_t i = 0; i < doc.var_names.size(); ++i) {
                Rational expect =
                    doc.var_names[i] == "y2" ? Rational(1) : Rational(0);
                if (!(doc.base_point[i] == expect)) {
                    ok = false;
                    detail = "base point is not the jet of (0, t^2)";
                }
            }
            RebuiltCertificate rc = rebuild_certificate(doc);
            for (std::size_t i = 0; i < rc.arc.components.size() && ok; ++i)
                if (!(rc.arc.components[i].constant_term() == doc.base_point[i])) {
                    ok = false;
                    detail = "family does not specialize to gamma at s = 0";
                }
            VerifyReport rep =
                verify_certificate(rc.n_set, rc.z_set, rc.base, rc.arc, rc.cert);
            if (!rep.all_pass) {
                ok = false;
                detail = "independent checker rejected the certificate";
            }
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
    }
    double elapsed = seconds_since(start);
    if (elapsed > 10.0) {
        ok = false;
        detail = "exceeded 10 s";
    }
    report(8, "jet-space-selection", ok,
           detail.empty() ? "family specializes to gamma, verified, " +
                                std::to_string(elapsed) + " s"
                          : detail);
}

void criterion_9() {
    bool ok = true;
    std::string detail;
    struct Case {
        std::string script;
        std::string tag;
    };
    std::vector<Case> cases{{cusp_script(12), "det4"},
                            {chain_script(2), "det5a"},
                            {chain_script(3), "det5b"},
                            {chain_script(4), "det5c"},
                            {kJetScript, "det8"}};
    for (const auto& c : cases) {
        CliRun first = run_cli(c.script, c.tag + "_1");
        CliRun second = run_cli(c.script, c.tag + "_2");
        if (first.exit_code != 0 || first.document != second.document ||
            first.document.empty()) {
            ok = false;
            detail = "rerun of " + c.tag + " differs";
            break;
        }
    }
    report(9, "byte-identical-reruns", ok,
           detail.empty() ? std::to_string(cases.size()) + " scripts repeated"
                          : detail);
}

void criterion_10() {
    CliRun coarse = run_cli(cusp_script(12), "ref12");
    CliRun fine = run_cli(cusp_script(24), "ref24");
    bool ok = coarse.exit_code == 0 && fine.exit_code == 0;
    std::string detail = ok ? "" : "a run failed";
    if (ok) {
        try {
            CertificateDocument a = parse_certificate(coarse.document);
            CertificateDocument b = parse_certificate(fine.document);
            for (std::size_t i = 0; i < a.components.size() && ok; ++i) {
                // every coarse term appears identically in the refinement
                for (const auto& term : a.components[i].terms) {
                    bool found = false;
                    for (const auto& other : b.components[i].terms)
                        found = found || other == term;
                    if (!found) {
                        ok = false;
                        detail = "order-24 arc does not extend the order-12 arc";
                    }
                }
                // and the refinement adds nothing below the coarse order
                for (const auto& other : b.components[i].terms) {
                    if (std::get<0>(other) > 12) continue;
                    bool found = false;
                    for (const auto& term : a.components[i].terms)
                        found = found || other == term;
                    if (!found) {
                        ok = false;
                        detail = "low-order coefficients changed under refinement";
                    }
                }
            }
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
    }
    report(10, "monotone-refinement", ok,
           detail.empty() ? "order-24 rerun extends the order-12 arc" : detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
