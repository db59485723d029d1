#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "arckit/certificate_doc.hpp"
#include "arckit/errors.hpp"
#include "arckit/runner.hpp"
#include "arckit/script.hpp"

using namespace arckit;

namespace {

const char* kCuspScript =
    "ring Q[x,y] trunc 8\n"
    "ideal N = x^2 - y^3\n"
    "ideal Z = x, y\n"
    "point a = (0,0)\n"
    "curvesel N Z a order 12\n";

}  // namespace

TEST_CASE("script grammar round trip") {
    Script s = parse_script(kCuspScript);
    CHECK(s.ring.field == Field::rationals());
    CHECK(s.ring.vars == std::vector<std::string>{"x", "y"});
    CHECK(s.ring.trunc == 8);
    CHECK(s.ideals.size() == 2);
    CHECK(s.points.size() == 1);
    REQUIRE(std::holds_alternative<CmdCurvesel>(s.command));
    const auto& cmd = std::get<CmdCurvesel>(s.command);
    CHECK(cmd.n == "N");
    CHECK(cmd.z == "Z");
    CHECK(cmd.point == "a");
    CHECK(cmd.order == 12);
}

TEST_CASE("prime field scripts parse and fail mathematically later") {
    Script s = parse_script(
        "ring F 101 [x] trunc 4\nideal N = x^2 - 2\npoint a = (0)\n"
        "curvesel N N a order 4\n");
    CHECK(s.ring.field.characteristic() == 101);
    RunResult res = run_script_text(
        "ring F 101 [x] trunc 4\nideal N = x^2 - 2\nideal Z = x\npoint a = (0)\n"
        "curvesel N Z a order 4\n",
        {});
    CHECK(res.exit_code == 1);  // PointNotOnN
    CHECK(res.report.find("PointNotOnN") != std::string::npos);
}

TEST_CASE("missing ring declaration is a parse error with a location") {
    try {
        parse_script("ideal N = x^2\ncurvesel N N a order 4\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 1);
        CHECK(std::string(e.expected).find("ring") != std::string::npos);
    }
}

TEST_CASE("parse errors carry precise positions") {
    try {
        parse_script("ring Q[x,y] trunc 8\nideal N = x^2 -\npoint a = (0,0)\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);  // the dangling minus swallows up to 'point'
        CHECK_FALSE(e.expected.empty());
    }
    try {
        parse_script("ring Q[x,y] trunc 8\nideal N = x^^2\ncurvesel N N a order 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 13);
    }
}

TEST_CASE("every command form parses") {
    CHECK(std::holds_alternative<CmdWdiv>(
        parse_script("ring Q[x,y] trunc 6\nwdiv x^3 x^2-y^3 var x\n").command));
    CHECK(std::holds_alternative<CmdWprep>(
        parse_script("ring Q[x,y] trunc 6\nwprep (1+y)*x - y^2 var x\n").command));
    CHECK(std::holds_alternative<CmdEliminate>(
        parse_script("ring Q[x,y] trunc 6\nideal I = x^2-y^3, x\neliminate I var x\n")
            .command));
    CHECK(std::holds_alternative<CmdJets>(
        parse_script("ring Q[x,y] trunc 6\nideal X = x^2-y^3\njets X order 2\n")
            .command));
    CHECK(std::holds_alternative<CmdArcsel>(
        parse_script("ring Q[x,y] trunc 6\nideal X = x^2-y^3\nideal Ne = 0\n"
                     "ideal Ze = x2\narc g = (0, t^2)\n"
                     "arcsel X Ne Ze g level 2 order 8\n")
            .command));
    CHECK(std::holds_alternative<CmdVerify>(
        parse_script("ring Q[x] trunc 2\nverify /tmp/some.cert\n").command));
}

TEST_CASE("runner exit codes") {
    SUBCASE("success is 0 with a document") {
        RunResult res = run_script_text(kCuspScript, {});
        CHECK(res.exit_code == 0);
        REQUIRE(res.document);
    }
    SUBCASE("improper inclusion is 1") {
        RunResult res = run_script_text(
            "ring Q[x,y] trunc 8\nideal N = x^2 - y^3\nideal Z = x^2 - y^3\n"
            "point a = (0,0)\ncurvesel N Z a order 12\n",
            {});
        CHECK(res.exit_code == 1);
        CHECK(res.report.find("ZIsEverything") != std::string::npos);
    }
    SUBCASE("parse garbage is 2") {
        RunResult res = run_script_text("ring Q[x@y]\n", {});
        CHECK(res.exit_code == 2);
    }
    SUBCASE("undeclared names are 2") {
        RunResult res = run_script_text(
            "ring Q[x,y] trunc 8\nideal N = x^2\npoint a = (0,0)\n"
            "curvesel N Missing a order 4\n",
            {});
        CHECK(res.exit_code == 2);
    }
    SUBCASE("polynomials beyond the truncation are 2") {
        RunResult res = run_script_text(
            "ring Q[x,y] trunc 3\nideal N = x^9 - y^3\nideal Z = x\n"
            "point a = (0,0)\ncurvesel N Z a order 6\n",
            {});
        CHECK(res.exit_code == 2);
    }
}

TEST_CASE("wdiv, wprep and eliminate run end to end") {
    SUBCASE("division report carries quotient, remainder and the residue check") {
        RunResult res = run_script_text(
            "ring Q[x,y] trunc 10\nwdiv x^3 x^2-y^3 var x\n", {});
        CHECK(res.exit_code == 0);
        CHECK(res.report.find("k: 2") != std::string::npos);
        CHECK(res.report.find("q: x") != std::string::npos);
        CHECK(res.report.find("r: x*y^3") != std::string::npos);
        CHECK(res.report.find("g - (q*f + r): 0") != std::string::npos);
    }
    SUBCASE("preparation recovers the unit") {
        RunResult res = run_script_text(
            "ring Q[x,y] trunc 8\nwprep (1+y)*x - y^2 var x\n", {});
        CHECK(res.exit_code == 0);
        CHECK(res.report.find("unit: 1 + y") != std::string::npos);
        CHECK(res.report.find("f - unit*wpoly: 0") != std::string::npos);
    }
    SUBCASE("elimination lists checked image generators") {
        RunResult res = run_script_text(
            "ring Q[x,y] trunc 12\nideal I = x^2-y^3, x\neliminate I var x\n", {});
        CHECK(res.exit_code == 0);
        CHECK(res.report.find("membership checked") != std::string::npos);
        CHECK(res.report.find("-y^3") != std::string::npos);
    }
    SUBCASE("dividing by a non-regular series exits 1") {
        RunResult res =
            run_script_text("ring Q[x,y] trunc 8\nwdiv y x*y var x\n", {});
        CHECK(res.exit_code == 1);
        CHECK(res.report.find("NotRegular") != std::string::npos);
    }
    SUBCASE("jets command prints the equations") {
        RunResult res = run_script_text(
            "ring Q[x,y] trunc 8\nideal X = x^2 - y^3\njets X order 1\n", {});
        CHECK(res.exit_code == 0);
        CHECK(res.report.find("eq[0]: x0^2 - y0^3") != std::string::npos);
        CHECK(res.report.find("eq[1]: 2*x0*x1 - 3*y0^2*y1") != std::string::npos);
    }
}

TEST_CASE("jet coordinates beyond the level are input errors") {
    RunResult res = run_script_text(
        "ring Q[x,y] trunc 8\nideal X = x^2 - y^3\nideal Ne = 0\nideal Ze = x3\n"
        "arc g = (0, t^2)\narcsel X Ne Ze g level 2 order 8\n",
        {});
    CHECK(res.exit_code == 2);
    CHECK(res.report.find("x3") != std::string::npos);
}

TEST_CASE("the step budget option is honored") {
    RunOptions opts;
    opts.max_steps = 1;
    RunResult res = run_script_text(
        "ring Q[x1,x2,x3] trunc 10\nideal N = x1 - x2^2, x1 - x3^3\n"
        "ideal Z = x1, x2, x3\npoint a = (0,0,0)\ncurvesel N Z a order 12\n",
        opts);
    CHECK(res.exit_code == 1);
    CHECK(res.report.find("BudgetExhausted") != std::string::npos);
}

TEST_CASE("deterministic documents") {
    RunResult a = run_script_text(kCuspScript, {});
    RunResult b = run_script_text(kCuspScript, {});
    REQUIRE(a.document);
    REQUIRE(b.document);
    CHECK(*a.document == *b.document);
}

TEST_CASE("certificate documents round trip byte for byte") {
    RunResult run = run_script_text(kCuspScript, {});
    REQUIRE(run.document);
    CertificateDocument doc = parse_certificate(*run.document);
    CHECK(serialize_certificate(doc) == *run.document);
    CHECK(parse_certificate(serialize_certificate(doc)) == doc);
}

TEST_CASE("randomized certificate documents round trip") {
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<int> small(0, 5);
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 9);
    for (int i = 0; i < 200; ++i) {
        CertificateDocument doc;
        doc.command_echo = "curvesel N Z a order " + std::to_string(small(rng));
        doc.options_echo = "search-bound=16 max-steps=default";
        doc.field = (i % 3 == 0) ? Field::prime(10007) : Field::rationals();
        int nvars = 1 + small(rng) % 3;
        for (int v = 0; v < nvars; ++v)
            doc.var_names.push_back("v" + std::to_string(v));
        doc.trunc = 4 + small(rng);
        doc.arc_order = 8 + small(rng);
        doc.ramification = 1 + small(rng);
        auto random_rational = [&]() {
            Rational r(num(rng), den(rng));
            return doc.field.kind() == FieldKind::prime_field ? doc.field.reduce(r)
                                                              : r;
        };
        for (int v = 0; v < nvars; ++v) doc.base_point.push_back(random_rational());
        for (int v = 0; v < nvars; ++v) {
            SeriesTriples t;
            std::uint32_t e = small(rng);
            for (int terms = small(rng) % 3; terms >= 0; --terms) {
                Rational c = random_rational();
                if (c.is_zero()) c = Rational(1);
                t.terms.emplace_back(e, c);
                e += 1 + small(rng);
            }
            doc.components.push_back(t);
        }
        int ngens = 1 + small(rng) % 2;
        for (int g = 0; g < ngens; ++g) {
            doc.vanishing.push_back(small(rng) % 2 == 0
                                        ? std::nullopt
                                        : std::make_optional<std::uint32_t>(small(rng)));
            doc.n_polys.push_back("v0^" + std::to_string(1 + small(rng)));
        }
        doc.witness_index = small(rng) % 2;
        doc.witness.terms.emplace_back(small(rng), Rational(1));
        doc.z_polys.push_back("v0");
        doc.z_polys.push_back("v0 - v0^2");
        doc.chain_summary = "steps=1 eliminated=v0 degrees=2 changes=I base= caveat=0";

        std::string text = serialize_certificate(doc);
        CertificateDocument back = parse_certificate(text);
        CHECK(back == doc);
        CHECK(serialize_certificate(back) == text);
    }
}

TEST_CASE("pathological nesting is rejected, not crashed on") {
    std::string script = "ring Q[x] trunc 4\nideal N = ";
    script += std::string(100000, '(');
    script += "x";
    script += std::string(100000, ')');
    script += "\njets N order 0\n";
    CHECK_THROWS_AS(parse_script(script), ParseError);
}

TEST_CASE("parser survives fuzzing without crashing") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<int> len(0, 160);
    std::uniform_int_distribution<int> byte(0, 255);
    const std::string seed = kCuspScript;
    int parsed = 0, rejected = 0;
    for (int i = 0; i < 600; ++i) {
        std::string text;
        if (i % 2 == 0) {
            int n = len(rng);
            for (int j = 0; j < n; ++j)
                text += static_cast<char>(byte(rng));
        } else {
            text = seed;
            int mutations = 1 + len(rng) % 12;
            for (int m = 0; m < mutations; ++m) {
                std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
                text[pos(rng)] = static_cast<char>(byte(rng));
            }
        }
        try {
            parse_script(text);
            ++parsed;
        } catch (const ParseError&) {
            ++rejected;
        } catch (const Error&) {
            // rational literals such as "1/0" surface as domain errors
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 600);
    CHECK(rejected > 0);
}

TEST_CASE("tampered integers in documents are rejected cleanly") {
    RunResult run = run_script_text(kCuspScript, {});
    REQUIRE(run.document);
    std::string bad = *run.document;
    std::size_t at = bad.find("component x: (3,1,1)");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 20, "component x: (-3,1,1)");
    CHECK_THROWS_AS(parse_certificate(bad), ParseError);
}

TEST_CASE("rational arc coefficients flow through arcsel") {
    RunResult res = run_script_text(
        "ring Q[x,y] trunc 8\nideal X = x\nideal Ne = 0\nideal Ze = y1\n"
        "arc g = (0, 1/2 + 1/3*t)\narcsel X Ne Ze g level 1 order 6\n",
        {});
    CHECK(res.exit_code == 0);
    REQUIRE(res.document);
    CertificateDocument doc = parse_certificate(*res.document);
    // gamma's coefficients land in the base point exactly
    bool found_half = false, found_third = false;
    for (const auto& c : doc.base_point) {
        found_half = found_half || c == Rational(1, 2);
        found_third = found_third || c == Rational(1, 3);
    }
    CHECK(found_half);
    CHECK(found_third);
}

TEST_CASE("verify command round trips through a file") {
    RunResult run = run_script_text(kCuspScript, {});
    REQUIRE(run.document);
    std::string path = "/tmp/arckit_test_roundtrip.cert";
    {
        std::ofstream out(path, std::ios::binary);
        out << *run.document;
    }
    RunResult ver = run_script_text("ring Q[x,y] trunc 8\nverify " + path + "\n", {});
    CHECK(ver.exit_code == 0);
    CHECK(ver.report.find("verification passed") != std::string::npos);

    // tamper with a component exponent
    std::string bad = *run.document;
    std::size_t at = bad.find("component x: (3,1,1)");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 20, "component x: (4,1,1)");
    {
        std::ofstream out(path, std::ios::binary);
        out << bad;
    }
    RunResult ver2 = run_script_text("ring Q[x,y] trunc 8\nverify " + path + "\n", {});
    CHECK(ver2.exit_code == 1);
}
