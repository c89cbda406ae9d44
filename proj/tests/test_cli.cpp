#include "diffcert/cli/commands.hpp"
#include "diffcert/cli/parse.hpp"

#include "generators.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace diffcert;
using namespace diffcert::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "diffcert");
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

ParseError parse_error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error");
    return ParseError(0, 0, "");
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("parse polynomials") {
    MultiPoly p = parse_polynomial("y2^2 - z*y1^2 + y3");
    CHECK(p.nvars() == 3);
    CHECK(p.term_count() == 3);
    CHECK(p == MultiPoly::y(3, 2).pow(2) - MultiPoly::z(3) * MultiPoly::y(3, 1).pow(2) + MultiPoly::y(3, 3));
    CHECK(parse_polynomial("3/6*z - (z + 1)^2").str() == "-z^2 - 3/2*z - 1");
    CHECK(parse_polynomial("y1", 4).nvars() == 4);
    CHECK(parse_polynomial("2^3*y1/4") == BigRat(2) * MultiPoly::y(1, 1));
    CHECK(parse_polynomial("-(-y1)") == MultiPoly::y(1, 1));
}

TEST_CASE("parse operators") {
    DiffOperator l = parse_operator("D^2 - z");
    CHECK(l.order() == 2);
    CHECK(l.coefficient(2) == UniPoly(BigRat(1)));
    CHECK(l.coefficient(0) == -UniPoly::z());
    // D*z is the composition z*D + 1
    CHECK(parse_operator("D*z") == parse_operator("z*D + 1"));
    CHECK(parse_operator("(D - z)*(D + z)") == parse_operator("D^2 - z^2 + 1"));
    CHECK(parse_operator("z^2*D^3 + D - 1").str() == "z^2*D^3 + D - 1");
}

TEST_CASE("parse vector fields") {
    PolyVectorField f = parse_field("y1' = y2; y2' = z*y1 + 2*y1^3; y3' = y1^2");
    CHECK(f.nvars() == 3);
    CHECK(f.component(2) == MultiPoly::z(3) * MultiPoly::y(3, 1) + BigRat(2) * MultiPoly::y(3, 1).pow(3));
    CHECK(f == *named_field("painleve2-u2"));
    CHECK(parse_field("y2' = z*y1;\n y1' = y2") == *named_field("airy2"));
    CHECK(field_argument("airy3") == parse_field("y1'=y2; y2'=z*y1; y3'=y1"));
    CHECK(field_argument("airy-u2") == parse_field("y1'=y2; y2'=z*y1; y3'=y1^2"));
    CHECK(field_argument("airy-double") == parse_field("y1'=y2; y2'=z*y1; y3'=y4; y4'=z*y3"));
    CHECK(named_field_names().size() == 5);
    CHECK(!named_field("airy9"));
    CHECK_THROWS_AS(parse_field("y1' = y2"), ParseError);
    CHECK_THROWS_AS(parse_field("y1' = y1; y1' = 1"), ParseError);
    CHECK_THROWS_AS(field_argument("airy9"), Error);
}

TEST_CASE("parse errors carry positions and expected tokens") {
    auto a = parse_error_of([] { parse_polynomial("y1 + * z"); });
    CHECK(a.line() == 1);
    CHECK(a.column() == 6);
    CHECK(contains(a.expected(), "number"));
    CHECK(contains(a.expected(), "'('"));
    auto b = parse_error_of([] { parse_polynomial("y1 +\n  y2 )"); });
    CHECK(b.line() == 2);
    CHECK(b.column() == 6);
    CHECK(contains(b.expected(), "end of input"));
    auto c = parse_error_of([] { parse_polynomial("w + 1"); });
    CHECK(std::string(c.what()).find("unknown variable 'w'") != std::string::npos);
    CHECK(c.column() == 1);
    auto d = parse_error_of([] { parse_polynomial("y1^99999999"); });
    CHECK(std::string(d.what()).find("exponent overflow") != std::string::npos);
    CHECK(d.column() == 4);
    auto e = parse_error_of([] { parse_polynomial("y1^-2"); });
    CHECK(contains(e.expected(), "integer"));
    auto f = parse_error_of([] { parse_polynomial("(y1 + 2"); });
    CHECK(contains(f.expected(), "')'"));
    CHECK_THROWS_AS(parse_polynomial("y1 / y2"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("y1 / 0"), Error);
    CHECK_THROWS_AS(parse_polynomial("y10"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1 $ 2"), ParseError);
    CHECK_THROWS_AS(parse_operator("D^2 - y1"), ParseError);
}

TEST_CASE("parse of print is the identity on polynomials") {
    gen::Rng rng(4141);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
        MultiPoly p = rng.multipoly(n, 6, 3);
        MultiPoly q = parse_polynomial(p.str(), n);
        CHECK(q == p);
        CHECK(q.str() == p.str());
    }
}

TEST_CASE("parse of print is the identity on operators and fields") {
    gen::Rng rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        DiffOperator l = rng.diff_operator(4, 3);
        CHECK(parse_operator(l.str()) == l);
    }
    for (const auto& name : named_field_names()) {
        PolyVectorField f = *named_field(name);
        CHECK(parse_field(f.str()) == f);
    }
}

TEST_CASE("series expressions") {
    auto s = parse_series_list("u1, u1', int(u1^2), exp, z*u2", 20);
    REQUIRE(s.size() == 5);
    CHECK(s[0].order() == 20);
    CHECK(s[0].coeff(3) == BigRat(1, 6));
    CHECK(s[1].coeff(2) == BigRat(1, 2));
    CHECK(s[2].coeff(0) == BigRat(0));
    CHECK(s[2].coeff(1) == BigRat(1));
    CHECK(s[3].coeff(4) == BigRat(1, 24));
    CHECK(s[4].coeff(2) == BigRat(1));
    for (const auto& t : s) CHECK(t.order() == 20);
    CHECK_THROWS_AS(parse_series_list("u3", 10), ParseError);
    CHECK_THROWS_AS(parse_series_list("sin(u1)", 10), ParseError);
}

TEST_CASE("run: exit codes") {
    CHECK(invoke({"darboux", "--field", "airy2", "--dz", "2", "--dy", "2", "--dw", "1"}).code == exit_bounded);
    CHECK(invoke({"first-integrals", "--field", "airy-u2", "--dz", "1", "--dy", "4"}).code == exit_verified);
    CHECK(invoke({"adjoint", "--op", "D^2 - z"}).code == exit_verified);
    CHECK(invoke({"antider", "--op", "D^2 - z"}).code == exit_verified);
    CHECK(invoke({"antider", "--op", "D^3 - z"}).code == exit_bounded);
    CHECK(invoke({"ratsolve", "--op", "D^2 - z", "--rhs", "1"}).code == exit_verified);
    CHECK(invoke({"riccati", "--op", "D^2 - 1"}).code == exit_verified);
    CHECK(invoke({"verify-relation", "--poly", "y1", "--args", "u1"}).code == exit_bounded);
    auto bad = invoke({"adjoint", "--op", "D^2 - w"});
    CHECK(bad.code == exit_error);
    CHECK(bad.err.find("line 1, column 7") != std::string::npos);
    CHECK(invoke({"darboux", "--field", "airy2"}).code == exit_error);
    CHECK(invoke({"nonsense"}).code == exit_error);
    CHECK(invoke({"--format", "xml", "adjoint", "--op", "D"}).code == exit_error);
    CHECK(invoke({"ratsolve", "--op", "(z^2+1)*D + 1"}).code == exit_error);
}

TEST_CASE("run: reports") {
    auto r = invoke({"--format", "json", "--compare", "first-integrals", "--field", "airy-u2", "--dz", "1", "--dy", "4"});
    REQUIRE(r.code == exit_verified);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "first-integrals");
    CHECK(j["reverified"] == true);
    CHECK(j["config"]["dz"] == 1);
    CHECK(j["config"].contains("degree_cap"));
    CHECK(!j.contains("timing"));
    CHECK(j["result"]["basis"][0] == "z*y1^2 - y2^2 - y3");

    auto t = invoke({"adjoint", "--op", "z*D"});
    CHECK(t.out.find("adjoint: -z*D - 1") != std::string::npos);
    CHECK(t.out.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("run: comparison mode is byte-identical") {
    std::vector<std::vector<std::string>> cmds{
        {"darboux", "--field", "airy2", "--dz", "3", "--dy", "3", "--dw", "1"},
        {"lemma2", "--field", "airy2", "--dz", "3", "--dy", "3"},
        {"antider", "--op", "D^2"},
        {"growth", "--series", "u1", "--order", "300", "--window", "100,300"},
    };
    for (auto c : cmds) {
        c.insert(c.begin(), {"--format", "json", "--compare"});
        auto a = invoke(c), b = invoke(c);
        CHECK(a.code != exit_error);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("run: expressions from a file and the degree cap variable") {
    std::string path = "diffcert_test_op.txt";
    {
        std::ofstream f(path);
        f << "D^2\n  - z\n";
    }
    auto r = invoke({"--file", path, "adjoint"});
    CHECK(r.code == exit_verified);
    CHECK(r.out.find("D^2 - z") != std::string::npos);
    std::remove(path.c_str());
    CHECK(invoke({"--file", "does/not/exist", "adjoint"}).code == exit_error);

    setenv("DIFFCERT_DEGREE_CAP", "4", 1);
    auto capped = invoke({"darboux", "--field", "airy2", "--dz", "6", "--dy", "6"});
    CHECK(capped.code == exit_error);
    CHECK(capped.err.find("degree cap") != std::string::npos);
    setenv("DIFFCERT_DEGREE_CAP", "zero", 1);
    CHECK(invoke({"adjoint", "--op", "D"}).code == exit_error);
    unsetenv("DIFFCERT_DEGREE_CAP");
    set_degree_cap(64);
}
