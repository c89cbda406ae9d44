#include "diffcert/linode.hpp"
#include "diffcert/series.hpp"
#include "diffcert/vfield.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace diffcert;

namespace {

const UniPoly z = UniPoly::z();
const UniPoly one(BigRat(1));

DiffOperator op(std::vector<UniPoly> c) { return DiffOperator(std::move(c)); }

const DiffOperator airy = op({-z, UniPoly(), one});
const DiffOperator dd = DiffOperator::derivative_power(2);
const DiffOperator d1 = DiffOperator::derivative_power(1);

}  // namespace

TEST_CASE("DiffOperator basics") {
    CHECK(airy.order() == 2);
    CHECK(airy.str() == "D^2 - z");
    CHECK(op({one, one, UniPoly(), z * z}).str() == "z^2*D^3 + D + 1");
    CHECK(op({UniPoly(), z + one}).str() == "(z + 1)*D");
    CHECK(op({z, UniPoly(), UniPoly()}).order() == 0);
    CHECK_THROWS_AS(op({UniPoly(), UniPoly()}), Error);
    CHECK(airy.apply(z * z) == UniPoly(2) - z.pow(3));
    // D o z = z D + 1
    CHECK(d1 * DiffOperator::multiplication(z) == op({one, z}));
}

TEST_CASE("adjoint examples") {
    CHECK(adjoint(airy) == airy);
    CHECK(adjoint(d1) == op({UniPoly(), UniPoly(-1)}));
    CHECK(adjoint(op({UniPoly(), z})) == op({UniPoly(-1), -z}));
    CHECK(adjoint(dd) == dd);
}

TEST_CASE("adjoint is an involution and matches the defining sum") {
    gen::Rng rng(2121);
    for (int trial = 0; trial < 50; ++trial) {
        DiffOperator l = rng.diff_operator(4, 3);
        DiffOperator ls = adjoint(l);
        CHECK(adjoint(ls) == l);
        UniPoly v = rng.unipoly(4);
        UniPoly direct;
        for (int i = 0; i <= l.order(); ++i) {
            UniPoly av = (l.coefficient(i) * v).derivative(i);
            direct += i % 2 == 0 ? av : -av;
        }
        CHECK(ls.apply(v) == direct);
    }
}

TEST_CASE("concomitant examples") {
    BilinearConcomitant pa = concomitant(airy);
    CHECK(pa.at(1, 0) == one);
    CHECK(pa.at(0, 1) == UniPoly(-1));
    CHECK(pa.at(0, 0).is_zero());
    CHECK(pa.at(1, 1).is_zero());
    CHECK(concomitant(dd).str() == pa.str());
    BilinearConcomitant p1 = concomitant(d1);
    CHECK(p1.order == 1);
    CHECK(p1.at(0, 0) == one);
    CHECK(p1.str() == "u*v");
}

TEST_CASE("Lagrange identity examples") {
    CHECK(verify_lagrange(airy).holds);
    CHECK(verify_lagrange(DiffOperator::derivative_power(3)).holds);
    CHECK(verify_lagrange(op({UniPoly(), one, z * z})).holds);
    LagrangeCheck c = verify_lagrange(airy);
    CHECK(c.residual.is_zero());
    CHECK(c.variable_names.size() == 7);  // z, u..u'', v..v''
}

TEST_CASE("Lagrange identity on random operators") {
    gen::Rng rng(2222);
    for (int trial = 0; trial < 50; ++trial) {
        DiffOperator l = rng.diff_operator(4, 3);
        CHECK(verify_lagrange(l).holds);
        BilinearConcomitant pi = concomitant(l);
        CHECK(pi.order == l.order());
        for (int k = 0; k < 3; ++k) {
            UniPoly u = rng.unipoly(5), v = rng.unipoly(5);
            CHECK(oracle::lagrange_residual(l, pi, u, v).is_zero());
        }
    }
}

TEST_CASE("polynomial_solutions examples") {
    auto a = polynomial_solutions(airy, one);
    CHECK(!a.consistent);
    auto b = polynomial_solutions(dd, one);
    REQUIRE(b.consistent);
    CHECK(dd.apply(b.particular) == one);
    CHECK(b.homogeneous.size() == 2);
    CHECK(b.particular.coeff(2) == BigRat(1, 2));
    auto c = polynomial_solutions(airy, UniPoly());
    CHECK(c.consistent);
    CHECK(c.particular.is_zero());
    CHECK(c.homogeneous.empty());
    // z u' - 3 u = 0 has z^3, found through the indicial root
    auto d = polynomial_solutions(op({UniPoly(-3), z}), UniPoly());
    REQUIRE(d.homogeneous.size() == 1);
    CHECK(d.homogeneous[0].monic() == z.pow(3));
    CHECK(d.degree_bound == 3);
}

TEST_CASE("polynomial_solutions flags a capped bound") {
    auto r = polynomial_solutions(op({UniPoly(-100), z}), UniPoly(), 10);
    CHECK(r.capped);
    CHECK(r.homogeneous.empty());
}

TEST_CASE("every found polynomial solution re-verifies") {
    gen::Rng rng(2323);
    for (int trial = 0; trial < 60; ++trial) {
        DiffOperator l = rng.diff_operator(3, 2);
        UniPoly g = rng.unipoly(4);
        UniPoly rhs = l.apply(g);
        auto s = polynomial_solutions(l, rhs);
        REQUIRE(s.consistent);
        CHECK(l.apply(s.particular) == rhs);
        for (const auto& h : s.homogeneous) CHECK(l.apply(h).is_zero());
    }
}

TEST_CASE("rational_solutions examples") {
    auto a = rational_solutions(airy, one);
    CHECK(!a.consistent);
    CHECK(a.singular_points.empty());
    auto b = rational_solutions(op({UniPoly(-1), z}), UniPoly());
    REQUIRE(b.homogeneous.size() == 1);
    CHECK(b.homogeneous[0] == RatFunc(z));
    auto c = rational_solutions(airy, UniPoly());
    CHECK(c.consistent);
    CHECK(c.homogeneous.empty());
    // z u' + u = 0 has 1/z
    auto d = rational_solutions(op({one, z}), UniPoly());
    REQUIRE(d.homogeneous.size() == 1);
    CHECK(d.homogeneous[0] == RatFunc(one, z));
    CHECK_THROWS_WITH_AS(rational_solutions(op({one, z * z + one}), UniPoly()),
                         doctest::Contains("denominator bound unavailable"), Error);
}

TEST_CASE("rational solutions with poles re-verify") {
    gen::Rng rng(2424);
    for (int trial = 0; trial < 30; ++trial) {
        // L = (z - a)^2 D^2 + p (z - a) D + q has local exponents from t(t-1) + p t + q
        BigRat a(rng.uniform(-3, 3));
        UniPoly s = z - UniPoly(a);
        int k = rng.uniform(1, 3);
        // choose exponents -k and 0: t(t-1) + p t + q = (t + k) t  =>  p = k + 1, q = 0
        DiffOperator l = op({UniPoly(), UniPoly(BigRat(k + 1)) * s, s * s});
        auto r = rational_solutions(l, UniPoly());
        REQUIRE(r.consistent);
        bool pole = false;
        for (const auto& h : r.homogeneous) {
            CHECK(l.apply(h).num().is_zero());
            pole = pole || h.den().degree() == k;
        }
        CHECK(pole);
    }
}

TEST_CASE("no rational solution of v'' = z v + 1, brute-force scan agrees") {
    CHECK(!rational_solutions(airy, one).consistent);
    CHECK(oracle::relaxed_airy_inhomogeneous_scan(12, 90) == 0);
}

TEST_CASE("Riccati examples") {
    auto a = riccati_rational_nonexistence(airy, 8);
    CHECK(a.verdict == RiccatiVerdict::nonexistence_certified);
    CHECK(to_string(a.verdict) == "nonexistence-certified");
    auto b = riccati_rational_nonexistence(op({UniPoly(-1), UniPoly(), one}), 8);
    REQUIRE(b.verdict == RiccatiVerdict::found);
    REQUIRE(b.solutions.size() == 2);
    CHECK(b.solutions[0] == RatFunc(UniPoly(-1)));
    CHECK(b.solutions[1] == RatFunc(one));
    auto c = riccati_rational_nonexistence(op({-(z * z) - one, UniPoly(), one}), 8);
    REQUIRE(c.verdict == RiccatiVerdict::found);
    bool has_z = false;
    for (const auto& w : c.solutions) has_z = has_z || w == RatFunc(z);
    CHECK(has_z);
    CHECK_THROWS_AS(riccati_rational_nonexistence(op({one, UniPoly(), z}), 8), Error);
    CHECK_THROWS_AS(riccati_rational_nonexistence(d1, 8), Error);
}

TEST_CASE("Riccati solutions satisfy the Riccati equation") {
    gen::Rng rng(2525);
    for (int trial = 0; trial < 20; ++trial) {
        // (D - b)(D - c) = D^2 - (b + c) D + (b c - c'), so w = c is a Riccati solution
        UniPoly b = rng.unipoly(1), c = rng.unipoly(1);
        DiffOperator l = op({b * c - c.derivative(), -(b + c), one});
        auto r = riccati_rational_nonexistence(l, 4);
        REQUIRE(r.verdict == RiccatiVerdict::found);
        bool has_c = false;
        for (const auto& w : r.solutions) {
            RatFunc res = w.derivative() + w * w + RatFunc(l.coefficient(1)) * w + RatFunc(l.coefficient(0));
            CHECK(res.num().is_zero());
            has_c = has_c || w == RatFunc(c);
        }
        CHECK(has_c);
    }
}

TEST_CASE("antiderivative decision for the Airy operator") {
    auto cert = antiderivative_algebraicity(airy, 8);
    CHECK(cert.verdict == AntiderivativeVerdict::transcendental);
    CHECK(!cert.witness);
    CHECK(!cert.irreducibility_evidence.empty());
    CHECK(cert.adjoint_op == airy);
    CHECK(to_string(cert.verdict) == "antiderivative-transcendental");
}

TEST_CASE("antiderivative decision for D^2") {
    auto cert = antiderivative_algebraicity(dd, 8);
    REQUIRE(cert.verdict == AntiderivativeVerdict::algebraic);
    REQUIRE(cert.witness);
    CHECK(cert.witness->v == RatFunc(z * z * BigRat(1, 2)));
    CHECK(cert.witness->symbolic_check);
    CHECK(cert.witness->relation == "U = c - (1/2*z^2*u' - z*u)");
    auto s = verify_antiderivative_relation(cert, 64);
    CHECK(s.verified);
    CHECK(s.basis.size() == 2);
}

TEST_CASE("antiderivative decision for D") {
    auto cert = antiderivative_algebraicity(d1, 8);
    REQUIRE(cert.verdict == AntiderivativeVerdict::algebraic);
    REQUIRE(cert.witness);
    CHECK(cert.witness->v == RatFunc(-z));
    CHECK(verify_antiderivative_relation(cert, 32).verified);
}

TEST_CASE("antiderivative decision without irreducibility evidence is inconclusive") {
    // D^3 - z has no rational solution of L* v = 1 but no irreducibility certificate here
    DiffOperator l = op({-z, UniPoly(), UniPoly(), one});
    auto cert = antiderivative_algebraicity(l, 4);
    CHECK(cert.verdict == AntiderivativeVerdict::inconclusive);
    auto asserted = antiderivative_algebraicity(l, 4, true);
    CHECK(asserted.verdict == AntiderivativeVerdict::transcendental);
    CHECK(!asserted.caveats.empty());
}

TEST_CASE("antiderivative route agrees with the first-integral route") {
    REQUIRE(antiderivative_algebraicity(airy, 8).verdict == AntiderivativeVerdict::transcendental);
    MultiPoly y1 = MultiPoly::y(3, 1), y2 = MultiPoly::y(3, 2), zz = MultiPoly::z(3);
    Derivation d = make_derivation(PolyVectorField({y2, zz * y1, y1}));
    auto fi = first_integrals(d, {4, 3});
    for (const auto& p : fi.basis) CHECK(p.degree_in(3) <= 0);
    CHECK(fi.basis.empty());
}

TEST_CASE("derivative names") {
    CHECK(derivative_name("u", 0) == "u");
    CHECK(derivative_name("u", 2) == "u''");
    CHECK(derivative_name("v", 4) == "v^(4)");
}
