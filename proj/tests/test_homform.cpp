#include <doctest.h>

#include <algorithm>

#include "mixcurve/errors.hpp"
#include "mixcurve/homform.hpp"
#include "mixcurve/parse.hpp"
#include "oracles.hpp"

using namespace mixcurve;

namespace {

const MixedPoly k442 = parse("u^2*conj(u)*(u - 2*conj(u)) + 1");
const MixedPoly kChart = parse("conj(u) - 2*u + u^3*conj(u)^2");

MixedPoly from_factors(Complex c, int p, int q, const std::vector<FormFactor> &factors) {
    HomFactorization h{c, p, q, factors, p + q};
    for (const auto &fac : factors)
        h.degree += fac.multiplicity;
    return expand(h);
}

}  // namespace

TEST_CASE("graded parts and degrees") {
    CHECK(graded_part(k442, 4) == parse("u^3*conj(u) - 2*u^2*conj(u)^2"));
    CHECK(graded_part(k442, 0) == parse("1"));
    CHECK(graded_part(k442, 2).is_zero());
    CHECK(max_degree(k442) == 4);
    CHECK(min_degree(k442) == 0);
    CHECK(max_degree(kChart) == 5);
    CHECK(min_degree(kChart) == 1);
    CHECK(max_degree(parse("u^3*conj(u)^2")) == 5);
    CHECK(min_degree(parse("u^3*conj(u)^2")) == 5);
    CHECK_THROWS_AS(max_degree(MixedPoly()), DomainError);
}

TEST_CASE("factor_form examples") {
    const HomFactorization a = factor_form(parse("u^3*conj(u) - 2*u^2*conj(u)^2"));
    CHECK(std::abs(a.c - 1.0) < 1e-12);
    CHECK(a.p == 2);
    CHECK(a.q == 1);
    REQUIRE(a.factors.size() == 1);
    CHECK(std::abs(a.factors[0].gamma + 2.0) < 1e-12);
    CHECK(a.factors[0].multiplicity == 1);

    const HomFactorization b = factor_form(parse("-2*u + conj(u)"));
    CHECK(std::abs(b.c + 2.0) < 1e-12);
    CHECK(b.p == 0);
    CHECK(b.q == 0);
    REQUIRE(b.factors.size() == 1);
    CHECK(std::abs(b.factors[0].gamma + 0.5) < 1e-12);

    const HomFactorization c = factor_form(parse("u^2*conj(u)^2"));
    CHECK(c.p == 2);
    CHECK(c.q == 2);
    CHECK(c.factors.empty());

    const HomFactorization d = factor_form(parse("(u + 3*conj(u))^3 * (u - 0.2i*conj(u))"));
    REQUIRE(d.factors.size() == 2);
    int triple = 0;
    for (const auto &fac : d.factors)
        if (fac.multiplicity == 3) {
            ++triple;
            CHECK(std::abs(fac.gamma - 3.0) < 1e-6);
        }
    CHECK(triple == 1);

    CHECK_THROWS_AS(factor_form(MixedPoly()), DomainError);
    CHECK_THROWS_AS(factor_form(k442), DomainError);
}

TEST_CASE("epsilon, beta and rho") {
    CHECK(epsilon(-2.0) == -1);
    CHECK(epsilon(-0.5) == 1);
    CHECK(epsilon(Complex(0, 1)) == 0);
    CHECK(epsilon(1.0 + 1e-10) == 0);
    CHECK(beta(k442) == 0);
    CHECK(rho(kChart) == 1);
    for (int n = 2; n <= 9; ++n)
        CHECK(beta(pow(MixedPoly::variable(0), n) + parse("u + conj(u)")) == n);
    CHECK_THROWS_AS(rho(parse("u^3 + u + conj(u)")), AdmissibilityViolation);
    CHECK_THROWS_AS(beta(parse("u*conj(u) + u^2 - 1")), AdmissibilityViolation);
}

TEST_CASE("admissibility") {
    CHECK_FALSE(admissible_at_origin(parse("u^3 + u + conj(u)")));
    CHECK(admissible_at_infinity(k442));
    CHECK(admissible_at_infinity(parse("u^2*conj(u)")));
    CHECK(admissible_at_origin(parse("u^2*conj(u)")));
}

TEST_CASE("property: beta of a monomial top form with generic lower terms is p - q") {
    oracle::Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        const int p = rng.integer(0, 5), q = rng.integer(0, 5);
        if (p + q == 0)
            continue;
        MixedPoly f = MixedPoly::monomial(Monomial::one_var(p, q), rng.nice_coefficient());
        for (int j = 0; j < 4; ++j) {
            const int d = rng.integer(0, p + q - 1);
            const int nu = rng.integer(0, d);
            f += MixedPoly::monomial(Monomial::one_var(nu, d - nu), rng.complex(3.0));
        }
        CHECK(beta(f) == p - q);
    }
}

TEST_CASE("property: factorization round-trip on 500 random forms") {
    oracle::Rng rng(500);
    int failures = 0;
    for (int k = 0; k < 500; ++k) {
        const int degree = rng.integer(1, 8);
        int budget = degree;
        const int p = rng.integer(0, budget);
        budget -= p;
        const int q = rng.integer(0, budget);
        budget -= q;
        std::vector<FormFactor> factors;
        while (budget > 0) {
            const int nu = rng.integer(1, std::min(budget, 3));
            Complex gamma;
            bool separated = false;
            while (!separated) {
                gamma = std::polar(std::exp(rng.uniform(std::log(0.1), std::log(10.0))), rng.uniform(0, 6.283185));
                separated = std::all_of(factors.begin(), factors.end(),
                                        [&](const FormFactor &f) { return std::abs(f.gamma - gamma) > 0.3; });
            }
            factors.push_back({gamma, nu});
            budget -= nu;
        }
        const Complex c = rng.polar(0.5, 2.0);
        const MixedPoly h = from_factors(c, p, q, factors);
        try {
            const HomFactorization got = factor_form(h);
            int total = got.p + got.q;
            for (const auto &f : got.factors)
                total += f.multiplicity;
            if (!approx_equal(expand(got), h, 1e-8) || total != degree || got.p != p || got.q != q)
                ++failures;
        } catch (const Error &e) {
            ++failures;
            MESSAGE("factor_form failed on " << print(h) << ": " << std::string(e.what()));
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("homogenization of the chart example") {
    const Homogenization F = homogenize(k442);
    CHECK(F.radial_degree() == 5);
    CHECK(F.polar_degree() == 1);
    CHECK(is_strongly_polar_homogeneous(F));
    // Z1^2 conj(Z1) (Z1 conj(Z0) - 2 conj(Z1) Z0) + Z0^3 conj(Z0)^2
    const std::map<std::array<int, 6>, Complex> expected{
        {{0, 1, 3, 1, 0, 0}, 1.0}, {{1, 0, 2, 2, 0, 0}, -2.0}, {{3, 2, 0, 0, 0, 0}, 1.0}};
    CHECK(F.terms == expected);
    CHECK(dehomogenize(F, 1) == kChart);
    CHECK(dehomogenize(F, 0) == k442);
}

TEST_CASE("homogenization examples") {
    const Homogenization a = homogenize(parse("u^5*conj(u)^2 + u"));
    CHECK(a.radial_degree() == max_degree(parse("u^5*conj(u)^2")));
    const Homogenization b = homogenize(parse("u"));
    CHECK(b.polar_degree() == 1);
    CHECK(b.radial_degree() == 1);
    CHECK(dehomogenize(b, 0) == parse("u"));
}

TEST_CASE("two-variable chart") {
    Homogenization F;
    F.nvars = 2;
    F.dplus = 1;
    F.dminus = 1;
    // Z1 conj(Z0) - Z0 conj(Z2)
    F.terms = {{{0, 1, 1, 0, 0, 0}, 1.0}, {{1, 0, 0, 0, 0, 1}, -1.0}};
    CHECK(is_strongly_polar_homogeneous(F));
    CHECK(dehomogenize(F, 2) == parse("z2*conj(z1) - z1"));
}

TEST_CASE("property: homogenize is strongly polar homogeneous and chart 0 inverts it") {
    oracle::Rng rng(77);
    for (int k = 0; k < 200; ++k) {
        const int nv = 1 + k % 2;
        MixedPoly f = oracle::random_poly(rng, nv, 6, 6);
        f += MixedPoly::constant(1.0, nv);
        const Homogenization F = homogenize(f);
        CHECK(is_strongly_polar_homogeneous(F));
        CHECK(dehomogenize(F, 0) == f);
        std::vector<Complex> Z{1.0};
        std::vector<Complex> z;
        for (int v = 0; v < nv; ++v) {
            z.push_back(rng.complex());
            Z.push_back(z.back());
        }
        const Complex lhs = eval(F, Z);
        const Complex rhs = eval(f, std::span<const Complex>(z));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, magnitude_bound(f, std::span<const Complex>(z))));
    }
}
