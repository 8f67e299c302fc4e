#include <doctest.h>

#include <cmath>

#include "mixcurve/errors.hpp"
#include "mixcurve/parse.hpp"
#include "mixcurve/poly.hpp"
#include "oracles.hpp"

using namespace mixcurve;

namespace {

const MixedPoly u = MixedPoly::variable(0);
const MixedPoly ub = MixedPoly::conj_variable(0);
const MixedPoly z1 = MixedPoly::variable(0, 2);
const MixedPoly z1b = MixedPoly::conj_variable(0, 2);
const MixedPoly z2 = MixedPoly::variable(1, 2);
const MixedPoly z2b = MixedPoly::conj_variable(1, 2);

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("construction keeps the canonical form") {
    MixedPoly::TermMap t{{Monomial::one_var(1, 0), 1.0}, {Monomial::one_var(0, 1), 0.0}};
    const MixedPoly f(1, t);
    CHECK(f.size() == 1);
    CHECK((u - u).is_zero());
    CHECK((u + ub - ub) == u);
    CHECK_THROWS_AS(MixedPoly(3), DimensionMismatch);
    CHECK_THROWS_AS(u + z1, DimensionMismatch);
}

TEST_CASE("eval examples") {
    CHECK(std::abs(eval(u + ub, Complex(0, 1))) == 0.0);
    CHECK(eval(u * u * ub, Complex(2, 0)) == Complex(8, 0));
    const MixedPoly k = u * u * ub * (u - 2.0 * ub) + MixedPoly::constant(1.0);
    CHECK(std::abs(eval(k, Complex(1, 0))) == 0.0);
    CHECK(std::abs(eval(k, Complex(-1, 0))) == 0.0);
    CHECK_THROWS_AS(eval(z1, Complex(1, 0)), DimensionMismatch);
    const std::vector<Complex> three{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(eval(u, std::span<const Complex>(three)), DimensionMismatch);
}

TEST_CASE("wirtinger examples") {
    CHECK(wirtinger(u * u * ub, WirtingerKind::holomorphic) == 2.0 * u * ub);
    CHECK(wirtinger(u + ub, WirtingerKind::antiholomorphic) == MixedPoly::constant(1.0));
    for (int n = 2; n <= 6; ++n) {
        const MixedPoly f = pow(u, n) + u + ub;
        const Complex alpha(0.3, -0.7);
        const Complex expected = double(n) * std::pow(alpha, n - 1) + 1.0;
        CHECK(rel_err(eval(wirtinger(f, WirtingerKind::holomorphic), alpha), expected) < 1e-14);
    }
    CHECK(wirtinger(z1 * z2b, WirtingerKind::antiholomorphic, 1) == z1);
}

TEST_CASE("real forms examples") {
    const RealPolyPair a = real_forms(u + ub);
    CHECK(a.re.terms == std::map<std::array<int, 4>, double>{{{1, 0, 0, 0}, 2.0}});
    CHECK(a.im.terms.empty());
    const RealPolyPair b = real_forms(u - ub);
    CHECK(b.re.terms.empty());
    CHECK(b.im.terms == std::map<std::array<int, 4>, double>{{{0, 1, 0, 0}, 2.0}});
    const RealPolyPair c = real_forms(z1b);
    CHECK(c.re.terms == std::map<std::array<int, 4>, double>{{{1, 0, 0, 0}, 1.0}});
    CHECK(c.im.terms == std::map<std::array<int, 4>, double>{{{0, 1, 0, 0}, -1.0}});
}

TEST_CASE("shift examples") {
    CHECK(approx_equal(shift(u, 1.0), u + MixedPoly::constant(1.0), 0.0));
    for (int n = 2; n <= 6; ++n) {
        const MixedPoly f = pow(u, n) + u + ub;
        for (Complex alpha : oracle::nonzero_roots_u_n(n)) {
            const MixedPoly fa = shift(f, alpha);
            CHECK(std::abs(fa.coeff(Monomial::one_var(0, 0))) < 1e-12);
            CHECK(rel_err(fa.coeff(Monomial::one_var(1, 0)), double(n) * std::pow(alpha, n - 1) + 1.0) < 1e-12);
            CHECK(rel_err(fa.coeff(Monomial::one_var(0, 1)), 1.0) < 1e-12);
        }
    }
    oracle::Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const MixedPoly f = oracle::random_poly(rng, 1, 6, 6);
        const Complex alpha = rng.complex(2.0);
        CHECK(approx_equal(shift(shift(f, alpha), -alpha), f, 1e-9));
    }
}

TEST_CASE("restrict examples") {
    CHECK(restrict_variable(z1 + z2, 1, 0.0) == u);
    CHECK(restrict_variable(2.0 * z1 + z1 * z1b + z2 * z2b, 1, 0.0) == 2.0 * u + u * ub);
    CHECK(restrict_variable(z2, 1, 0.0).is_zero());
    CHECK(restrict_variable(z1 * z2b, 0, Complex(0, 1)) == Complex(0, 1) * ub);
    CHECK_THROWS_AS(restrict_variable(u, 1, 0.0), DimensionMismatch);
}

TEST_CASE("property: real forms agree with eval") {
    oracle::Rng rng(1);
    for (int k = 0; k < 100; ++k) {
        const int nv = 1 + k % 2;
        const MixedPoly f = oracle::random_poly(rng, nv, 6, 8);
        const RealPolyPair rf = real_forms(f);
        const Complex a = rng.complex(1.5), b = rng.complex(1.5);
        std::vector<double> x{a.real(), a.imag()};
        std::vector<Complex> z{a};
        if (nv == 2) {
            x.insert(x.end(), {b.real(), b.imag()});
            z.push_back(b);
        }
        const Complex direct = eval(f, std::span<const Complex>(z));
        const Complex viaReal(eval(rf.re, x), eval(rf.im, x));
        const double scale = std::max(1.0, magnitude_bound(f, std::span<const Complex>(z)));
        CHECK(std::abs(direct - viaReal) <= 1e-10 * scale);
    }
}

TEST_CASE("property: wirtinger derivatives give directional derivatives") {
    oracle::Rng rng(2);
    for (int k = 0; k < 100; ++k) {
        const MixedPoly f = oracle::random_poly(rng, 1, 6, 6);
        const Complex z = rng.complex(1.2);
        const Complex v = std::polar(1.0, rng.uniform(0, 6.283));
        const Complex a = eval(wirtinger(f, WirtingerKind::holomorphic), z);
        const Complex b = eval(wirtinger(f, WirtingerKind::antiholomorphic), z);
        const double h = 1e-6;
        const Complex fd = (eval(f, z + h * v) - eval(f, z - h * v)) / (2 * h);
        const Complex exact = a * v + b * std::conj(v);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, magnitude_bound(f, std::abs(z) + 1e-6)));
    }
}

TEST_CASE("property: partial derivatives of real forms match finite differences") {
    oracle::Rng rng(3);
    for (int k = 0; k < 30; ++k) {
        const MixedPoly f = oracle::random_poly(rng, 2, 5, 6);
        const RealPolyPair rf = real_forms(f);
        std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        for (int c = 0; c < 4; ++c) {
            auto xp = x, xm = x;
            xp[c] += 1e-6;
            xm[c] -= 1e-6;
            const double fd = (eval(rf.re, xp) - eval(rf.re, xm)) / 2e-6;
            CHECK(std::abs(fd - eval(partial(rf.re, c), x)) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("property: shift commutes with evaluation") {
    oracle::Rng rng(4);
    for (int k = 0; k < 100; ++k) {
        const MixedPoly f = oracle::random_poly(rng, 1, 7, 8);
        const Complex alpha = rng.complex(1.0), w = rng.complex(1.0);
        const Complex expected = eval(f, w + alpha);
        CHECK(std::abs(eval(shift(f, alpha), w) - expected) <= 1e-10 * std::max(1.0, magnitude_bound(f, w + alpha)) * 8);
    }
}

TEST_CASE("property: arithmetic agrees with pointwise values") {
    oracle::Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const MixedPoly f = oracle::random_poly(rng, 2, 4, 5);
        const MixedPoly g = oracle::random_poly(rng, 2, 4, 5);
        const Eigen::Vector2cd z(rng.complex(), rng.complex());
        const Complex fv = eval(f, z), gv = eval(g, z);
        const double scale = std::max(1.0, magnitude_bound(f, z) * std::max(1.0, magnitude_bound(g, z)));
        CHECK(std::abs(eval(f + g, z) - (fv + gv)) <= 1e-12 * scale);
        CHECK(std::abs(eval(f * g, z) - fv * gv) <= 1e-12 * scale);
        CHECK(std::abs(eval(conjugate_swap(f), z) - std::conj(fv)) <= 1e-12 * scale);
        CHECK(std::abs(fv) <= magnitude_bound(f, z) * (1 + 1e-12));
    }
}

TEST_CASE("pow and the evaluator agree") {
    const MixedPoly f = pow(u + ub, 5);
    const PolyEvaluator fe(f);
    CHECK(fe(Complex(0.5, 3.0)) == Complex(1.0, 0.0));
    CHECK(pow(u, 0) == MixedPoly::constant(1.0));
    CHECK_THROWS_AS(pow(u, -1), DomainError);
}
