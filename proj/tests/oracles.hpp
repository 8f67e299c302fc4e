#pragma once

// Independent reference computations and hand-rolled generators shared by the test suites.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mixcurve/degree4.hpp"
#include "mixcurve/poly.hpp"

namespace oracle {

using mixcurve::Complex;
using mixcurve::MixedPoly;
using mixcurve::Monomial;

/// Nonzero roots of u^n + u + conj(u) from the polar form u = r e^{ia}:
/// sin(na) = 0 and r^(n-1) cos(na) = -2 cos(a), so a = j pi / n with cos(na) cos(a) < 0.
inline std::vector<Complex> nonzero_roots_u_n(int n) {
    std::vector<Complex> out;
    for (int j = 0; j < 2 * n; ++j) {
        const double a = j * std::numbers::pi / n;
        const double ca = std::cos(a);
        const double cna = std::cos(n * a);
        if (std::abs(ca) < 1e-12 || !(ca * cna < 0.0))
            continue;
        const double r = std::pow(-2.0 * ca / cna, 1.0 / (n - 1));
        out.push_back(std::polar(r, a));
    }
    return out;
}

/// Expected sm(u^n + u + conj(u), 0): -1 when n = 3 mod 4, else 1.
inline int assertion_sm(int n) { return n % 4 == 3 ? -1 : 1; }

/// Closed-form count of nonzero roots of u^n + u + conj(u).
inline int nonzero_root_count(int n) {
    if (n % 2 == 0)
        return n - 1;
    return n % 4 == 3 ? n + 1 : n - 1;
}

/// Sign of the Jacobian determinant of the real 4-map summed over the preimages
/// of a small regular value; the preimages are supplied by the caller.
inline int preimage_degree(const MixedPoly &f, const MixedPoly &g, const std::vector<mixcurve::Point2> &preimages) {
    int total = 0;
    for (const auto &P : preimages) {
        const double det = mixcurve::gradient_frame(f, g, P).determinant();
        total += det > 0 ? 1 : -1;
    }
    return total;
}

/// Preimages of (d1, d2) under (z1^a, z2^b).
inline std::vector<mixcurve::Point2> monomial_preimages(int a, int b, Complex d1, Complex d2) {
    std::vector<mixcurve::Point2> out;
    for (int j = 0; j < a; ++j)
        for (int k = 0; k < b; ++k) {
            const Complex z1 = std::polar(std::pow(std::abs(d1), 1.0 / a), (std::arg(d1) + 2 * std::numbers::pi * j) / a);
            const Complex z2 = std::polar(std::pow(std::abs(d2), 1.0 / b), (std::arg(d2) + 2 * std::numbers::pi * k) / b);
            out.emplace_back(z1, z2);
        }
    return out;
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
    Complex complex(double radius = 1.0) { return {uniform(-radius, radius), uniform(-radius, radius)}; }
    Complex polar(double rmin, double rmax) {
        return std::polar(uniform(rmin, rmax), uniform(0.0, 2.0 * std::numbers::pi));
    }
    /// Small integers or short decimals, so printed text is compact.
    double nice_real() {
        switch (integer(0, 3)) {
        case 0: return integer(-9, 9);
        case 1: return integer(-99, 99) / 8.0;
        case 2: return uniform(-10.0, 10.0);
        default: return 0.0;
        }
    }
    Complex nice_coefficient() {
        Complex c(nice_real(), integer(0, 2) == 0 ? nice_real() : 0.0);
        return c == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : c;
    }
};

/// Random sparse polynomial with total degree <= max_degree and at most max_terms terms.
inline MixedPoly random_poly(Rng &rng, int nvars, int max_degree, int max_terms) {
    MixedPoly::TermMap terms;
    const int count = rng.integer(1, max_terms);
    for (int k = 0; k < count; ++k) {
        Monomial m;
        int budget = rng.integer(0, max_degree);
        for (int slot = 0; slot < 2 * nvars && budget > 0; ++slot) {
            const int e = slot + 1 == 2 * nvars ? budget : rng.integer(0, budget);
            m.exps[slot] = e;
            budget -= e;
        }
        terms[m] = rng.nice_coefficient();
    }
    return MixedPoly(nvars, std::move(terms));
}

/// prod (u - r_k) with random planted roots.
inline MixedPoly product_of_roots(const std::vector<Complex> &roots) {
    MixedPoly f = MixedPoly::constant(1.0);
    for (Complex r : roots)
        f *= MixedPoly::variable(0) - MixedPoly::constant(r);
    return f;
}

}  // namespace oracle
