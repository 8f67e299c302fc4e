// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "mixcurve/bifurcation.hpp"
#include "mixcurve/degree4.hpp"
#include "mixcurve/errors.hpp"
#include "mixcurve/homform.hpp"
#include "mixcurve/parse.hpp"
#include "mixcurve/rootfind.hpp"
#include "mixcurve/winding.hpp"
#include "oracles.hpp"

using namespace mixcurve;

namespace {

const MixedPoly u = MixedPoly::variable(0);
const MixedPoly ub = MixedPoly::conj_variable(0);

MixedPoly assertion_poly(int n) { return pow(u, n) + u + ub; }

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool report(int id, const std::string &title, double limit_s, const std::function<void(Outcome &)> &body) {
    Outcome o;
    const auto start = Clock::now();
    try {
        body(o);
    } catch (const std::exception &e) {
        o.ok = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed = seconds_since(start);
    if (limit_s > 0 && elapsed > limit_s) {
        o.ok = false;
        o.detail << " [time limit " << limit_s << " s exceeded]";
    }
    std::printf("%s %2d %s (%.3f s)%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), elapsed, o.detail.str().c_str());
    std::fflush(stdout);
    return o.ok;
}

void criterion1(Outcome &o) {
    const int expected[] = {1, -1, 1, 1, 1, -1, 1, 1};
    for (int n = 2; n <= 9; ++n) {
        const int v = sm(assertion_poly(n), 0.0);
        o.detail << " n=" << n << ":" << v;
        o.expect(v == expected[n - 2], "sm for n=" + std::to_string(n));
    }
}

void criterion2(Outcome &o) {
    for (int n = 2; n <= 9; ++n) {
        const MixedPoly f = assertion_poly(n);
        const int s = total_sm(f), b = beta(f);
        o.detail << " n=" << n << ":" << s;
        o.expect(s == n && b == n, "SM = n = beta for n=" + std::to_string(n));
    }
}

void criterion3(Outcome &o) {
    const MixedPoly f = parse("u^2*conj(u)*(u - 2*conj(u)) + 1");
    const RootFindResult r = find_roots(f, Box{-2, 2, -2, 2});
    o.expect(r.unresolved.empty(), "no unresolved regions");
    o.expect(r.roots.size() == 4, "exactly 4 roots");
    const double q = std::pow(1.0 / 3.0, 0.25);
    const std::pair<Complex, int> expected[] = {
        {Complex(0, q), 1}, {Complex(0, -q), 1}, {Complex(1, 0), -1}, {Complex(-1, 0), -1}};
    for (const auto &[z, s] : expected) {
        const auto it = std::min_element(r.roots.begin(), r.roots.end(), [&](const auto &a, const auto &b) {
            return std::abs(a.location - z) < std::abs(b.location - z);
        });
        const bool found = it != r.roots.end() && std::abs(it->location - z) < 1e-8;
        o.expect(found, "root near " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) + "i");
        if (found)
            o.expect(it->sm == s, "sm at a root");
    }
    o.detail << " SM=" << r.sm_sum() << " beta=" << beta(f);
    o.expect(r.sm_sum() == 0 && beta(f) == 0, "SM = 0 = beta");
}

void criterion4(Outcome &o) {
    const MixedPoly chart = parse("conj(u) - 2*u + u^3*conj(u)^2");
    o.expect(rho(chart) == 1, "rho = 1");
    o.expect(sm(chart, 0.0) == 1, "sm at 0 = 1");
    const Homogenization F = homogenize(parse("u^2*conj(u)*(u - 2*conj(u)) + 1"));
    o.detail << " radial=" << F.radial_degree() << " polar=" << F.polar_degree();
    o.expect(F.radial_degree() == 5 && F.polar_degree() == 1, "radial 5, polar 1");
    o.expect(dehomogenize(F, 1) == chart, "chart 1 term-for-term");
}

void criterion5(Outcome &o) {
    const MixedPoly z1 = MixedPoly::variable(0, 2), z2 = MixedPoly::variable(1, 2);
    const MixedPoly cone = parse("2*z1 + z1*conj(z1) + z2*conj(z2)", VariableFamily::pair);
    const Point2 origin(0.0, 0.0);
    const struct {
        const MixedPoly f, g;
        int expected;
    } cases[] = {{z1, cone, 0}, {z1, z2, 1}, {z1 * z1, z2, 2}};
    for (const auto &c : cases) {
        const auto start = Clock::now();
        const DegreeResult d = degree_s3(c.f, c.g, origin, 0.5);
        const double t = seconds_since(start);
        o.detail << " " << d.degree << "(res " << d.residual << ", depth " << d.refinement_depth << ")";
        o.expect(d.degree == c.expected && d.residual < 0.25 && d.refinement_depth <= 4 && t < 300.0,
                 "degree " + std::to_string(c.expected));
    }
}

void criterion6(Outcome &o) {
    const Box box{-0.5, 0.5, -0.5, 0.5};
    const BifurcationReport a = bifurcate([](double t) { return (u * u - MixedPoly::constant(t)) * ub; }, 0.01, box);
    const BifurcationReport b = bifurcate([](double s) { return u * (u * ub + MixedPoly::constant(s)); }, 0.01, box);
    o.detail << " sums " << a.sum_sm << ", " << b.sum_sm;
    o.expect(a.sum_sm == 1 && a.balanced(), "(u^2 - t) conj(u) sums to 1");
    o.expect(sm(u * u * ub, 0.0) == 1, "sm(u^2 conj(u), 0) = 1");
    o.expect(b.sum_sm == 1 && b.balanced(), "u (u conj(u) + s) sums to 1");
}

void criterion7(Outcome &o) {
    oracle::Rng rng(7);
    const Point2 origin(0.0, 0.0);
    int agree = 0, trials = 0;
    while (trials < 20) {
        MixedPoly f(2), g(2);
        for (int slot = 0; slot < 4; ++slot) {
            Monomial m;
            m.exps[slot] = 1;
            f += MixedPoly::monomial(m, rng.complex(), 2);
            g += MixedPoly::monomial(m, rng.complex(), 2);
        }
        if (std::abs(gradient_frame(f, g, origin).determinant()) < 1e-3)
            continue;
        ++trials;
        agree += itop_transverse(f, g, origin) == degree_s3(f, g, origin, 0.5).degree;
    }
    o.detail << " " << agree << "/20";
    o.expect(agree == 20, "all 20 agree");
}

void criterion8(Outcome &o) {
    const MixedPoly f = parse("u^2 + u + conj(u)");
    o.expect(winding_number(f, 0.0, 1.5).degree == 1, "winding 1 at r = 1.5");
    o.expect(winding_number(f, 0.0, 3.0).degree == 2, "winding 2 at r = 3");
    double smallest = 1e300;
    for (const TracePoint &p : trace(f, 2.0, 360))
        smallest = std::min(smallest, std::hypot(p.re, p.im));
    o.detail << " min |f| on r=2 trace " << smallest;
    o.expect(smallest < 1e-9, "r = 2 trace passes through 0");
}

int radius_invariance_failures() {
    int failures = 0;
    for (int n = 2; n <= 7; ++n) {
        std::vector<Complex> roots = oracle::nonzero_roots_u_n(n);
        roots.push_back(0.0);
        for (Complex alpha : roots) {
            double gap = 1e300;
            for (Complex other : roots)
                if (other != alpha)
                    gap = std::min(gap, std::abs(other - alpha));
            failures += winding_number(assertion_poly(n), alpha, 0.1 * gap).degree !=
                        winding_number(assertion_poly(n), alpha, 0.4 * gap).degree;
        }
    }
    return failures;
}

int multiplicativity_failures() {
    oracle::Rng rng(42);
    int failures = 0;
    for (int k = 0; k < 200; ++k) {
        const MixedPoly f = oracle::random_poly(rng, 1, 4, 5), g = oracle::random_poly(rng, 1, 4, 5);
        const Complex c = rng.complex();
        const double r = rng.uniform(0.3, 3.0);
        try {
            const int wf = winding_number(f, c, r).degree, wg = winding_number(g, c, r).degree;
            failures += winding_number(f * g, c, r).degree != wf + wg;
        } catch (const CertificationFailure &) {
        }
    }
    return failures;
}

int antisymmetry_failures() {
    int failures = 0;
    for (int n = 2; n <= 8; ++n) {
        const MixedPoly f = assertion_poly(n), g = conjugate_swap(f);
        failures += sm(g, 0.0) != -sm(f, 0.0);
        for (Complex alpha : oracle::nonzero_roots_u_n(n))
            failures += sm(g, alpha) != -sm(f, alpha);
    }
    return failures;
}

int holomorphic_failures() {
    oracle::Rng rng(44);
    int failures = 0;
    for (int k = 0; k < 60; ++k) {
        const int m = rng.integer(1, 4);
        const Complex alpha = rng.complex();
        std::vector<Complex> roots(m, alpha);
        roots.push_back(alpha + std::polar(rng.uniform(1.0, 2.0), rng.uniform(0, 6.28)));
        failures += sm(oracle::product_of_roots(roots), alpha) != m;
    }
    return failures;
}

int parse_failures() {
    oracle::Rng rng(2024);
    int failures = 0;
    for (int k = 0; k < 1000; ++k) {
        const int nv = 1 + k % 2;
        const MixedPoly f = oracle::random_poly(rng, nv, 8, 10);
        failures += !(parse(print(f), nv == 2 ? VariableFamily::pair : VariableFamily::single) == f);
    }
    return failures;
}

int factor_failures() {
    oracle::Rng rng(500);
    int failures = 0;
    for (int k = 0; k < 500; ++k) {
        const int degree = rng.integer(1, 8);
        HomFactorization h;
        h.degree = degree;
        int budget = degree;
        h.p = rng.integer(0, budget);
        budget -= h.p;
        h.q = rng.integer(0, budget);
        budget -= h.q;
        while (budget > 0) {
            const int nu = rng.integer(1, std::min(budget, 3));
            Complex gamma;
            bool separated = false;
            while (!separated) {
                gamma = std::polar(std::exp(rng.uniform(std::log(0.1), std::log(10.0))), rng.uniform(0, 6.283185));
                separated = std::all_of(h.factors.begin(), h.factors.end(),
                                        [&](const FormFactor &f) { return std::abs(f.gamma - gamma) > 0.3; });
            }
            h.factors.push_back({gamma, nu});
            budget -= nu;
        }
        h.c = rng.polar(0.5, 2.0);
        const MixedPoly form = expand(h);
        try {
            failures += !approx_equal(expand(factor_form(form)), form, 1e-8);
        } catch (const Error &) {
            ++failures;
        }
    }
    return failures;
}

void criterion9(Outcome &o) {
    const std::pair<const char *, std::function<int()>> suites[] = {
        {"radius-invariance", radius_invariance_failures}, {"multiplicativity", multiplicativity_failures},
        {"antisymmetry", antisymmetry_failures},           {"holomorphic", holomorphic_failures},
        {"parse-roundtrip", parse_failures},               {"factor-roundtrip", factor_failures}};
    for (const auto &[name, suite] : suites) {
        const int failures = suite();
        o.detail << " " << name << ":" << failures;
        o.expect(failures == 0, name);
    }
}

void criterion10(Outcome &o) {
    const int expected[] = {4, 3, 4, 5};
    for (int n = 3; n <= 6; ++n) {
        const int count = count_nonzero_roots(n);
        o.detail << " n=" << n << ":" << count;
        o.expect(count == expected[n - 3], "count for n=" + std::to_string(n));
        for (const RootRecord &r : find_roots(assertion_poly(n), Box{-3, 3, -3, 3}).roots)
            if (std::abs(r.location) > 1e-3)
                o.expect(r.kind == RootKind::positive_simple && r.sm == 1, "positive-simple nonzero root");
    }
}

}  // namespace

int main() {
    bool all = true;
    all &= report(1, "sm(u^n+u+conj(u), 0) for n=2..9", 10.0, criterion1);
    all &= report(2, "total_sm(u^n+u+conj(u)) = n = beta for n=2..9", 10.0, criterion2);
    all &= report(3, "find_roots of u^2 conj(u)(u-2conj(u))+1 on [-2,2]^2", 30.0, criterion3);
    all &= report(4, "chart example: rho, homogenization degrees, dehomogenize", 0.0, criterion4);
    all &= report(5, "degree_s3 examples (each under 300 s, depth <= 4)", 0.0, criterion5);
    all &= report(6, "bifurcation sums", 0.0, criterion6);
    all &= report(7, "itop_transverse = degree_s3 on 20 random linear pairs", 0.0, criterion7);
    all &= report(8, "figure windings and the radius-2 trace", 0.0, criterion8);
    all &= report(9, "property suites", 0.0, criterion9);
    all &= report(10, "nonzero root counts for n=3..6, all positive-simple", 0.0, criterion10);
    return all ? 0 : 1;
}
