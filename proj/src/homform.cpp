#include "mixcurve/homform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "mixcurve/errors.hpp"
#include "mixcurve/univariate.hpp"

namespace mixcurve {

MixedPoly graded_part(const MixedPoly &f, int degree) {
    if (degree < 0)
        throw DomainError("graded part degree must be nonnegative");
    MixedPoly::TermMap out;
    for (const auto &[m, c] : f.terms())
        if (m.degree() == degree)
            out.emplace(m, c);
    return MixedPoly(f.nvars(), std::move(out));
}

int max_degree(const MixedPoly &f) {
    if (f.is_zero())
        throw DomainError("degree of the zero polynomial is undefined");
    int d = 0;
    for (const auto &[m, c] : f.terms())
        d = std::max(d, m.degree());
    return d;
}

int min_degree(const MixedPoly &f) {
    if (f.is_zero())
        throw DomainError("degree of the zero polynomial is undefined");
    int d = std::numeric_limits<int>::max();
    for (const auto &[m, c] : f.terms())
        d = std::min(d, m.degree());
    return d;
}

HomFactorization factor_form(const MixedPoly &h) {
    if (h.nvars() != 1)
        throw DimensionMismatch("factor_form applies to one-variable forms");
    if (h.is_zero())
        throw DomainError("cannot factor the zero form");
    const int degree = max_degree(h);
    if (min_degree(h) != degree)
        throw DomainError("factor_form input is not homogeneous");

    int p = std::numeric_limits<int>::max();
    int q = std::numeric_limits<int>::max();
    for (const auto &[m, c] : h.terms()) {
        p = std::min(p, m.holo(0));
        q = std::min(q, m.anti(0));
    }
    const int m = degree - p - q;

    // Cofactor sum_k a_k u^(m-k) conj(u)^k = u^m P(w), w = conj(u)/u.
    std::vector<Complex> a(m + 1);
    for (int k = 0; k <= m; ++k)
        a[k] = h.coeff(Monomial::one_var(p + m - k, q + k));

    HomFactorization out;
    out.c = a[0];
    out.p = p;
    out.q = q;
    out.degree = degree;
    if (m > 0) {
        const auto roots = aberth_roots(a);
        for (const RootCluster &cl : cluster_roots(a, roots)) {
            // a_0 != 0 so every root of P is nonzero.
            out.factors.push_back({-1.0 / cl.center, cl.multiplicity});
        }
    }

    const MixedPoly back = expand(out);
    const double scale = max_coefficient(h);
    const double residual = max_coefficient(back - h);
    if (!(residual <= 1e-8 * scale)) {
        std::ostringstream msg;
        msg << "form factorization residual " << residual / scale << " exceeds 1e-8";
        throw RootFinderFailure(msg.str());
    }
    return out;
}

MixedPoly expand(const HomFactorization &fact) {
    MixedPoly out = MixedPoly::monomial(Monomial::one_var(fact.p, fact.q), fact.c);
    const MixedPoly u = MixedPoly::variable(0);
    const MixedPoly ubar = MixedPoly::conj_variable(0);
    for (const FormFactor &ff : fact.factors)
        out *= pow(u + ff.gamma * ubar, ff.multiplicity);
    return out;
}

int epsilon(Complex xi) {
    const double r = std::abs(xi);
    if (r < 1.0 - kUnitModulusBand)
        return 1;
    if (r > 1.0 + kUnitModulusBand)
        return -1;
    return 0;
}

namespace {

int signed_invariant(const HomFactorization &fact, const char *where) {
    int total = fact.p - fact.q;
    for (const FormFactor &ff : fact.factors) {
        const int e = epsilon(ff.gamma);
        if (e == 0) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "not admissible " << where << ": factor (u + gamma conj(u)) with gamma = " << ff.gamma.real()
                << (ff.gamma.imag() < 0 ? " - " : " + ") << std::abs(ff.gamma.imag()) << "i has |gamma| = 1";
            throw AdmissibilityViolation(msg.str());
        }
        total += e * ff.multiplicity;
    }
    return total;
}

bool no_unit_factor(const HomFactorization &fact) {
    return std::none_of(fact.factors.begin(), fact.factors.end(),
                        [](const FormFactor &ff) { return epsilon(ff.gamma) == 0; });
}

}  // namespace

int beta(const HomFactorization &top) { return signed_invariant(top, "at infinity"); }
int rho(const HomFactorization &bottom) { return signed_invariant(bottom, "at the origin"); }

int beta(const MixedPoly &f) { return beta(factor_form(graded_part(f, max_degree(f)))); }
int rho(const MixedPoly &f) { return rho(factor_form(graded_part(f, min_degree(f)))); }

bool admissible_at_infinity(const MixedPoly &f) {
    return no_unit_factor(factor_form(graded_part(f, max_degree(f))));
}

bool admissible_at_origin(const MixedPoly &f) {
    return no_unit_factor(factor_form(graded_part(f, min_degree(f))));
}

Homogenization homogenize(const MixedPoly &f) {
    if (f.is_zero())
        throw DomainError("cannot homogenize the zero polynomial");
    Homogenization F;
    F.nvars = f.nvars();
    for (const auto &[m, c] : f.terms()) {
        F.dplus = std::max(F.dplus, m.holo_degree());
        F.dminus = std::max(F.dminus, m.anti_degree());
    }
    for (const auto &[m, c] : f.terms()) {
        std::array<int, 6> e{F.dplus - m.holo_degree(), F.dminus - m.anti_degree(), m.exps[0], m.exps[1],
                             m.exps[2], m.exps[3]};
        F.terms.emplace(e, c);
    }
    return F;
}

MixedPoly dehomogenize(const Homogenization &F, int chart) {
    if (chart < 0 || chart > F.nvars)
        throw DimensionMismatch("chart index out of range");
    MixedPoly out(F.nvars);
    for (const auto &[e, c] : F.terms) {
        Monomial m;
        int slot = 0;
        for (int coord = 0; coord <= F.nvars; ++coord) {
            if (coord == chart)
                continue;
            m.exps[2 * slot] = e[2 * coord];
            m.exps[2 * slot + 1] = e[2 * coord + 1];
            ++slot;
        }
        out += MixedPoly::monomial(m, c, F.nvars);
    }
    return out;
}

bool is_strongly_polar_homogeneous(const Homogenization &F) {
    for (const auto &[e, c] : F.terms) {
        int holo = 0;
        int anti = 0;
        for (int coord = 0; coord <= F.nvars; ++coord) {
            holo += e[2 * coord];
            anti += e[2 * coord + 1];
        }
        if (holo + anti != F.radial_degree() || holo - anti != F.polar_degree())
            return false;
    }
    return true;
}

Complex eval(const Homogenization &F, std::span<const Complex> Z) {
    if (static_cast<int>(Z.size()) != F.nvars + 1)
        throw DimensionMismatch("projective point dimension does not match");
    Complex sum = 0.0;
    for (const auto &[e, c] : F.terms) {
        Complex term = c;
        for (int coord = 0; coord <= F.nvars; ++coord) {
            for (int k = 0; k < e[2 * coord]; ++k)
                term *= Z[coord];
            for (int k = 0; k < e[2 * coord + 1]; ++k)
                term *= std::conj(Z[coord]);
        }
        sum += term;
    }
    return sum;
}

}  // namespace mixcurve
