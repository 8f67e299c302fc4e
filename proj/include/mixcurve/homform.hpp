#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "mixcurve/poly.hpp"

namespace mixcurve {

/// Graded part f_l: the terms of total degree nu + mu == l (possibly zero).
MixedPoly graded_part(const MixedPoly &f, int degree);

/// Maximal and minimal total degree over stored terms. Throw DomainError on the zero polynomial.
int max_degree(const MixedPoly &f);
int min_degree(const MixedPoly &f);

/// One linear factor (u + gamma conj(u))^multiplicity.
struct FormFactor {
    Complex gamma;
    int multiplicity;
};

/// h = c u^p conj(u)^q prod_j (u + gamma_j conj(u))^nu_j, with p + q + sum nu_j == degree.
struct HomFactorization {
    Complex c;
    int p = 0;
    int q = 0;
    std::vector<FormFactor> factors;
    int degree = 0;
};

/// Factors a nonzero one-variable mixed homogeneous form. The cofactor left after pulling out
/// the maximal monomial u^p conj(u)^q is u^m P(conj(u)/u); the roots w_j of P give gamma_j = -1/w_j.
/// Throws DomainError for zero or inhomogeneous input and RootFinderFailure when the expansion
/// does not reproduce the input to 1e-8 relative.
HomFactorization factor_form(const MixedPoly &h);

MixedPoly expand(const HomFactorization &fact);

/// Band half-width around |xi| == 1 inside which epsilon() returns 0.
inline constexpr double kUnitModulusBand = 1e-9;

/// +1 for |xi| < 1, 0 for |xi| == 1 (within the band), -1 for |xi| > 1.
int epsilon(Complex xi);

/// p - q + sum epsilon(gamma_j) nu_j for the top graded form. Throws AdmissibilityViolation
/// when some |gamma_j| lies inside the unit band.
int beta(const MixedPoly &f);

/// Same invariant computed from the lowest graded form.
int rho(const MixedPoly &f);

int beta(const HomFactorization &top);
int rho(const HomFactorization &bottom);

bool admissible_at_infinity(const MixedPoly &f);
bool admissible_at_origin(const MixedPoly &f);

/// Mixed homogenization F(Z, conj Z) = Z0^d+ conj(Z0)^d- f(Z1/Z0, ...).
/// Exponents are stored as (nu_0, mu_0, nu_1, mu_1, nu_2, mu_2) over the projective coordinates.
struct Homogenization {
    int nvars = 1;  // affine variables; projective coordinates are Z0..Z_nvars
    std::map<std::array<int, 6>, Complex> terms;
    int dplus = 0;
    int dminus = 0;

    int radial_degree() const { return dplus + dminus; }
    int polar_degree() const { return dplus - dminus; }
};

Homogenization homogenize(const MixedPoly &f);

/// Affine equation in the chart Z_chart = 1; the remaining projective coordinates, in index
/// order, become the affine variables.
MixedPoly dehomogenize(const Homogenization &F, int chart);

/// Every monomial has radial degree d+ + d- and polar degree d+ - d-.
bool is_strongly_polar_homogeneous(const Homogenization &F);

Complex eval(const Homogenization &F, std::span<const Complex> Z);

}  // namespace mixcurve
