#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace mixcurve {

using Complex = std::complex<double>;

/// Exponents (nu_1, mu_1, nu_2, mu_2) of z_1^nu_1 conj(z_1)^mu_1 z_2^nu_2 conj(z_2)^mu_2.
/// One-variable polynomials keep the second pair at zero.
struct Monomial {
    std::array<int, 4> exps{};

    constexpr int holo(int var) const { return exps[2 * var]; }
    constexpr int anti(int var) const { return exps[2 * var + 1]; }
    constexpr int holo_degree() const { return exps[0] + exps[2]; }
    constexpr int anti_degree() const { return exps[1] + exps[3]; }
    constexpr int degree() const { return holo_degree() + anti_degree(); }

    static constexpr Monomial one_var(int nu, int mu) { return Monomial{{nu, mu, 0, 0}}; }

    auto operator<=>(const Monomial &) const = default;
};

/// Sparse mixed polynomial in one (u) or two (z1, z2) complex variables.
/// Canonical: one entry per monomial, no stored coefficient is exactly zero.
class MixedPoly {
public:
    using TermMap = std::map<Monomial, Complex>;

    explicit MixedPoly(int nvars = 1);
    MixedPoly(int nvars, TermMap terms);

    static MixedPoly constant(Complex c, int nvars = 1);
    static MixedPoly monomial(const Monomial &m, Complex c = 1.0, int nvars = 1);
    /// z_var (or u when nvars == 1).
    static MixedPoly variable(int var, int nvars = 1);
    static MixedPoly conj_variable(int var, int nvars = 1);

    int nvars() const noexcept { return nvars_; }
    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    Complex coeff(const Monomial &m) const;

    MixedPoly &operator+=(const MixedPoly &rhs);
    MixedPoly &operator-=(const MixedPoly &rhs);
    MixedPoly &operator*=(const MixedPoly &rhs);
    MixedPoly &operator*=(Complex s);

    friend MixedPoly operator+(MixedPoly a, const MixedPoly &b) { return a += b; }
    friend MixedPoly operator-(MixedPoly a, const MixedPoly &b) { return a -= b; }
    friend MixedPoly operator*(MixedPoly a, const MixedPoly &b) { return a *= b; }
    friend MixedPoly operator*(MixedPoly a, Complex s) { return a *= s; }
    friend MixedPoly operator*(Complex s, MixedPoly a) { return a *= s; }
    MixedPoly operator-() const;

    bool operator==(const MixedPoly &) const = default;

private:
    void check_compatible(const MixedPoly &rhs) const;

    int nvars_;
    TermMap terms_;
};

MixedPoly pow(const MixedPoly &f, int exponent);

Complex eval(const MixedPoly &f, std::span<const Complex> z);
Complex eval(const MixedPoly &f, Complex u);
Complex eval(const MixedPoly &f, const Eigen::Vector2cd &z);

/// Flattened copy of a polynomial for repeated evaluation in sampling loops.
class PolyEvaluator {
public:
    explicit PolyEvaluator(const MixedPoly &f);

    int nvars() const noexcept { return nvars_; }
    Complex operator()(Complex u) const;
    Complex operator()(Complex z1, Complex z2) const;

private:
    struct Term {
        std::array<int, 4> exps;
        Complex coeff;
    };
    int nvars_;
    int max_exp_ = 0;
    std::vector<Term> terms_;
};

/// sum |c| prod |z_k|^(nu_k + mu_k): the scale against which |f(z)| is judged small.
double magnitude_bound(const MixedPoly &f, std::span<const Complex> z);
double magnitude_bound(const MixedPoly &f, Complex u);
double magnitude_bound(const MixedPoly &f, const Eigen::Vector2cd &z);

/// Largest |c| over stored terms (0 for the zero polynomial).
double max_coefficient(const MixedPoly &f);

/// Coefficientwise comparison: max |a_m - b_m| <= rel * max(1, max |a_m|, max |b_m|).
bool approx_equal(const MixedPoly &a, const MixedPoly &b, double rel);

enum class WirtingerKind { holomorphic, antiholomorphic };

/// d/dz_var or d/dconj(z_var), treating z and conj(z) as independent.
MixedPoly wirtinger(const MixedPoly &f, WirtingerKind which, int var = 0);

/// f(w + alpha, conj(w) + conj(alpha)) for a one-variable polynomial.
MixedPoly shift(const MixedPoly &f, Complex alpha);

/// Substitute z_var := value (and its conjugate); the remaining variable becomes u.
MixedPoly restrict_variable(const MixedPoly &f, int var, Complex value);

/// Conjugate every coefficient and swap each (nu, mu) pair; the result is conj(f).
MixedPoly conjugate_swap(const MixedPoly &f);

/// Real polynomial in (x1, y1[, x2, y2]); exponents indexed in that order.
struct RealPoly {
    int nvars = 1;
    std::map<std::array<int, 4>, double> terms;
};

double eval(const RealPoly &p, std::span<const double> x);
RealPoly partial(const RealPoly &p, int coordinate);

struct RealPolyPair {
    RealPoly re;
    RealPoly im;
};

/// Expand through z = x + iy, conj(z) = x - iy into (Re f, Im f).
RealPolyPair real_forms(const MixedPoly &f);

}  // namespace mixcurve
