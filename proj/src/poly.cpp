#include "mixcurve/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mixcurve/errors.hpp"

namespace mixcurve {

namespace {

void check_nvars(int nvars) {
    if (nvars != 1 && nvars != 2)
        throw DimensionMismatch("mixed polynomials have 1 or 2 variables, got " + std::to_string(nvars));
}

void accumulate(MixedPoly::TermMap &terms, const Monomial &m, Complex c) {
    auto [it, inserted] = terms.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0, 0.0))
            terms.erase(it);
    } else if (c == Complex(0.0, 0.0)) {
        terms.erase(it);
    }
}

std::vector<std::vector<double>> binomial_table(int n) {
    std::vector<std::vector<double>> table(n + 1);
    for (int i = 0; i <= n; ++i) {
        table[i].assign(i + 1, 1.0);
        for (int k = 1; k < i; ++k)
            table[i][k] = table[i - 1][k - 1] + table[i - 1][k];
    }
    return table;
}

int max_exponent(const MixedPoly &f) {
    int e = 0;
    for (const auto &[m, c] : f.terms())
        e = std::max(e, *std::max_element(m.exps.begin(), m.exps.end()));
    return e;
}

Complex ipow(Complex base, int e) {
    Complex r = 1.0;
    for (int k = 0; k < e; ++k)
        r *= base;
    return r;
}

// powers[k] = base^k, k = 0..n
void fill_powers(std::vector<Complex> &powers, Complex base, int n) {
    powers.resize(n + 1);
    powers[0] = 1.0;
    for (int k = 1; k <= n; ++k)
        powers[k] = powers[k - 1] * base;
}

}  // namespace

MixedPoly::MixedPoly(int nvars) : nvars_(nvars) { check_nvars(nvars); }

MixedPoly::MixedPoly(int nvars, TermMap terms) : nvars_(nvars) {
    check_nvars(nvars);
    for (auto &[m, c] : terms) {
        for (int e : m.exps)
            if (e < 0)
                throw DomainError("negative exponent in mixed monomial");
        if (nvars == 1 && (m.exps[2] != 0 || m.exps[3] != 0))
            throw DimensionMismatch("second-variable exponent in a one-variable polynomial");
        if (c != Complex(0.0, 0.0))
            terms_.emplace(m, c);
    }
}

MixedPoly MixedPoly::constant(Complex c, int nvars) {
    return MixedPoly(nvars, TermMap{{Monomial{}, c}});
}

MixedPoly MixedPoly::monomial(const Monomial &m, Complex c, int nvars) {
    return MixedPoly(nvars, TermMap{{m, c}});
}

MixedPoly MixedPoly::variable(int var, int nvars) {
    if (var < 0 || var >= nvars)
        throw DimensionMismatch("variable index out of range");
    Monomial m;
    m.exps[2 * var] = 1;
    return monomial(m, 1.0, nvars);
}

MixedPoly MixedPoly::conj_variable(int var, int nvars) {
    if (var < 0 || var >= nvars)
        throw DimensionMismatch("variable index out of range");
    Monomial m;
    m.exps[2 * var + 1] = 1;
    return monomial(m, 1.0, nvars);
}

Complex MixedPoly::coeff(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void MixedPoly::check_compatible(const MixedPoly &rhs) const {
    if (nvars_ != rhs.nvars_)
        throw DimensionMismatch("arithmetic between polynomials with different variable counts");
}

MixedPoly &MixedPoly::operator+=(const MixedPoly &rhs) {
    check_compatible(rhs);
    for (const auto &[m, c] : rhs.terms_)
        accumulate(terms_, m, c);
    return *this;
}

MixedPoly &MixedPoly::operator-=(const MixedPoly &rhs) {
    check_compatible(rhs);
    for (const auto &[m, c] : rhs.terms_)
        accumulate(terms_, m, -c);
    return *this;
}

MixedPoly &MixedPoly::operator*=(const MixedPoly &rhs) {
    check_compatible(rhs);
    TermMap product;
    for (const auto &[ma, ca] : terms_) {
        for (const auto &[mb, cb] : rhs.terms_) {
            Monomial m;
            for (int k = 0; k < 4; ++k)
                m.exps[k] = ma.exps[k] + mb.exps[k];
            accumulate(product, m, ca * cb);
        }
    }
    terms_ = std::move(product);
    return *this;
}

MixedPoly &MixedPoly::operator*=(Complex s) {
    if (s == Complex(0.0, 0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        if (it->second == Complex(0.0, 0.0))
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

MixedPoly MixedPoly::operator-() const {
    MixedPoly out(*this);
    for (auto &[m, c] : out.terms_)
        c = -c;
    return out;
}

MixedPoly pow(const MixedPoly &f, int exponent) {
    if (exponent < 0)
        throw DomainError("negative exponent");
    MixedPoly result = MixedPoly::constant(1.0, f.nvars());
    MixedPoly base = f;
    while (exponent > 0) {
        if (exponent & 1)
            result *= base;
        exponent >>= 1;
        if (exponent > 0)
            base *= base;
    }
    return result;
}

Complex eval(const MixedPoly &f, std::span<const Complex> z) {
    if (static_cast<int>(z.size()) != f.nvars())
        throw DimensionMismatch("point has " + std::to_string(z.size()) + " coordinates, polynomial has " +
                                std::to_string(f.nvars()) + " variables");
    const PolyEvaluator fe(f);
    return f.nvars() == 1 ? fe(z[0]) : fe(z[0], z[1]);
}

Complex eval(const MixedPoly &f, Complex u) { return eval(f, std::span<const Complex>(&u, 1)); }

Complex eval(const MixedPoly &f, const Eigen::Vector2cd &z) {
    return eval(f, std::span<const Complex>(z.data(), 2));
}

PolyEvaluator::PolyEvaluator(const MixedPoly &f) : nvars_(f.nvars()) {
    terms_.reserve(f.size());
    for (const auto &[m, c] : f.terms()) {
        terms_.push_back({m.exps, c});
        max_exp_ = std::max(max_exp_, *std::max_element(m.exps.begin(), m.exps.end()));
    }
}

Complex PolyEvaluator::operator()(Complex u) const {
    if (nvars_ != 1)
        throw DimensionMismatch("one-variable evaluation of a two-variable polynomial");
    return (*this)(u, 0.0);
}

Complex PolyEvaluator::operator()(Complex z1, Complex z2) const {
    constexpr int kStack = 48;
    const int n = max_exp_;
    std::array<Complex, 4 * kStack> stack_powers;
    std::vector<Complex> heap_powers;
    Complex *powers = stack_powers.data();
    if (n >= kStack) {
        heap_powers.resize(4 * (n + 1));
        powers = heap_powers.data();
    }
    const int stride = n >= kStack ? n + 1 : kStack;
    const Complex bases[4] = {z1, std::conj(z1), z2, std::conj(z2)};
    for (int k = 0; k < 2 * nvars_; ++k) {
        Complex *row = powers + k * stride;
        row[0] = 1.0;
        for (int e = 1; e <= n; ++e)
            row[e] = row[e - 1] * bases[k];
    }
    // Neumaier-compensated sums, so exactly cancelling terms such as u + conj(u) leave no residue.
    double re = 0.0, im = 0.0, re_c = 0.0, im_c = 0.0;
    auto add = [](double &s, double &c, double x) {
        const double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    };
    for (const Term &t : terms_) {
        Complex term = t.coeff;
        for (int k = 0; k < 2 * nvars_; ++k)
            if (t.exps[k] != 0)
                term *= powers[k * stride + t.exps[k]];
        add(re, re_c, term.real());
        add(im, im_c, term.imag());
    }
    return {re + re_c, im + im_c};
}

double magnitude_bound(const MixedPoly &f, std::span<const Complex> z) {
    if (static_cast<int>(z.size()) != f.nvars())
        throw DimensionMismatch("point dimension does not match polynomial");
    double sum = 0.0;
    for (const auto &[m, c] : f.terms()) {
        double term = std::abs(c);
        for (int v = 0; v < f.nvars(); ++v) {
            const int e = m.holo(v) + m.anti(v);
            if (e != 0)
                term *= std::pow(std::abs(z[v]), e);
        }
        sum += term;
    }
    return sum;
}

double magnitude_bound(const MixedPoly &f, Complex u) {
    return magnitude_bound(f, std::span<const Complex>(&u, 1));
}

double magnitude_bound(const MixedPoly &f, const Eigen::Vector2cd &z) {
    return magnitude_bound(f, std::span<const Complex>(z.data(), 2));
}

double max_coefficient(const MixedPoly &f) {
    double m = 0.0;
    for (const auto &[mono, c] : f.terms())
        m = std::max(m, std::abs(c));
    return m;
}

bool approx_equal(const MixedPoly &a, const MixedPoly &b, double rel) {
    if (a.nvars() != b.nvars())
        return false;
    const double scale = std::max({1.0, max_coefficient(a), max_coefficient(b)});
    const MixedPoly diff = a - b;
    return max_coefficient(diff) <= rel * scale;
}

MixedPoly wirtinger(const MixedPoly &f, WirtingerKind which, int var) {
    if (var < 0 || var >= f.nvars())
        throw DimensionMismatch("Wirtinger derivative variable out of range");
    const int slot = 2 * var + (which == WirtingerKind::antiholomorphic ? 1 : 0);
    MixedPoly::TermMap out;
    for (const auto &[m, c] : f.terms()) {
        const int e = m.exps[slot];
        if (e == 0)
            continue;
        Monomial d = m;
        d.exps[slot] = e - 1;
        accumulate(out, d, c * static_cast<double>(e));
    }
    return MixedPoly(f.nvars(), std::move(out));
}

MixedPoly shift(const MixedPoly &f, Complex alpha) {
    if (f.nvars() != 1)
        throw DimensionMismatch("shift applies to one-variable polynomials");
    const int n = max_exponent(f);
    const auto binom = binomial_table(n);
    std::vector<Complex> apow, cpow;
    fill_powers(apow, alpha, n);
    fill_powers(cpow, std::conj(alpha), n);
    MixedPoly::TermMap out;
    for (const auto &[m, c] : f.terms()) {
        const int nu = m.holo(0);
        const int mu = m.anti(0);
        for (int a = 0; a <= nu; ++a) {
            const Complex ca = c * binom[nu][a] * apow[nu - a];
            for (int b = 0; b <= mu; ++b)
                accumulate(out, Monomial::one_var(a, b), ca * binom[mu][b] * cpow[mu - b]);
        }
    }
    return MixedPoly(1, std::move(out));
}

MixedPoly restrict_variable(const MixedPoly &f, int var, Complex value) {
    if (f.nvars() != 2)
        throw DimensionMismatch("restrict applies to two-variable polynomials");
    if (var != 0 && var != 1)
        throw DimensionMismatch("restrict variable index out of range");
    const int keep = 1 - var;
    MixedPoly::TermMap out;
    for (const auto &[m, c] : f.terms()) {
        const Complex scale = ipow(value, m.holo(var)) * ipow(std::conj(value), m.anti(var));
        accumulate(out, Monomial::one_var(m.holo(keep), m.anti(keep)), c * scale);
    }
    return MixedPoly(1, std::move(out));
}

MixedPoly conjugate_swap(const MixedPoly &f) {
    MixedPoly::TermMap out;
    for (const auto &[m, c] : f.terms()) {
        Monomial s{{m.exps[1], m.exps[0], m.exps[3], m.exps[2]}};
        out.emplace(s, std::conj(c));
    }
    return MixedPoly(f.nvars(), std::move(out));
}

double eval(const RealPoly &p, std::span<const double> x) {
    if (static_cast<int>(x.size()) != 2 * p.nvars)
        throw DimensionMismatch("real point dimension does not match polynomial");
    double sum = 0.0;
    for (const auto &[e, c] : p.terms) {
        double term = c;
        for (int k = 0; k < 2 * p.nvars; ++k)
            for (int j = 0; j < e[k]; ++j)
                term *= x[k];
        sum += term;
    }
    return sum;
}

RealPoly partial(const RealPoly &p, int coordinate) {
    if (coordinate < 0 || coordinate >= 2 * p.nvars)
        throw DimensionMismatch("partial derivative coordinate out of range");
    RealPoly out{p.nvars, {}};
    for (const auto &[e, c] : p.terms) {
        if (e[coordinate] == 0)
            continue;
        auto d = e;
        d[coordinate] -= 1;
        out.terms[d] += c * e[coordinate];
    }
    std::erase_if(out.terms, [](const auto &kv) { return kv.second == 0.0; });
    return out;
}

RealPolyPair real_forms(const MixedPoly &f) {
    const int n = max_exponent(f);
    const auto binom = binomial_table(n);

    // (x + iy)^nu (x - iy)^mu as coefficients over x^a y^b, per variable.
    auto expand_pair = [&](int nu, int mu) {
        std::map<std::array<int, 2>, Complex> out;
        for (int j = 0; j <= nu; ++j) {
            // (iy)^j
            const Complex ij = ipow(Complex(0.0, 1.0), j);
            for (int k = 0; k <= mu; ++k) {
                const Complex mik = ipow(Complex(0.0, -1.0), k);
                const Complex c = binom[nu][j] * binom[mu][k] * ij * mik;
                out[{nu - j + mu - k, j + k}] += c;
            }
        }
        return out;
    };

    std::map<std::array<int, 4>, Complex> expanded;
    for (const auto &[m, c] : f.terms()) {
        const auto first = expand_pair(m.holo(0), m.anti(0));
        if (f.nvars() == 1) {
            for (const auto &[e1, c1] : first)
                expanded[{e1[0], e1[1], 0, 0}] += c * c1;
            continue;
        }
        const auto second = expand_pair(m.holo(1), m.anti(1));
        for (const auto &[e1, c1] : first)
            for (const auto &[e2, c2] : second)
                expanded[{e1[0], e1[1], e2[0], e2[1]}] += c * c1 * c2;
    }

    RealPolyPair out{RealPoly{f.nvars(), {}}, RealPoly{f.nvars(), {}}};
    for (const auto &[e, c] : expanded) {
        if (c.real() != 0.0)
            out.re.terms[e] = c.real();
        if (c.imag() != 0.0)
            out.im.terms[e] = c.imag();
    }
    return out;
}

}  // namespace mixcurve
