#include "mixcurve/degree4.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mixcurve/errors.hpp"
#include "mixcurve/homform.hpp"
#include "mixcurve/quadrature.hpp"
#include "mixcurve/winding.hpp"

namespace mixcurve {

namespace {

constexpr double kPi = std::numbers::pi;

void require_two_vars(const MixedPoly &f, const char *op) {
    if (f.nvars() != 2)
        throw DimensionMismatch(std::string(op) + " applies to two-variable polynomials");
}

double coefficient_scale(const MixedPoly &f, const Point2 &P) {
    if (f.is_zero())
        return 1.0;
    const double r = std::max({1.0, std::abs(P(0)), std::abs(P(1))});
    return std::max(max_coefficient(f), std::numeric_limits<double>::min()) *
           std::pow(r, std::max(max_degree(f) - 1, 0));
}

// Columns d/dx_v = a + b and d/dy_v = i (a - b) for a = df/dz_v, b = df/dconj(z_v).
template <typename Rows>
void fill_rows(Rows &&rows, const std::array<Complex, 4> &ab) {
    for (int v = 0; v < 2; ++v) {
        const Complex a = ab[2 * v];
        const Complex b = ab[2 * v + 1];
        const Complex dx = a + b;
        const Complex dy = Complex(0.0, 1.0) * (a - b);
        rows(0, 2 * v) = dx.real();
        rows(1, 2 * v) = dx.imag();
        rows(0, 2 * v + 1) = dy.real();
        rows(1, 2 * v + 1) = dy.imag();
    }
}

struct Derivatives {
    std::array<PolyEvaluator, 4> parts;

    explicit Derivatives(const MixedPoly &f)
        : parts{PolyEvaluator(wirtinger(f, WirtingerKind::holomorphic, 0)),
                PolyEvaluator(wirtinger(f, WirtingerKind::antiholomorphic, 0)),
                PolyEvaluator(wirtinger(f, WirtingerKind::holomorphic, 1)),
                PolyEvaluator(wirtinger(f, WirtingerKind::antiholomorphic, 1))} {}

    std::array<Complex, 4> operator()(Complex z1, Complex z2) const {
        return {parts[0](z1, z2), parts[1](z1, z2), parts[2](z1, z2), parts[3](z1, z2)};
    }
};

double pairwise_sum(std::vector<double> &v) {
    if (v.empty())
        return 0.0;
    std::size_t n = v.size();
    while (n > 1) {
        const std::size_t half = (n + 1) / 2;
        for (std::size_t k = 0; k + half < n; ++k)
            v[k] += v[k + half];
        n = half;
    }
    return v[0];
}

std::string describe(const Point2 &P) {
    std::ostringstream s;
    s.precision(17);
    s << "(" << P(0).real() << (P(0).imag() < 0 ? "-" : "+") << std::abs(P(0).imag()) << "i, " << P(1).real()
      << (P(1).imag() < 0 ? "-" : "+") << std::abs(P(1).imag()) << "i)";
    return s.str();
}

struct Integrand {
    PolyEvaluator f, g;
    Derivatives df, dg;
    Point2 P;
    double eps;

    Integrand(const MixedPoly &f_, const MixedPoly &g_, const Point2 &P_, double eps_)
        : f(f_), g(g_), df(f_), dg(g_), P(P_), eps(eps_) {}

    // phi(P + eps s) and eps * (real Jacobian) for a unit vector s in R^4.
    std::pair<Eigen::Vector4d, Eigen::Matrix4d> map_at(const Eigen::Vector4d &s) const {
        const Complex z1 = P(0) + eps * Complex(s(0), s(1));
        const Complex z2 = P(1) + eps * Complex(s(2), s(3));
        const Complex fv = f(z1, z2);
        const Complex gv = g(z1, z2);
        Eigen::Matrix4d J;
        fill_rows(J.block<2, 4>(0, 0), df(z1, z2));
        fill_rows(J.block<2, 4>(2, 0), dg(z1, z2));
        return {Eigen::Vector4d(fv.real(), fv.imag(), gv.real(), gv.imag()), eps * J};
    }

    // Returns det(phi, D phi s_1, D phi s_2, D phi s_3) / |phi|^4 and |phi|.
    std::pair<double, double> operator()(double t1, double t2, double t3) const {
        const double c1 = std::cos(t1), s1 = std::sin(t1);
        const double c2 = std::cos(t2), s2 = std::sin(t2);
        const double c3 = std::cos(t3), s3 = std::sin(t3);
        const Eigen::Vector4d s(c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3);
        Eigen::Matrix<double, 4, 3> ds;
        ds.col(0) << -s1, c1 * c2, c1 * s2 * c3, c1 * s2 * s3;
        ds.col(1) << 0.0, -s1 * s2, s1 * c2 * c3, s1 * c2 * s3;
        ds.col(2) << 0.0, 0.0, -s1 * s2 * s3, s1 * s2 * c3;

        const Complex z1 = P(0) + eps * Complex(s(0), s(1));
        const Complex z2 = P(1) + eps * Complex(s(2), s(3));
        const Complex fv = f(z1, z2);
        const Complex gv = g(z1, z2);
        Eigen::Matrix4d J;
        fill_rows(J.block<2, 4>(0, 0), df(z1, z2));
        fill_rows(J.block<2, 4>(2, 0), dg(z1, z2));

        Eigen::Matrix4d M;
        M.col(0) << fv.real(), fv.imag(), gv.real(), gv.imag();
        M.rightCols<3>() = eps * (J * ds);
        const double norm2 = M.col(0).squaredNorm();
        return {M.determinant() / (norm2 * norm2), std::sqrt(norm2)};
    }
};

Eigen::Vector4d sphere_point(double t1, double t2, double t3) {
    return {std::cos(t1), std::sin(t1) * std::cos(t2), std::sin(t1) * std::sin(t2) * std::cos(t3),
            std::sin(t1) * std::sin(t2) * std::sin(t3)};
}

// Quadrature nodes can straddle a zero of phi on the sphere without sampling it. A coarse scan
// followed by projected Gauss-Newton from the lowest samples finds such zeros.
double sphere_minimum(const Integrand &phi) {
    constexpr int n1 = 16, n2 = 16, n3 = 32, starts = 8;
    std::vector<std::pair<double, Eigen::Vector4d>> samples;
    samples.reserve(n1 * n2 * n3);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n3; ++k) {
                const Eigen::Vector4d s = sphere_point((i + 0.5) * kPi / n1, (j + 0.5) * kPi / n2, k * 2.0 * kPi / n3);
                samples.emplace_back(phi.map_at(s).first.norm(), s);
            }
    std::partial_sort(samples.begin(), samples.begin() + starts, samples.end(),
                      [](const auto &a, const auto &b) { return a.first < b.first; });
    double best = samples.front().first;
    for (int k = 0; k < starts; ++k) {
        Eigen::Vector4d s = samples[k].second;
        for (int it = 0; it < 40; ++it) {
            const auto [v, A] = phi.map_at(s);
            best = std::min(best, v.norm());
            const Eigen::Matrix4d T = Eigen::Matrix4d::Identity() - s * s.transpose();
            Eigen::Vector4d d = -(A * T).completeOrthogonalDecomposition().solve(v);
            d = T * d;
            if (d.norm() > 0.25)
                d *= 0.25 / d.norm();
            if (d.norm() < 1e-15)
                break;
            s = (s + d).normalized();
        }
        best = std::min(best, phi.map_at(s).first.norm());
    }
    return best;
}

}  // namespace

Eigen::Matrix<double, 2, 4> real_jacobian(const MixedPoly &f, const Point2 &P) {
    require_two_vars(f, "real_jacobian");
    Eigen::Matrix<double, 2, 4> J;
    const Derivatives d(f);
    fill_rows(J, d(P(0), P(1)));
    return J;
}

Eigen::Matrix4d gradient_frame(const MixedPoly &f, const MixedPoly &g, const Point2 &P) {
    Eigen::Matrix4d F;
    F.topRows<2>() = real_jacobian(f, P);
    F.bottomRows<2>() = real_jacobian(g, P);
    return F;
}

namespace {

void require_on_curves(const MixedPoly &f, const MixedPoly &g, const Point2 &P) {
    for (const MixedPoly *h : {&f, &g}) {
        const double r = std::abs(eval(*h, P));
        const double tol = 1e-9 * std::max(1.0, magnitude_bound(*h, P));
        if (r > tol) {
            std::ostringstream msg;
            msg << (h == &f ? "first" : "second") << " polynomial has |value| = " << r << " at " << describe(P)
                << " (tolerance " << tol << "); not an intersection point";
            throw NotARoot(msg.str());
        }
    }
}

}  // namespace

bool is_mixed_nonsingular(const MixedPoly &f, const Point2 &P) {
    const Eigen::Matrix<double, 2, 4> J = real_jacobian(f, P);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    return svd.singularValues()(1) > 1e-8 * coefficient_scale(f, P);
}

int itop_transverse(const MixedPoly &f, const MixedPoly &g, const Point2 &P) {
    require_on_curves(f, g, P);
    if (!is_mixed_nonsingular(f, P))
        throw TransversalityFailure("first curve is mixed singular at " + describe(P), 0.0);
    if (!is_mixed_nonsingular(g, P))
        throw TransversalityFailure("second curve is mixed singular at " + describe(P), 0.0);
    const Eigen::Matrix4d F = gradient_frame(f, g, P);
    const double det = F.determinant();
    const double scale = F.rowwise().norm().prod();
    if (!(std::abs(det) > 1e-10 * scale)) {
        std::ostringstream msg;
        msg << "gradient frame determinant " << det << " is below 1e-10 * " << scale << " at " << describe(P);
        throw TransversalityFailure(msg.str(), det);
    }
    return det > 0.0 ? 1 : -1;
}

DegreeResult degree_s3(const MixedPoly &f, const MixedPoly &g, const Point2 &P, double eps, const DegreeOptions &opts) {
    require_two_vars(f, "degree_s3");
    require_two_vars(g, "degree_s3");
    if (!(eps > 0.0))
        throw DomainError("sphere radius must be positive");
    if (opts.order < 1 || opts.max_depth < 1)
        throw DomainError("degree options need order >= 1 and max_depth >= 1");

    const Integrand integrand(f, g, P, eps);
    const Point2 outer(std::abs(P(0)) + eps, std::abs(P(1)) + eps);
    const double scale = std::max({magnitude_bound(f, outer), magnitude_bound(g, outer),
                                   std::numeric_limits<double>::min()});
    const double lowest = sphere_minimum(integrand);
    if (lowest < opts.zero_margin * scale) {
        std::ostringstream msg;
        msg << "|phi| = " << lowest << " on the sphere of radius " << eps << " around " << describe(P)
            << " (threshold " << opts.zero_margin * scale << ")";
        throw SphereHitsZero(msg.str(), lowest);
    }
    const GaussRule<double> rule = gauss_legendre<double>(opts.order);
    const int q = opts.order;

    DegreeResult result;
    result.radius = eps;
    std::optional<long> previous;
    double last_raw = 0.0;
    double min_modulus = lowest;
    for (int depth = 0; depth <= opts.max_depth; ++depth) {
        const int n1 = 8 << depth, n2 = 8 << depth, n3 = 16 << depth;
        const double h1 = kPi / n1, h2 = kPi / n2, h3 = 2.0 * kPi / n3;

        std::vector<double> t3_nodes(static_cast<std::size_t>(n3) * q), t3_weights(t3_nodes.size());
        for (int i = 0; i < n3; ++i)
            for (int k = 0; k < q; ++k) {
                t3_nodes[i * q + k] = (i + 0.5 + 0.5 * rule.nodes(k)) * h3;
                t3_weights[i * q + k] = 0.5 * h3 * rule.weights(k);
            }

        std::vector<double> cell_sums;
        cell_sums.reserve(static_cast<std::size_t>(n1) * n2);
        for (int i1 = 0; i1 < n1; ++i1) {
            for (int i2 = 0; i2 < n2; ++i2) {
                double cell = 0.0;
                for (int k1 = 0; k1 < q; ++k1) {
                    const double t1 = (i1 + 0.5 + 0.5 * rule.nodes(k1)) * h1;
                    const double w1 = 0.5 * h1 * rule.weights(k1);
                    for (int k2 = 0; k2 < q; ++k2) {
                        const double t2 = (i2 + 0.5 + 0.5 * rule.nodes(k2)) * h2;
                        const double w2 = 0.5 * h2 * rule.weights(k2);
                        double line = 0.0;
                        for (std::size_t k3 = 0; k3 < t3_nodes.size(); ++k3) {
                            const auto [value, modulus] = integrand(t1, t2, t3_nodes[k3]);
                            min_modulus = std::min(min_modulus, modulus);
                            line += t3_weights[k3] * value;
                        }
                        cell += w1 * w2 * line;
                    }
                }
                cell_sums.push_back(cell);
            }
            if (min_modulus < opts.zero_margin * scale) {
                std::ostringstream msg;
                msg << "|phi| = " << min_modulus << " on the sphere of radius " << eps << " around " << describe(P)
                    << " (threshold " << opts.zero_margin * scale << ")";
                throw SphereHitsZero(msg.str(), min_modulus);
            }
        }
        const double raw = pairwise_sum(cell_sums) / (2.0 * kPi * kPi);
        if (!std::isfinite(raw))
            throw NoConvergence("degree integral is not finite around " + describe(P), raw);
        const long rounded = std::lround(raw);
        const double residual = std::abs(raw - static_cast<double>(rounded));
        last_raw = raw;
        if (previous && *previous == rounded && residual < 0.25) {
            result.degree = static_cast<int>(rounded);
            result.raw_integral = raw;
            result.residual = residual;
            result.refinement_depth = depth;
            result.min_modulus = min_modulus;
            return result;
        }
        previous = rounded;
    }
    std::ostringstream msg;
    msg << "degree integral did not stabilize by depth " << opts.max_depth << " (last value " << last_raw << ")";
    throw NoConvergence(msg.str(), std::abs(last_raw - std::round(last_raw)));
}

DegreeResult degree_s3_auto(const MixedPoly &f, const MixedPoly &g, const Point2 &P,
                            const std::vector<Point2> &others, const DegreeOptions &opts, int max_shrinks) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Point2 &Q : others) {
        const double d = (Q - P).norm();
        if (d > 0.0)
            nearest = std::min(nearest, d);
    }
    double eps = std::isfinite(nearest) ? 0.5 * nearest : 0.5;
    for (int k = 0;; ++k, eps *= 0.5) {
        try {
            return degree_s3(f, g, P, eps, opts);
        } catch (const SphereHitsZero &) {
            if (k >= max_shrinks)
                throw;
        }
    }
}

int itop_line(const MixedPoly &fhat, Complex alpha, const SmOptions &opts) {
    require_two_vars(fhat, "itop_line");
    return sm(restrict_variable(fhat, 1, 0.0), alpha, opts);
}

GlobalSumReport global_sum_check(const MixedPoly &f, const MixedPoly &g, const std::vector<Point2> &points,
                                 int dpolar_f, int dpolar_g) {
    require_two_vars(f, "global_sum_check");
    require_two_vars(g, "global_sum_check");
    GlobalSumReport report;
    report.expected = dpolar_f * dpolar_g;
    report.assumptions = {"the supplied intersection list is complete",
                          "no intersection points at infinity (not checked)"};
    const bool g_is_line = g == MixedPoly::variable(1, 2);
    bool all_ok = true;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Point2 &P = points[k];
        PointContribution c;
        c.point = P;
        try {
            try {
                c.value = itop_transverse(f, g, P);
                c.method = "transverse";
            } catch (const TransversalityFailure &) {
                if (g_is_line && std::abs(P(1)) == 0.0) {
                    c.value = itop_line(f, P(0));
                    c.method = "line";
                } else {
                    std::vector<Point2> others;
                    for (std::size_t j = 0; j < points.size(); ++j)
                        if (j != k)
                            others.push_back(points[j]);
                    c.value = degree_s3_auto(f, g, P, others).degree;
                    c.method = "degree";
                }
            }
        } catch (const Error &e) {
            c.error = e.what();
            all_ok = false;
        }
        if (c.value)
            report.total += *c.value;
        report.contributions.push_back(std::move(c));
    }
    report.passed = all_ok && report.total == report.expected;
    return report;
}

GlobalSumReport line_slice_check(const MixedPoly &f, const Box &box, const RootFindOptions &opts) {
    if (f.nvars() != 1)
        throw DimensionMismatch("line_slice_check applies to one-variable polynomials");
    GlobalSumReport report;
    const Homogenization F = homogenize(f);
    report.expected = F.polar_degree();
    report.assumptions = {"every affine root lies inside the search box"};
    bool all_ok = true;

    const RootFindResult found = find_roots(f, box, opts);
    for (const RootRecord &r : found.roots) {
        PointContribution c;
        c.point = Point2(r.location, 0.0);
        c.value = r.sm;
        c.method = "winding";
        report.total += r.sm;
        report.contributions.push_back(std::move(c));
    }
    for (const UnresolvedRegion &u : found.unresolved) {
        PointContribution c;
        c.point = Point2(Complex(0.5 * (u.bounds.xmin + u.bounds.xmax), 0.5 * (u.bounds.ymin + u.bounds.ymax)), 0.0);
        c.method = "winding";
        c.error = "unresolved region: " + u.reason;
        all_ok = false;
        report.contributions.push_back(std::move(c));
    }

    // The point at infinity (0 : 1) in the chart Z1 = 1.
    const MixedPoly at_infinity = dehomogenize(F, 1);
    if (std::abs(eval(at_infinity, Complex(0.0))) <= opts.sm.root_tolerance * std::max(1.0, max_coefficient(at_infinity))) {
        PointContribution c;
        c.point = Point2(0.0, 0.0);
        c.at_infinity = true;
        c.method = "winding";
        try {
            c.value = sm(at_infinity, 0.0, opts.sm);
            report.total += *c.value;
        } catch (const Error &e) {
            c.error = e.what();
            all_ok = false;
        }
        report.contributions.push_back(std::move(c));
    }
    report.passed = all_ok && report.total == report.expected;
    return report;
}

}  // namespace mixcurve
