#include "mixcurve/winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "mixcurve/errors.hpp"
#include "mixcurve/homform.hpp"

namespace mixcurve {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(Complex z) {
    std::ostringstream s;
    s.precision(17);
    s << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return s.str();
}

/// Certified lower bound for |h| on the unit circle (sampled minimum minus Lipschitz slack),
/// or 0 when none is found within max_samples.
double unit_circle_floor(const MixedPoly &h, int initial, int max_samples) {
    double lipschitz = 0.0;
    for (const auto &[m, c] : h.terms())
        lipschitz += std::abs(c) * std::abs(m.holo(0) - m.anti(0));
    const PolyEvaluator he(h);
    for (int n = std::max(initial, 4); n <= max_samples; n *= 2) {
        double sampled = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
            sampled = std::min(sampled, std::abs(he(Complex(std::cos(theta), std::sin(theta)))));
        }
        const double certified = sampled - lipschitz * kPi / static_cast<double>(n);
        if (certified > 0.0)
            return certified;
    }
    return 0.0;
}

double l1_norm(const MixedPoly &h) {
    double s = 0.0;
    for (const auto &[m, c] : h.terms())
        s += std::abs(c);
    return s;
}

// Start radius small enough that no other root of the local expansion can sit inside it.
// With a lowest form L bounded below on the unit circle by m, every r < m / (2 sum ||f_k||)
// lies in the region where L dominates; otherwise fall back to the radius where the
// coefficient norms of L and each higher part balance.
double local_start_radius(const MixedPoly &f, Complex alpha, double cap, double noise) {
    const MixedPoly g = shift(f, alpha);
    std::map<int, MixedPoly> parts;
    for (const auto &[m, c] : g.terms())
        if (m.degree() > 0) {
            auto it = parts.try_emplace(m.degree(), MixedPoly(1)).first;
            it->second += MixedPoly::monomial(m, c);
        }
    std::vector<std::pair<int, double>> norms;
    for (const auto &[d, h] : parts)
        if (l1_norm(h) > noise)
            norms.emplace_back(d, l1_norm(h));
    if (norms.size() < 2)
        return cap;
    const int low = norms.front().first;
    const double low_norm = norms.front().second;

    const double floor = unit_circle_floor(parts.at(low), 64, 1 << 12);
    if (floor > 0.0) {
        double rest = 0.0;
        for (std::size_t k = 1; k < norms.size(); ++k)
            rest += norms[k].second;
        return std::min(cap, 0.5 * std::min(1.0, floor / (2.0 * rest)));
    }
    double r = cap;
    for (std::size_t k = 1; k < norms.size(); ++k)
        r = std::min(r, 0.5 * std::pow(low_norm / norms[k].second, 1.0 / (norms[k].first - low)));
    return r;
}

}  // namespace

WindingResult winding_number(const MixedPoly &f, Complex center, double radius, const WindingOptions &opts) {
    if (f.nvars() != 1)
        throw DimensionMismatch("winding_number applies to one-variable polynomials");
    if (!(radius > 0.0))
        throw DomainError("winding radius must be positive");
    const PolyEvaluator fe(f);
    const double scale = std::max(magnitude_bound(f, Complex(std::abs(center) + radius, 0.0)),
                                  std::numeric_limits<double>::min());
    const double floor = opts.zero_tolerance * scale;
    const int n0 = std::max(opts.initial_samples, 4);
    const double min_arc = 2.0 * kPi * std::ldexp(1.0, -48);

    double min_modulus = std::numeric_limits<double>::infinity();
    double max_step = 0.0;
    long evaluations = 0;
    auto sample = [&](double theta) {
        const Complex v = fe(center + radius * Complex(std::cos(theta), std::sin(theta)));
        ++evaluations;
        const double m = std::abs(v);
        min_modulus = std::min(min_modulus, m);
        if (!(m > floor)) {
            std::ostringstream msg;
            msg << "|f| = " << m << " on the circle |u - " << describe(center) << "| = " << radius
                << " (threshold " << floor << "); probable root on or near the circle";
            throw CertificationFailure(msg.str(), m, max_step, evaluations);
        }
        return v;
    };

    // Uniform start, then local doubling of every arc whose phase step is not below pi/2.
    struct Arc {
        double a, b;
        Complex fa, fb;
    };
    std::vector<Arc> stack;
    std::vector<Complex> start(n0);
    for (int k = 0; k < n0; ++k)
        start[k] = sample(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n0));
    for (int k = n0 - 1; k >= 0; --k)
        stack.push_back({2.0 * kPi * k / n0, 2.0 * kPi * (k + 1) / n0, start[k], start[(k + 1) % n0]});

    double total = 0.0;
    while (!stack.empty()) {
        const Arc arc = stack.back();
        stack.pop_back();
        const double step = std::arg(arc.fb / arc.fa);
        if (std::abs(step) < kPi / 2.0) {
            total += step;
            max_step = std::max(max_step, std::abs(step));
            continue;
        }
        if (arc.b - arc.a <= min_arc || evaluations >= opts.max_samples) {
            std::ostringstream msg;
            msg << "phase steps stayed >= pi/2 at the sampling cap (" << opts.max_samples << " samples) on |u - "
                << describe(center) << "| = " << radius;
            throw CertificationFailure(msg.str(), min_modulus, std::abs(step), evaluations);
        }
        const double mid = 0.5 * (arc.a + arc.b);
        const Complex fm = sample(mid);
        stack.push_back({mid, arc.b, fm, arc.fb});
        stack.push_back({arc.a, mid, arc.fa, fm});
    }
    WindingResult r;
    r.degree = static_cast<int>(std::lround(total / (2.0 * kPi)));
    r.min_modulus = min_modulus;
    r.max_step_phase = max_step;
    r.samples_used = static_cast<int>(evaluations);
    return r;
}

int sm(const MixedPoly &f, Complex alpha, const SmOptions &opts) {
    if (f.nvars() != 1)
        throw DimensionMismatch("sm applies to one-variable polynomials");
    const double residual = std::abs(eval(f, alpha));
    const double scale = std::max(1.0, magnitude_bound(f, alpha));
    if (residual > opts.root_tolerance * scale) {
        std::ostringstream msg;
        msg << "|f(" << describe(alpha) << ")| = " << residual << " is not a root (tolerance "
            << opts.root_tolerance * scale << ")";
        throw NotARoot(msg.str());
    }

    bool have_previous = false;
    int previous = 0;
    double r = local_start_radius(f, alpha, opts.initial_radius, 1e-12 * scale);
    for (int k = 0; k <= opts.max_halvings; ++k, r *= 0.5) {
        try {
            const int w = winding_number(f, alpha, r, opts.winding).degree;
            if (have_previous && w == previous)
                return w;
            previous = w;
            have_previous = true;
        } catch (const CertificationFailure &) {
            have_previous = false;
        }
    }
    throw NonIsolated("no two consecutive certified radii agreed around " + describe(alpha) + " after " +
                      std::to_string(opts.max_halvings) + " halvings");
}

double dominance_radius(const MixedPoly &f, const WindingOptions &opts) {
    if (f.nvars() != 1)
        throw DimensionMismatch("dominance_radius applies to one-variable polynomials");
    const int top_degree = max_degree(f);
    const MixedPoly top = graded_part(f, top_degree);
    // Raises AdmissibilityViolation when some |gamma_j| == 1.
    (void)beta(factor_form(top));

    double lower_sum = 0.0;
    for (const auto &[m, c] : f.terms())
        if (m.degree() < top_degree)
            lower_sum += std::abs(c);
    if (lower_sum == 0.0)
        return 1.0;

    const double certified = unit_circle_floor(top, opts.initial_samples, opts.max_samples);
    if (certified > 0.0)
        return std::max(1.0, 4.0 * lower_sum / certified);
    throw CertificationFailure("could not certify a positive lower bound for the top form on the unit circle",
                               0.0, 0.0, opts.max_samples);
}

int total_sm(const MixedPoly &f, const WindingOptions &opts) {
    const double radius = dominance_radius(f, opts);
    return winding_number(f, 0.0, radius, opts).degree;
}

std::vector<TracePoint> trace(const MixedPoly &f, double radius, int n, Complex center) {
    if (n < 3)
        throw DomainError("trace needs at least 3 samples");
    if (!(radius > 0.0))
        throw DomainError("trace radius must be positive");
    const PolyEvaluator fe(f);
    std::vector<TracePoint> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        const Complex v = fe(center + radius * Complex(std::cos(theta), std::sin(theta)));
        out.push_back({theta, v.real(), v.imag()});
    }
    return out;
}

}  // namespace mixcurve
