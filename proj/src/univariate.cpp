#include "mixcurve/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mixcurve/errors.hpp"

namespace mixcurve {

namespace {

struct Horner {
    Complex value;
    Complex derivative;
    double magnitude;  // sum |a_k| |z|^k
};

Horner horner(std::span<const Complex> a, Complex z) {
    Complex p = a.back();
    Complex dp = 0.0;
    double mag = std::abs(a.back());
    const double r = std::abs(z);
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
        mag = mag * r + std::abs(a[k]);
    }
    return {p, dp, mag};
}

// A root of multiplicity k is a simple root of P^(k-1); Newton on that derivative
// recovers it to full precision, where the centroid of the cluster only reaches ~eps^(1/k).
Complex polish_multiple(std::span<const Complex> a, Complex start, int multiplicity) {
    std::vector<Complex> d(a.begin(), a.end());
    for (int order = 1; order < multiplicity; ++order) {
        for (std::size_t k = 1; k < d.size(); ++k)
            d[k - 1] = d[k] * static_cast<double>(k);
        d.pop_back();
    }
    if (d.size() < 2)
        return start;
    Complex z = start;
    double best = std::abs(horner(d, z).value);
    for (int it = 0; it < 30 && best > 0.0; ++it) {
        const Horner h = horner(d, z);
        if (h.derivative == Complex(0.0, 0.0))
            break;
        const Complex next = z - h.value / h.derivative;
        const double r = std::abs(horner(d, next).value);
        if (!(r < best))
            break;
        z = next;
        best = r;
    }
    return std::abs(z - start) <= 1e-3 * std::max(1.0, std::abs(start)) ? z : start;
}

}  // namespace

std::vector<Complex> aberth_roots(std::span<const Complex> coeffs, const AberthOptions &opts) {
    if (coeffs.empty() || coeffs.back() == Complex(0.0, 0.0))
        throw DomainError("aberth_roots needs a nonzero leading coefficient");
    const std::size_t m = coeffs.size() - 1;
    if (m == 0)
        return {};
    if (m == 1)
        return {-coeffs[0] / coeffs[1]};

    // Initial guesses on a circle whose radius is the geometric mean of the root moduli.
    const double lead = std::abs(coeffs.back());
    const double tail = std::abs(coeffs.front());
    const double radius = tail > 0.0 ? std::pow(tail / lead, 1.0 / static_cast<double>(m)) : 1.0;
    std::vector<Complex> z(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m) + 0.4;
        z[k] = std::polar(radius, theta);
    }

    auto converged = [&](const Complex &zk) {
        const Horner h = horner(coeffs, zk);
        return std::abs(h.value) <= opts.residual_target * h.magnitude;
    };

    for (int it = 0; it < opts.max_iterations; ++it) {
        bool all_done = true;
        for (std::size_t i = 0; i < m; ++i) {
            const Horner h = horner(coeffs, z[i]);
            if (std::abs(h.value) <= opts.residual_target * h.magnitude)
                continue;
            all_done = false;
            if (h.derivative == Complex(0.0, 0.0))
                continue;
            const Complex newton = h.value / h.derivative;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i && z[i] != z[j])
                    repulsion += 1.0 / (z[i] - z[j]);
            const Complex denom = 1.0 - newton * repulsion;
            z[i] -= denom == Complex(0.0, 0.0) ? newton : newton / denom;
        }
        if (all_done)
            return z;
    }
    if (std::all_of(z.begin(), z.end(), converged))
        return z;
    throw RootFinderFailure("Aberth iteration did not reach the residual target in " +
                            std::to_string(opts.max_iterations) + " iterations");
}

std::vector<RootCluster> cluster_roots(std::span<const Complex> coeffs, std::span<const Complex> roots,
                                       double radius) {
    const std::size_t m = roots.size();
    const Complex lead = coeffs.back();

    // Weierstrass correction W_i = P(z_i) / (a_m prod_{j != i} (z_i - z_j)); discs of radius
    // m |W_i| around the approximations are inclusion regions.
    std::vector<double> disc(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        Complex prod = lead;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i)
                prod *= roots[i] - roots[j];
        const Complex p = horner(coeffs, roots[i]).value;
        disc[i] = prod == Complex(0.0, 0.0) ? 0.0 : static_cast<double>(m) * std::abs(p / prod);
    }

    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = std::abs(roots[i] - roots[j]);
            const double tol = radius * std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
            if (d <= tol || d <= disc[i] + disc[j])
                parent[find(i)] = find(j);
        }
    }

    std::vector<RootCluster> out;
    std::vector<std::size_t> slot(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == m) {
            slot[r] = out.size();
            out.push_back({0.0, 0});
        }
        RootCluster &c = out[slot[r]];
        c.center += roots[i];
        c.multiplicity += 1;
    }
    for (RootCluster &c : out) {
        c.center /= static_cast<double>(c.multiplicity);
        if (c.multiplicity > 1)
            c.center = polish_multiple(coeffs, c.center, c.multiplicity);
    }
    return out;
}

}  // namespace mixcurve
