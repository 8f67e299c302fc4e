#include "mixcurve/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "mixcurve/errors.hpp"
#include "mixcurve/homform.hpp"

namespace mixcurve {

double Box::boundary_distance(Complex z) const {
    return std::min({z.real() - xmin, xmax - z.real(), z.imag() - ymin, ymax - z.imag()});
}

std::string_view to_string(RootKind kind) {
    switch (kind) {
    case RootKind::positive_simple: return "positive-simple";
    case RootKind::negative_simple: return "negative-simple";
    case RootKind::mixed_singular: return "mixed-singular";
    }
    return "unknown";
}

int RootFindResult::sm_sum() const {
    int s = 0;
    for (const RootRecord &r : roots)
        s += r.sm;
    return s;
}

RootKind classify_kind(Complex a, Complex b, double coefficient_scale, double tolerance) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (std::abs(ma - mb) <= tolerance * std::max(ma + mb, coefficient_scale))
        return RootKind::mixed_singular;
    return ma > mb ? RootKind::positive_simple : RootKind::negative_simple;
}

namespace {

double coefficient_scale(const MixedPoly &f, Complex alpha) {
    const int d = f.is_zero() ? 0 : max_degree(f);
    return max_coefficient(f) * std::pow(std::max(1.0, std::abs(alpha)), std::max(d - 1, 0));
}

// Dense coefficient grid c[nu][mu] of a one-variable polynomial for cheap Taylor shifts.
class DenseMixed {
public:
    explicit DenseMixed(const MixedPoly &f) {
        for (const auto &[m, c] : f.terms()) {
            max_nu_ = std::max(max_nu_, m.holo(0));
            max_mu_ = std::max(max_mu_, m.anti(0));
        }
        coeffs_.assign((max_nu_ + 1) * (max_mu_ + 1), 0.0);
        for (const auto &[m, c] : f.terms())
            at(coeffs_, m.holo(0), m.anti(0)) = c;
        const int n = std::max(max_nu_, max_mu_);
        binom_.assign((n + 1) * (n + 1), 0.0);
        for (int i = 0; i <= n; ++i) {
            binom_[i * (n + 1)] = 1.0;
            for (int k = 1; k <= i; ++k)
                binom_[i * (n + 1) + k] = binom_[(i - 1) * (n + 1) + k - 1] + (k < i ? binom_[(i - 1) * (n + 1) + k] : 0.0);
        }
        stride_ = n + 1;
    }

    // Exclusion test for the cell z0 + [-hx, hx] x [-hy, hy], with f(z0 + w) = sum d_ab w^a conj(w)^b
    // and rho the half-diagonal. Either |d00| beats every other term on the disc, or one real
    // component of d00 beats the exact range of the linear part plus the higher-order tail.
    bool excludes(Complex z0, double hx, double hy) const {
        const double rho = std::hypot(hx, hy);
        const int N = max_nu_;
        const int M = max_mu_;
        std::vector<Complex> zp(N + 1), cp(M + 1);
        zp[0] = cp[0] = 1.0;
        for (int k = 1; k <= N; ++k)
            zp[k] = zp[k - 1] * z0;
        for (int k = 1; k <= M; ++k)
            cp[k] = cp[k - 1] * std::conj(z0);

        // e[a][mu] = sum_nu c[nu][mu] C(nu, a) z0^(nu - a)
        std::vector<Complex> e((N + 1) * (M + 1), 0.0);
        double magnitude = 0.0;
        const double r0 = std::abs(z0);
        for (int nu = 0; nu <= N; ++nu) {
            for (int mu = 0; mu <= M; ++mu) {
                const Complex c = coeffs_[nu * (M + 1) + mu];
                if (c == Complex(0.0, 0.0))
                    continue;
                magnitude += std::abs(c) * std::pow(r0, nu + mu);
                for (int a = 0; a <= nu; ++a)
                    e[a * (M + 1) + mu] += c * binom(nu, a) * zp[nu - a];
            }
        }
        Complex d00 = 0.0, d10 = 0.0, d01 = 0.0;
        double tail = 0.0, high = 0.0;
        std::vector<double> rho_pow(N + M + 1, 1.0);
        for (int k = 1; k <= N + M; ++k)
            rho_pow[k] = rho_pow[k - 1] * rho;
        for (int a = 0; a <= N; ++a) {
            for (int b = 0; b <= M; ++b) {
                Complex d = 0.0;
                for (int mu = b; mu <= M; ++mu) {
                    const Complex ev = e[a * (M + 1) + mu];
                    if (ev != Complex(0.0, 0.0))
                        d += ev * binom(mu, b) * cp[mu - b];
                }
                if (a == 0 && b == 0) {
                    d00 = d;
                    continue;
                }
                if (a + b == 1)
                    (a == 1 ? d10 : d01) = d;
                else
                    high += std::abs(d) * rho_pow[a + b];
                tail += std::abs(d) * rho_pow[a + b];
            }
        }
        const double margin = 1e-13 * magnitude + std::numeric_limits<double>::min();
        const double slack = 1.0 + 1e-12;
        if (std::abs(d00) > tail * slack + margin)
            return true;
        // d/dx = d10 + d01, d/dy = i (d10 - d01).
        const Complex gx = d10 + d01;
        const Complex gy = Complex(0.0, 1.0) * (d10 - d01);
        const double re_range = std::abs(gx.real()) * hx + std::abs(gy.real()) * hy + high;
        const double im_range = std::abs(gx.imag()) * hx + std::abs(gy.imag()) * hy + high;
        return std::abs(d00.real()) > re_range * slack + margin || std::abs(d00.imag()) > im_range * slack + margin;
    }

private:
    Complex &at(std::vector<Complex> &v, int nu, int mu) const { return v[nu * (max_mu_ + 1) + mu]; }
    double binom(int n, int k) const { return binom_[n * stride_ + k]; }

    int max_nu_ = 0;
    int max_mu_ = 0;
    int stride_ = 1;
    std::vector<Complex> coeffs_;
    std::vector<double> binom_;
};

struct NewtonSystem {
    PolyEvaluator f;
    PolyEvaluator fa;
    PolyEvaluator fb;

    explicit NewtonSystem(const MixedPoly &p)
        : f(p), fa(wirtinger(p, WirtingerKind::holomorphic)), fb(wirtinger(p, WirtingerKind::antiholomorphic)) {}

    // Real 2x2 Newton on (Re f, Im f); df = a dz + b dconj(z) gives
    // d/dx = a + b and d/dy = i (a - b).
    std::optional<Complex> polish(Complex z, double reach, Complex origin) const {
        for (int it = 0; it < 500; ++it) {
            const Complex v = f(z);
            if (v == Complex(0.0, 0.0))
                break;
            const Complex a = fa(z);
            const Complex b = fb(z);
            const Complex dx = a + b;
            const Complex dy = Complex(0.0, 1.0) * (a - b);
            Eigen::Matrix2d J;
            J << dx.real(), dy.real(), dx.imag(), dy.imag();
            const double det = J.determinant();
            if (det == 0.0 || !std::isfinite(det))
                break;
            const Eigen::Vector2d full = J.inverse() * Eigen::Vector2d(-v.real(), -v.imag());
            if (!full.allFinite())
                return std::nullopt;
            // Backtrack only on a large increase of |f|: along curved valleys near singular roots
            // the full step briefly raises |f| yet still converges.
            Complex step(full.x(), full.y());
            const double current = std::abs(v);
            bool moved = false;
            for (int half = 0; half < 60; ++half, step *= 0.5) {
                if (std::abs(z + step - origin) <= reach && std::abs(f(z + step)) < 16.0 * current) {
                    moved = true;
                    break;
                }
            }
            if (!moved)
                break;
            z += step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z)))
                break;
        }
        return z;
    }
};

struct CellKey {
    std::int64_t i;
    std::int64_t j;
    bool operator==(const CellKey &) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey &k) const noexcept {
        return std::hash<std::int64_t>()(k.i * 0x9E3779B97F4A7C15LL ^ (k.j + 0x632BE59BD9B4E019LL));
    }
};

struct Component {
    std::vector<CellKey> cells;
    std::int64_t imin, imax, jmin, jmax;
};

}  // namespace

RootRecord classify(const MixedPoly &f, Complex alpha, const SmOptions &opts) {
    if (f.nvars() != 1)
        throw DimensionMismatch("classify applies to one-variable polynomials");
    RootRecord rec;
    rec.location = alpha;
    rec.sm = sm(f, alpha, opts);  // throws NotARoot first
    rec.wirtinger_a = eval(wirtinger(f, WirtingerKind::holomorphic), alpha);
    rec.wirtinger_b = eval(wirtinger(f, WirtingerKind::antiholomorphic), alpha);
    rec.kind = classify_kind(rec.wirtinger_a, rec.wirtinger_b, coefficient_scale(f, alpha));
    return rec;
}

RootFindResult find_roots(const MixedPoly &f, const Box &box, const RootFindOptions &opts) {
    if (f.nvars() != 1)
        throw DimensionMismatch("find_roots applies to one-variable polynomials");
    if (f.is_zero())
        throw DomainError("find_roots needs a nonzero polynomial");
    if (!(box.xmax > box.xmin) || !(box.ymax > box.ymin))
        throw DomainError("empty search box");

    const double width = box.xmax - box.xmin;
    const double height = box.ymax - box.ymin;
    int levels = 0;
    while (std::max(width, height) / std::ldexp(1.0, levels) > opts.min_cell_width)
        ++levels;
    const std::int64_t side = std::int64_t{1} << levels;
    const double cw = width / static_cast<double>(side);
    const double ch = height / static_cast<double>(side);

    const DenseMixed dense(f);
    struct Pending {
        int level;
        std::int64_t i, j;
    };
    std::vector<Pending> stack{{0, 0, 0}};
    std::vector<CellKey> leaves;
    std::size_t processed = 0;
    while (!stack.empty()) {
        const Pending cell = stack.back();
        stack.pop_back();
        if (++processed > opts.max_cells)
            throw RootFinderFailure("subdivision exceeded " + std::to_string(opts.max_cells) + " cells");
        const double sw = width / std::ldexp(1.0, cell.level);
        const double sh = height / std::ldexp(1.0, cell.level);
        const Complex center(box.xmin + (static_cast<double>(cell.i) + 0.5) * sw,
                             box.ymin + (static_cast<double>(cell.j) + 0.5) * sh);
        if (dense.excludes(center, 0.5 * sw, 0.5 * sh))
            continue;
        if (cell.level == levels) {
            leaves.push_back({cell.i, cell.j});
            continue;
        }
        for (int di = 0; di < 2; ++di)
            for (int dj = 0; dj < 2; ++dj)
                stack.push_back({cell.level + 1, 2 * cell.i + di, 2 * cell.j + dj});
    }

    // 8-connected components of surviving leaves.
    std::unordered_map<CellKey, std::size_t, CellKeyHash> index;
    for (std::size_t k = 0; k < leaves.size(); ++k)
        index.emplace(leaves[k], k);
    std::vector<char> seen(leaves.size(), 0);
    std::vector<Component> components;
    for (std::size_t start = 0; start < leaves.size(); ++start) {
        if (seen[start])
            continue;
        Component comp{{}, leaves[start].i, leaves[start].i, leaves[start].j, leaves[start].j};
        std::vector<std::size_t> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            const CellKey c = leaves[queue.back()];
            queue.pop_back();
            comp.cells.push_back(c);
            comp.imin = std::min(comp.imin, c.i);
            comp.imax = std::max(comp.imax, c.i);
            comp.jmin = std::min(comp.jmin, c.j);
            comp.jmax = std::max(comp.jmax, c.j);
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    auto it = index.find({c.i + di, c.j + dj});
                    if (it != index.end() && !seen[it->second]) {
                        seen[it->second] = 1;
                        queue.push_back(it->second);
                    }
                }
            }
        }
        components.push_back(std::move(comp));
    }

    auto cell_center = [&](const CellKey &c) {
        return Complex(box.xmin + (static_cast<double>(c.i) + 0.5) * cw, box.ymin + (static_cast<double>(c.j) + 0.5) * ch);
    };
    auto bounds_of = [&](const Component &c) {
        return Box{box.xmin + static_cast<double>(c.imin) * cw, box.xmin + static_cast<double>(c.imax + 1) * cw,
                   box.ymin + static_cast<double>(c.jmin) * ch, box.ymin + static_cast<double>(c.jmax + 1) * ch};
    };
    auto distance_to_box = [](Complex z, const Box &b) {
        const double dx = std::max({b.xmin - z.real(), 0.0, z.real() - b.xmax});
        const double dy = std::max({b.ymin - z.imag(), 0.0, z.imag() - b.ymax});
        return std::hypot(dx, dy);
    };

    const NewtonSystem newton(f);
    const PolyEvaluator fe(f);
    const MixedPoly fa = wirtinger(f, WirtingerKind::holomorphic);
    const MixedPoly fb = wirtinger(f, WirtingerKind::antiholomorphic);
    const double leaf_diag = std::hypot(cw, ch);

    RootFindResult result;
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
        const Component &comp = components[ci];
        const Box cb = bounds_of(comp);
        const bool touches_edge =
            comp.imin == 0 || comp.jmin == 0 || comp.imax == side - 1 || comp.jmax == side - 1;

        if (comp.cells.size() > opts.max_component_cells) {
            result.unresolved.push_back({cb, comp.cells.size(), "extended zero set (suspected non-isolated roots)"});
            continue;
        }

        // Newton seeds: lowest |f| cell centers, at least three cells apart.
        std::vector<std::pair<double, CellKey>> ranked;
        ranked.reserve(comp.cells.size());
        for (const CellKey &c : comp.cells)
            ranked.emplace_back(std::abs(fe(cell_center(c))), c);
        std::sort(ranked.begin(), ranked.end(), [](const auto &x, const auto &y) {
            return x.first < y.first || (x.first == y.first && (x.second.i < y.second.i ||
                                                               (x.second.i == y.second.i && x.second.j < y.second.j)));
        });
        std::vector<CellKey> seeds;
        for (const auto &[val, c] : ranked) {
            if (seeds.size() >= opts.seeds_per_component)
                break;
            const bool spaced = std::all_of(seeds.begin(), seeds.end(), [&](const CellKey &s) {
                return std::max(std::abs(s.i - c.i), std::abs(s.j - c.j)) >= 3;
            });
            if (spaced)
                seeds.push_back(c);
        }

        const Complex comp_center(0.5 * (cb.xmin + cb.xmax), 0.5 * (cb.ymin + cb.ymax));
        const double comp_radius = 0.5 * std::hypot(cb.xmax - cb.xmin, cb.ymax - cb.ymin);
        const double reach = comp_radius + 4.0 * leaf_diag;

        std::vector<Complex> found;
        for (const CellKey &s : seeds) {
            const auto z = newton.polish(cell_center(s), reach, comp_center);
            if (!z)
                continue;
            const double scale = std::max(1.0, magnitude_bound(f, *z));
            if (!(std::abs(fe(*z)) <= opts.acceptance_residual * scale))
                continue;
            const bool duplicate = std::any_of(found.begin(), found.end(), [&](Complex w) {
                return std::abs(w - *z) <= opts.merge_radius;
            });
            if (!duplicate)
                found.push_back(*z);
        }

        // Candidates joined by a segment on which |f| stays within the acceptance residual are one
        // ill-conditioned root; keep the lowest-|f| point among them and their centroid.
        auto accepted = [&](Complex z) {
            return std::abs(fe(z)) <= opts.acceptance_residual * std::max(1.0, magnitude_bound(f, z));
        };
        std::vector<std::vector<Complex>> valleys;
        for (Complex z : found) {
            std::vector<std::size_t> joined;
            for (std::size_t v = 0; v < valleys.size(); ++v) {
                const bool same = std::any_of(valleys[v].begin(), valleys[v].end(), [&](Complex w) {
                    for (int k = 1; k < 16; ++k)
                        if (!accepted(w + (z - w) * (k / 16.0)))
                            return false;
                    return true;
                });
                if (same)
                    joined.push_back(v);
            }
            if (joined.empty()) {
                valleys.push_back({z});
                continue;
            }
            std::vector<Complex> &target = valleys[joined.front()];
            target.push_back(z);
            for (std::size_t k = joined.size(); k-- > 1;) {
                target.insert(target.end(), valleys[joined[k]].begin(), valleys[joined[k]].end());
                valleys.erase(valleys.begin() + static_cast<std::ptrdiff_t>(joined[k]));
            }
        }
        found.clear();
        for (const std::vector<Complex> &v : valleys) {
            Complex centroid = 0.0;
            for (Complex z : v)
                centroid += z;
            centroid /= static_cast<double>(v.size());
            Complex best = v.front();
            for (Complex z : v)
                if (std::abs(fe(z)) < std::abs(fe(best)))
                    best = z;
            if (v.size() > 1 && accepted(centroid) && std::abs(fe(centroid)) <= std::abs(fe(best)))
                best = centroid;
            found.push_back(best);
        }

        if (found.empty()) {
            result.unresolved.push_back({cb, comp.cells.size(), "newton polishing did not converge"});
            continue;
        }
        if (found.size() > opts.max_roots_per_component) {
            result.unresolved.push_back({cb, comp.cells.size(), "too many roots in one cluster (suspected non-isolated)"});
            continue;
        }
        for (Complex z : found) {
            if (!box.contains(z) || (touches_edge && box.boundary_distance(z) < 2.0 * leaf_diag)) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "root near " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
                    << "i lies on or next to the search box boundary";
                throw BoundaryRoot(msg.str());
            }
        }

        // Root-free radius around the component: nearest other component, then the box edge.
        double limit = box.boundary_distance(comp_center);
        for (std::size_t cj = 0; cj < components.size(); ++cj)
            if (cj != ci)
                limit = std::min(limit, distance_to_box(comp_center, bounds_of(components[cj])));
        const double inner = comp_radius + leaf_diag;

        std::vector<int> sms(found.size(), 0);
        bool resolved = false;
        if (found.size() == 1 && limit > 1.2 * inner) {
            // Two circles inside the root-free annulus must agree (radius invariance).
            const double r1 = inner + 0.3 * (limit - inner);
            const double r2 = inner + 0.7 * (limit - inner);
            try {
                const int w1 = winding_number(f, comp_center, r1, opts.sm.winding).degree;
                const int w2 = winding_number(f, comp_center, r2, opts.sm.winding).degree;
                if (w1 == w2) {
                    sms[0] = w1;
                    resolved = true;
                }
            } catch (const CertificationFailure &) {
            }
        }
        if (!resolved) {
            for (std::size_t k = 0; k < found.size(); ++k) {
                double sep = limit;
                for (std::size_t m = 0; m < found.size(); ++m)
                    if (m != k)
                        sep = std::min(sep, std::abs(found[m] - found[k]));
                sep = std::min(sep, box.boundary_distance(found[k]));
                SmOptions so = opts.sm;
                so.initial_radius = std::min(so.initial_radius, 0.4 * sep);
                so.root_tolerance = opts.acceptance_residual;
                try {
                    sms[k] = sm(f, found[k], so);
                } catch (const NonIsolated &) {
                    result.unresolved.push_back({cb, comp.cells.size(), "winding did not stabilize"});
                    sms.clear();
                    break;
                }
            }
            if (sms.empty())
                continue;
        }

        for (std::size_t k = 0; k < found.size(); ++k) {
            RootRecord rec;
            rec.location = found[k];
            rec.sm = sms[k];
            rec.wirtinger_a = eval(fa, found[k]);
            rec.wirtinger_b = eval(fb, found[k]);
            rec.kind = classify_kind(rec.wirtinger_a, rec.wirtinger_b, coefficient_scale(f, found[k]),
                                     opts.kind_tolerance);
            const int expected = rec.kind == RootKind::positive_simple   ? 1
                                 : rec.kind == RootKind::negative_simple ? -1
                                                                          : 0;
            if (expected != 0 && expected != rec.sm) {
                result.unresolved.push_back({cb, comp.cells.size(), "winding disagrees with the Wirtinger sign test"});
                continue;
            }
            result.roots.push_back(rec);
        }
    }

    std::sort(result.roots.begin(), result.roots.end(), [](const RootRecord &a, const RootRecord &b) {
        return a.location.real() < b.location.real() ||
               (a.location.real() == b.location.real() && a.location.imag() < b.location.imag());
    });
    return result;
}

int count_nonzero_roots(int n) {
    if (n < 2)
        throw DomainError("count_nonzero_roots needs n >= 2");
    const MixedPoly f = pow(MixedPoly::variable(0), n) + MixedPoly::variable(0) + MixedPoly::conj_variable(0);
    RootFindOptions opts;
    const RootFindResult r = find_roots(f, Box{-3.0, 3.0, -3.0, 3.0}, opts);
    if (!r.unresolved.empty())
        throw RootFinderFailure("unresolved regions while counting roots of u^" + std::to_string(n) + " + u + conj(u)");
    return static_cast<int>(std::count_if(r.roots.begin(), r.roots.end(), [&](const RootRecord &rec) {
        return std::abs(rec.location) > opts.min_cell_width;
    }));
}

}  // namespace mixcurve
