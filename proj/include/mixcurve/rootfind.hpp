#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mixcurve/poly.hpp"
#include "mixcurve/winding.hpp"

namespace mixcurve {

/// Axis-aligned rectangle [xmin, xmax] x [ymin, ymax] in the u-plane.
struct Box {
    double xmin = -1.0;
    double xmax = 1.0;
    double ymin = -1.0;
    double ymax = 1.0;

    bool contains(Complex z) const {
        return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
    }
    double boundary_distance(Complex z) const;
};

enum class RootKind { positive_simple, negative_simple, mixed_singular };

std::string_view to_string(RootKind kind);

struct RootRecord {
    Complex location;
    int sm = 0;
    RootKind kind = RootKind::mixed_singular;
    Complex wirtinger_a;  // df/du at the root
    Complex wirtinger_b;  // df/dconj(u) at the root
};

/// Part of the box where roots could be neither excluded nor isolated.
struct UnresolvedRegion {
    Box bounds;
    std::size_t cells = 0;
    std::string reason;
};

struct RootFindOptions {
    double min_cell_width = 1e-4;
    double newton_residual = 1e-12;
    /// Accepted roots satisfy |f| <= acceptance_residual * max(1, magnitude bound).
    double acceptance_residual = 1e-9;
    double merge_radius = 1e-7;
    double kind_tolerance = 1e-9;
    std::size_t max_cells = 4'000'000;
    std::size_t max_component_cells = 100'000;
    std::size_t max_roots_per_component = 8;
    std::size_t seeds_per_component = 16;
    SmOptions sm;
};

struct RootFindResult {
    std::vector<RootRecord> roots;  // sorted by (Re, Im)
    std::vector<UnresolvedRegion> unresolved;

    int sm_sum() const;
};

/// Kind from the Wirtinger moduli: simple when | |a| - |b| | exceeds
/// tolerance * max(|a| + |b|, coefficient_scale), mixed-singular otherwise.
RootKind classify_kind(Complex a, Complex b, double coefficient_scale, double tolerance = 1e-9);

/// Wirtinger values, kind, and sm (by winding) at a given root.
RootRecord classify(const MixedPoly &f, Complex alpha, const SmOptions &opts = {});

/// Quadtree exclusion over the box, Newton polishing of surviving cells, and per-root
/// sm from winding numbers on root-free circles. Throws BoundaryRoot when a root sits on
/// (or within one leaf cell of) the box boundary.
RootFindResult find_roots(const MixedPoly &f, const Box &box, const RootFindOptions &opts = {});

/// Number of nonzero roots of u^n + u + conj(u) found in [-3, 3]^2.
int count_nonzero_roots(int n);

}  // namespace mixcurve
