#pragma once

#include <span>
#include <vector>

#include "mixcurve/poly.hpp"

namespace mixcurve {

struct AberthOptions {
    int max_iterations = 200;
    /// Target for |P(z)| / sum |a_k| |z|^k at every root.
    double residual_target = 1e-12;
};

/// All roots of sum_k coeffs[k] w^k (ascending order, leading coefficient nonzero),
/// by Aberth-Ehrlich simultaneous iteration. Throws RootFinderFailure if the
/// residual target is not met within the iteration cap.
std::vector<Complex> aberth_roots(std::span<const Complex> coeffs, const AberthOptions &opts = {});

struct RootCluster {
    Complex center;
    int multiplicity;
};

/// Groups approximate roots of a polynomial into clusters. Two approximations are linked
/// when they lie within radius * max(1, |w|) of each other or when their Weierstrass
/// inclusion discs overlap; each cluster is reported by its centroid.
std::vector<RootCluster> cluster_roots(std::span<const Complex> coeffs, std::span<const Complex> roots,
                                       double radius = 1e-6);

}  // namespace mixcurve
