#pragma once

#include <functional>
#include <vector>

#include "mixcurve/rootfind.hpp"

namespace mixcurve {

struct BifurcationReport {
    double t = 0.0;
    std::vector<RootRecord> roots;
    int sum_sm = 0;
    int reference_sm = 0;
    std::vector<UnresolvedRegion> unresolved;

    bool balanced() const { return unresolved.empty() && sum_sm == reference_sm; }
};

using PolyFamily = std::function<MixedPoly(double)>;

/// Roots of family(t) in the box with their sm, compared against sm(family(0), 0).
/// The comparison is meaningful only while the box boundary stays root-free along the family.
BifurcationReport bifurcate(const PolyFamily &family, double t, const Box &box,
                            const RootFindOptions &opts = {});

/// t -> base + t * direction.
PolyFamily linear_family(MixedPoly base, MixedPoly direction);

}  // namespace mixcurve
