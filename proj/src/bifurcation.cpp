#include "mixcurve/bifurcation.hpp"

#include <utility>

namespace mixcurve {

BifurcationReport bifurcate(const PolyFamily &family, double t, const Box &box, const RootFindOptions &opts) {
    BifurcationReport report;
    report.t = t;
    report.reference_sm = sm(family(0.0), 0.0, opts.sm);
    RootFindResult found = find_roots(family(t), box, opts);
    report.sum_sm = found.sm_sum();
    report.roots = std::move(found.roots);
    report.unresolved = std::move(found.unresolved);
    return report;
}

PolyFamily linear_family(MixedPoly base, MixedPoly direction) {
    return [base = std::move(base), direction = std::move(direction)](double t) {
        return base + Complex(t, 0.0) * direction;
    };
}

}  // namespace mixcurve
