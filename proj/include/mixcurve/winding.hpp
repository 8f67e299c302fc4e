#pragma once

#include <vector>

#include "mixcurve/poly.hpp"

namespace mixcurve {

struct WindingOptions {
    int initial_samples = 64;
    /// Cap on circle evaluations.
    int max_samples = 1 << 20;
    /// A sample with |f| below this fraction of the magnitude bound on the circle fails certification.
    double zero_tolerance = 1e-13;
};

/// Rotation number of f/|f| along a counterclockwise circle.
/// Certified: every consecutive principal phase step is below pi/2 and min |f| > 0.
struct WindingResult {
    int degree = 0;
    double min_modulus = 0.0;
    double max_step_phase = 0.0;
    int samples_used = 0;
};

/// Starts from opts.initial_samples uniform points and bisects every arc whose phase step is
/// not below pi/2, so sampling doubles only where the phase turns quickly.
/// Throws CertificationFailure when a sample is numerically zero or the cap is reached.
WindingResult winding_number(const MixedPoly &f, Complex center, double radius, const WindingOptions &opts = {});

struct SmOptions {
    /// Upper limit on the first circle radius; later radii halve it. The radius actually used
    /// is also capped by a local estimate from the Taylor expansion at alpha.
    double initial_radius = 0.25;
    int max_halvings = 40;
    /// |f(alpha)| must be at most this fraction of max(1, magnitude bound at alpha).
    double root_tolerance = 1e-9;
    WindingOptions winding;
};

/// Multiplicity with sign of an isolated root: the common winding number of two consecutive
/// certified circles in the sequence r0, r0/2, r0/4, ... where r0 is at most
/// opts.initial_radius. When the lowest form of f at alpha is bounded away from zero on the
/// unit circle, r0 lies inside its certified dominance disc and the result equals rho there.
/// Throws NotARoot or NonIsolated.
int sm(const MixedPoly &f, Complex alpha, const SmOptions &opts = {});

/// Radius beyond which the top form dominates twice the rest, |f_top| > 2 |f - f_top|.
/// Throws AdmissibilityViolation if f is not admissible at infinity.
double dominance_radius(const MixedPoly &f, const WindingOptions &opts = {});

/// Sum of sm over all roots, read off one certified circle of radius dominance_radius(f).
int total_sm(const MixedPoly &f, const WindingOptions &opts = {});

struct TracePoint {
    double theta;
    double re;
    double im;
};

/// f sampled at center + radius e^{i theta}, theta = 2 pi k / n, k = 0..n-1.
std::vector<TracePoint> trace(const MixedPoly &f, double radius, int n, Complex center = 0.0);

}  // namespace mixcurve
