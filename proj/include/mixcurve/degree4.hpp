#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mixcurve/poly.hpp"
#include "mixcurve/rootfind.hpp"

namespace mixcurve {

using Point2 = Eigen::Vector2cd;

/// 2x4 real Jacobian of (Re f, Im f) in (x1, y1, x2, y2).
Eigen::Matrix<double, 2, 4> real_jacobian(const MixedPoly &f, const Point2 &P);

/// Rows: grad fR, grad fI, grad gR, grad gI at P.
Eigen::Matrix4d gradient_frame(const MixedPoly &f, const MixedPoly &g, const Point2 &P);

/// Second singular value of the real Jacobian exceeds 1e-8 times the coefficient scale at P.
bool is_mixed_nonsingular(const MixedPoly &f, const Point2 &P);

/// Sign of det(gradient_frame). Throws NotARoot when P is off either curve, and
/// TransversalityFailure when either curve is singular at P
/// or |det| <= 1e-10 times the product of the row norms.
int itop_transverse(const MixedPoly &f, const MixedPoly &g, const Point2 &P);

struct DegreeOptions {
    int max_depth = 4;
    int order = 4;  // Gauss-Legendre points per panel and axis
    double zero_margin = 1e-10;
};

struct DegreeResult {
    int degree = 0;
    double raw_integral = 0.0;
    double residual = 0.0;
    int refinement_depth = 0;
    double radius = 0.0;
    double min_modulus = 0.0;
};

/// Brouwer degree of (fR, fI, gR, gI)/|.| on the 3-sphere of radius eps around P, as the
/// normalized integral of the pulled-back volume form. Panels 8x8x16 doubled per depth.
/// A coarse scan plus projected Gauss-Newton looks for zeros of phi on the sphere first.
/// Throws SphereHitsZero or NoConvergence.
DegreeResult degree_s3(const MixedPoly &f, const MixedPoly &g, const Point2 &P, double eps,
                       const DegreeOptions &opts = {});

/// Starts at half the distance to the nearest other known point (0.5 without any) and halves
/// on SphereHitsZero, at most max_shrinks times.
DegreeResult degree_s3_auto(const MixedPoly &f, const MixedPoly &g, const Point2 &P,
                            const std::vector<Point2> &others = {}, const DegreeOptions &opts = {},
                            int max_shrinks = 12);

/// Intersection number with the line z2 = 0 at (alpha, 0): sm of the restriction.
int itop_line(const MixedPoly &fhat, Complex alpha, const SmOptions &opts = {});

struct PointContribution {
    Point2 point;
    std::optional<int> value;
    bool at_infinity = false;
    std::string method;  // "transverse", "line", "degree", "winding"
    std::string error;
};

struct GlobalSumReport {
    std::vector<PointContribution> contributions;
    int total = 0;
    int expected = 0;
    bool passed = false;
    std::vector<std::string> assumptions;
};

/// Sum of local intersection numbers over the given points against dpolar_f * dpolar_g.
/// Per-point failures are recorded and make the check fail.
GlobalSumReport global_sum_check(const MixedPoly &f, const MixedPoly &g, const std::vector<Point2> &points,
                                 int dpolar_f, int dpolar_g);

/// One-variable line case on the projective line: affine roots found in the box, plus the point
/// at infinity read in the chart Z1 = 1, compared against the polar degree of f.
GlobalSumReport line_slice_check(const MixedPoly &f, const Box &box, const RootFindOptions &opts = {});

}  // namespace mixcurve
