#pragma once

#include <vector>

#include "lorenzn/integrate.hpp"
#include "lorenzn/types.hpp"

namespace lorenzn {

/// Quotient-space point with the branch (sheet) index it came from.
struct ColoredPoint {
    CartesianState base;
    int color = 0;
};

/// Angle reduced to [0, 2*pi).
double wrap_angle(double phi);

/// n-fold covering map: radius and z preserved, angle multiplied by n.
/// For n = 2 this is (x1, y1) = ((x^2 - y^2)/r, 2 x y / r).
CartesianState cover_point(const CartesianState& s, int n);

/// The n preimages of a quotient point, at angles (phi_q + 2 pi k)/n with
/// phi_q in [0, 2*pi), tagged with color k.
std::vector<ColoredPoint> branch_preimages(const CartesianState& q, int n);

/// Sheet label of an upstairs point: floor(n * phi / (2 pi)) with phi
/// reduced to [0, 2*pi). Sector 0 starts at the positive x-axis,
/// counterclockwise.
int color_of(const CartesianState& s, int n);

/// Map an upstairs Cartesian trajectory through the covering, attaching the
/// color channel. Timestamps are preserved.
Trajectory cover_trajectory(const Trajectory& traj, int n);

/// Continuous lift of a downstairs Cartesian trajectory through the n-fold
/// covering, starting on the sheet `initial_color`. Consecutive samples must
/// differ in downstairs angle by less than pi/n, otherwise the sheet choice
/// is ambiguous and the lift is refused.
Trajectory lift_trajectory(const Trajectory& traj, int n, int initial_color);

}  // namespace lorenzn
