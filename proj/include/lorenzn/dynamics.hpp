#pragma once

#include <vector>

#include "lorenzn/types.hpp"

namespace lorenzn {

// ---- Vector fields ---------------------------------------------------------

/// Standard Lorenz equations.
CartesianState vf_standard(const CartesianState& s, const StandardParams& p);

/// Normalized system L2.
CartesianState vf_L2(const CartesianState& s, const NormalizedParams& p);

/// Quotient system L1 in polar coordinates, obtained by pushing the L2 field
/// forward through the 2-fold covering (r, phi) -> (r, 2 phi). The closed
/// form depends on the quotient angle only through cos/sin, so it is
/// 2*pi-periodic downstairs as it must be.
PolarState vf_L1_polar(const PolarState& s, const NormalizedParams& p);

/// Zn-extension Ln in polar coordinates: the pullback of L1 through
/// (r, phi) -> (r, n phi).
PolarState vf_Ln_polar(const PolarState& s, const NormalizedParams& p, int n);

/// Cartesian view of vf_Ln_polar via the chain rule. Requires the point to
/// be at least kRadiusMin away from the z-axis.
CartesianState vf_Ln_cartesian(const CartesianState& s, const NormalizedParams& p, int n);

// ---- Parameter and state transforms ----------------------------------------

/// (sigma, rayleigh, b) -> (mu, beta, gamma). Requires rayleigh > 1.
NormalizedParams params_normalize(const StandardParams& p);

/// Inverse of params_normalize. Requires 2 mu (1 - gamma) > beta and
/// 0 < gamma < 1; otherwise no standard-form preimage exists.
StandardParams params_denormalize(const NormalizedParams& p);

struct TimedState {
    CartesianState state;
    double time;
};

/// Map a standard-system state and time to normalized coordinates.
TimedState state_normalize(const CartesianState& S, double t_lorenz, const StandardParams& p);

/// Inverse of state_normalize.
TimedState state_denormalize(const CartesianState& s, double t, const StandardParams& p);

/// Time rescaling factor: t = time_scale(p) * t_lorenz.
double time_scale(const StandardParams& p);

// ---- Equilibria ------------------------------------------------------------

struct FixedPointSet {
    /// Off-axis (and, where genuine, on-axis) equilibria in Cartesian
    /// coordinates, in a deterministic order.
    std::vector<CartesianState> points;
    /// True for L1/Ln, whose polar fields are undefined on the z-axis: the
    /// origin is a degenerate point of the quotient, not a regular
    /// equilibrium, and is excluded from `points`.
    bool axis_degenerate = false;
    CartesianState axis_point{0.0, 0.0, 0.0};
};

/// All equilibria of the given system, in closed form.
FixedPointSet fixed_points(const SystemSpec& spec);

}  // namespace lorenzn
