#include "lorenzn/covering.hpp"

#include <cmath>

namespace lorenzn {

double wrap_angle(double phi) {
    double w = std::fmod(phi, 2.0 * M_PI);
    if (w < 0.0) w += 2.0 * M_PI;
    if (w >= 2.0 * M_PI) w = 0.0;
    return w;
}

namespace {

void require_fold(int n) {
    if (n < 1) throw DomainError("covering: fold count n must be >= 1");
}

double require_off_axis(const CartesianState& s, const char* op) {
    const double r = s.radius();
    if (!(r > 0.0))
        throw DomainError(std::string(op) + ": undefined on the z-axis (radius 0)");
    return r;
}

}  // namespace

CartesianState cover_point(const CartesianState& s, int n) {
    require_fold(n);
    const double r = require_off_axis(s, "cover_point");
    if (n == 1) return s;
    if (n == 2) {
        // Closed form, exact in x and y.
        return {(s.x * s.x - s.y * s.y) / r, 2.0 * s.x * s.y / r, s.z};
    }
    const double phi = std::atan2(s.y, s.x);
    return PolarState{r, n * phi, s.z}.to_cartesian();
}

std::vector<ColoredPoint> branch_preimages(const CartesianState& q, int n) {
    require_fold(n);
    const double r = require_off_axis(q, "branch_preimages");
    const double phi_q = wrap_angle(std::atan2(q.y, q.x));
    std::vector<ColoredPoint> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double phi = (phi_q + 2.0 * M_PI * k) / n;
        out.push_back({PolarState{r, phi, q.z}.to_cartesian(), k});
    }
    return out;
}

int color_of(const CartesianState& s, int n) {
    require_fold(n);
    require_off_axis(s, "color_of");
    const double phi = wrap_angle(std::atan2(s.y, s.x));
    int c = static_cast<int>(std::floor(n * phi / (2.0 * M_PI)));
    if (c >= n) c = n - 1;  // guard against phi rounding to 2*pi
    return c;
}

Trajectory cover_trajectory(const Trajectory& traj, int n) {
    require_fold(n);
    if (traj.kind != CoordKind::Cartesian)
        throw DomainError("cover_trajectory: expects a Cartesian trajectory");
    Trajectory out;
    out.kind = CoordKind::Cartesian;
    out.times = traj.times;
    out.meta = traj.meta;
    out.meta["covering_n"] = std::to_string(n);
    out.meta["color_convention"] = "color=floor(n*phi/(2pi)), phi in [0,2pi), ccw from +x";
    out.states.reserve(traj.size());
    out.colors.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const CartesianState s = traj.cartesian_at(i);
        if (!(s.radius() > 0.0))
            throw DomainError("cover_trajectory: sample " + std::to_string(i) +
                              " lies on the z-axis");
        out.states.push_back(cover_point(s, n).to_array());
        out.colors.push_back(color_of(s, n));
    }
    return out;
}

Trajectory lift_trajectory(const Trajectory& traj, int n, int initial_color) {
    require_fold(n);
    if (traj.kind != CoordKind::Cartesian)
        throw DomainError("lift_trajectory: expects a Cartesian trajectory");
    if (traj.size() == 0) throw DomainError("lift_trajectory: empty trajectory");
    if (initial_color < 0 || initial_color >= n)
        throw DomainError("lift_trajectory: initial_color out of range");

    Trajectory out;
    out.kind = CoordKind::Cartesian;
    out.times = traj.times;
    out.meta = traj.meta;
    out.meta["lift_n"] = std::to_string(n);
    out.states.reserve(traj.size());

    const double step_bound = M_PI / n;
    double prev_down = 0.0;  // downstairs angle, principal value
    double lifted = 0.0;     // upstairs angle, continuous (unwrapped)

    for (std::size_t i = 0; i < traj.size(); ++i) {
        const CartesianState q = traj.cartesian_at(i);
        const double r = q.radius();
        if (!(r > 0.0))
            throw DomainError("lift_trajectory: sample " + std::to_string(i) +
                              " lies on the z-axis");
        const double phi = std::atan2(q.y, q.x);
        if (i == 0) {
            lifted = (wrap_angle(phi) + 2.0 * M_PI * initial_color) / n;
        } else {
            double dphi = std::remainder(phi - prev_down, 2.0 * M_PI);
            if (std::abs(dphi) >= step_bound)
                throw DomainError(
                    "lift_trajectory: ambiguous lift between samples " +
                    std::to_string(i - 1) + " and " + std::to_string(i) +
                    " (downstairs angular step >= pi/n; supply denser sampling)");
            // Nearest preimage: preimage angles sit on a 2*pi/n lattice, so
            // the continuous choice moves by the downstairs step over n.
            // Snap onto the exact lattice so rounding does not accumulate
            // along long trajectories.
            lifted += dphi / n;
            lifted += std::remainder(phi - n * lifted, 2.0 * M_PI) / n;
        }
        prev_down = phi;
        out.states.push_back(PolarState{r, lifted, q.z}.to_cartesian().to_array());
    }
    return out;
}

}  // namespace lorenzn
