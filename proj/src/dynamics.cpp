#include "lorenzn/dynamics.hpp"

#include <cmath>

namespace lorenzn {

std::string family_name(Family f) {
    switch (f) {
        case Family::Standard: return "standard";
        case Family::L2: return "l2";
        case Family::L1: return "l1";
        case Family::Ln: return "ln";
    }
    return "?";
}

void SystemSpec::validate() const {
    if (family == Family::Standard) {
        if (!std::holds_alternative<StandardParams>(params))
            throw DomainError("SystemSpec: standard family requires StandardParams");
        standard_params().validate();
    } else {
        if (!std::holds_alternative<NormalizedParams>(params))
            throw DomainError("SystemSpec: " + family_name(family) +
                              " requires NormalizedParams");
        normalized_params().validate();
    }
    if (family == Family::Ln && n < 1)
        throw DomainError("SystemSpec: n must be >= 1");
}

CartesianState vf_standard(const CartesianState& s, const StandardParams& p) {
    return {p.sigma * (s.y - s.x),
            (p.rayleigh - s.z) * s.x - s.y,
            -p.b * s.z + s.x * s.y};
}

CartesianState vf_L2(const CartesianState& s, const NormalizedParams& p) {
    // The sign of the cubic term is fixed by requiring exact conjugacy with
    // the standard equations under the normalizing change of variables
    // (verified symbolically and enforced by the conjugacy tests).
    return {s.y,
            (1.0 - (1.0 - p.gamma) * s.x * s.x - s.z) * s.x - p.mu * s.y,
            p.beta * (p.gamma * s.x * s.x - s.z)};
}

PolarState vf_L1_polar(const PolarState& s, const NormalizedParams& p) {
    if (!(s.radius > 0.0))
        throw DomainError("vf_L1_polar: undefined on the z-axis (radius <= 0)");
    const double rho = s.radius;
    const double C = std::cos(s.angle);
    const double S = std::sin(s.angle);
    // Upstairs x^2 = rho^2 (1+C)/2, x y = rho^2 S/2 for either preimage;
    // both sheets give the same value, which is what makes the quotient
    // field well defined.
    const double x2 = rho * rho * (1.0 + C) * 0.5;
    const double drho = rho * (0.5 * S * (2.0 - (1.0 - p.gamma) * x2 - s.z) -
                               p.mu * (1.0 - C) * 0.5);
    const double dpsi = (1.0 + C) * (1.0 - (1.0 - p.gamma) * x2 - s.z) -
                        p.mu * S - (1.0 - C);
    const double dz = p.beta * (p.gamma * x2 - s.z);
    return {drho, dpsi, dz};
}

PolarState vf_Ln_polar(const PolarState& s, const NormalizedParams& p, int n) {
    if (n < 1) throw DomainError("vf_Ln_polar: n must be >= 1");
    if (!(s.radius > 0.0))
        throw DomainError("vf_Ln_polar: undefined on the z-axis (radius <= 0)");
    const PolarState down{s.radius, static_cast<double>(n) * s.angle, s.z};
    const PolarState f = vf_L1_polar(down, p);
    return {f.radius, f.angle / static_cast<double>(n), f.z};
}

CartesianState vf_Ln_cartesian(const CartesianState& s, const NormalizedParams& p, int n) {
    const double rho = s.radius();
    if (rho < kRadiusMin)
        throw DomainError("vf_Ln_cartesian: point (" + std::to_string(s.x) + ", " +
                          std::to_string(s.y) + ", " + std::to_string(s.z) +
                          ") is within radius_min of the z-axis");
    const double phi = std::atan2(s.y, s.x);
    const PolarState f = vf_Ln_polar({rho, phi, s.z}, p, n);
    const double c = std::cos(phi);
    const double sn = std::sin(phi);
    return {f.radius * c - rho * sn * f.angle,
            f.radius * sn + rho * c * f.angle,
            f.z};
}

double time_scale(const StandardParams& p) {
    if (!(p.rayleigh > 1.0))
        throw DomainError("time_scale: requires rayleigh > 1");
    return std::sqrt((p.rayleigh - 1.0) * p.sigma);
}

NormalizedParams params_normalize(const StandardParams& p) {
    p.validate();
    if (!(p.rayleigh > 1.0))
        throw DomainError("params_normalize: requires rayleigh > 1");
    const double s = time_scale(p);
    return {(1.0 + p.sigma) / s, p.b / s, 1.0 - p.b / (2.0 * p.sigma)};
}

StandardParams params_denormalize(const NormalizedParams& p) {
    p.validate();
    if (!(p.gamma > 0.0 && p.gamma < 1.0))
        throw DomainError("params_denormalize: requires 0 < gamma < 1");
    const double denom = 2.0 * p.mu * (1.0 - p.gamma) - p.beta;
    if (!(denom > 0.0))
        throw DomainError("params_denormalize: requires 2 mu (1 - gamma) > beta");
    const double sigma = p.beta / denom;
    const double b = 2.0 * sigma * (1.0 - p.gamma);
    const double rayleigh = 1.0 + (1.0 + sigma) * (1.0 + sigma) / (p.mu * p.mu * sigma);
    return {sigma, rayleigh, b};
}

TimedState state_normalize(const CartesianState& S, double t_lorenz, const StandardParams& p) {
    p.validate();
    if (!(p.rayleigh > 1.0))
        throw DomainError("state_normalize: requires rayleigh > 1");
    const double rm1 = p.rayleigh - 1.0;
    CartesianState s;
    s.x = S.x / std::sqrt(rm1 * p.b);
    s.y = (S.y - S.x) * std::sqrt(p.sigma / p.b) / rm1;
    s.z = (S.z - S.x * S.x / (2.0 * p.sigma)) / rm1;
    return {s, time_scale(p) * t_lorenz};
}

TimedState state_denormalize(const CartesianState& s, double t, const StandardParams& p) {
    p.validate();
    if (!(p.rayleigh > 1.0))
        throw DomainError("state_denormalize: requires rayleigh > 1");
    const double rm1 = p.rayleigh - 1.0;
    CartesianState S;
    S.x = std::sqrt(rm1 * p.b) * s.x;
    S.y = S.x + rm1 * std::sqrt(p.b / p.sigma) * s.y;
    S.z = rm1 * s.z + S.x * S.x / (2.0 * p.sigma);
    return {S, t / time_scale(p)};
}

FixedPointSet fixed_points(const SystemSpec& spec) {
    spec.validate();
    FixedPointSet out;
    switch (spec.family) {
        case Family::Standard: {
            const auto& p = spec.standard_params();
            out.points.push_back({0.0, 0.0, 0.0});
            if (p.rayleigh > 1.0) {
                const double c = std::sqrt(p.b * (p.rayleigh - 1.0));
                out.points.push_back({c, c, p.rayleigh - 1.0});
                out.points.push_back({-c, -c, p.rayleigh - 1.0});
            }
            break;
        }
        case Family::L2: {
            const double g = spec.normalized_params().gamma;
            out.points.push_back({0.0, 0.0, 0.0});
            out.points.push_back({1.0, 0.0, g});
            out.points.push_back({-1.0, 0.0, g});
            break;
        }
        case Family::L1:
        case Family::Ln: {
            const double g = spec.normalized_params().gamma;
            const int n = spec.fold();
            for (int k = 0; k < n; ++k) {
                const double phi = 2.0 * M_PI * k / n;
                out.points.push_back(PolarState{1.0, phi, g}.to_cartesian());
            }
            out.axis_degenerate = true;
            break;
        }
    }
    return out;
}

}  // namespace lorenzn
