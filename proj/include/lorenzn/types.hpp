#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace lorenzn {

using Vec3 = std::array<double, 3>;

/// Minimum distance from the z-axis accepted by the quotient fields and the
/// covering map. Points closer than this are treated as axis singularities.
inline constexpr double kRadiusMin = 1e-9;

/// Invalid input to a pure operation (bad parameters, axis point, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Integration blew up: step underflow, non-finite state, or the trajectory
/// ran into a field singularity. Carries the time and state at failure.
struct NumericalFailure : std::runtime_error {
    NumericalFailure(const std::string& what, double t, Vec3 s)
        : std::runtime_error(what), time(t), state(s) {}
    double time;
    Vec3 state;
};

/// Malformed configuration (scenario files, CLI flags, CSV input).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameters of the standard Lorenz equations. The classical Rayleigh
/// parameter is spelled out as `rayleigh` to keep it distinct from the polar
/// radius used by the covering map.
struct StandardParams {
    double sigma = 10.0;
    double rayleigh = 28.0;
    double b = 8.0 / 3.0;

    void validate() const {
        if (!(sigma > 0.0)) throw DomainError("StandardParams: sigma must be > 0");
        if (!(b > 0.0)) throw DomainError("StandardParams: b must be > 0");
        if (!std::isfinite(sigma) || !std::isfinite(rayleigh) || !std::isfinite(b))
            throw DomainError("StandardParams: non-finite parameter");
    }

    static StandardParams canonical() { return {}; }
};

/// Parameters (mu, beta, gamma) of the normalized system and its quotient
/// and extensions.
struct NormalizedParams {
    double mu;
    double beta;
    double gamma;

    void validate() const {
        if (!(mu > 0.0)) throw DomainError("NormalizedParams: mu must be > 0");
        if (!(beta > 0.0)) throw DomainError("NormalizedParams: beta must be > 0");
        if (!std::isfinite(mu) || !std::isfinite(beta) || !std::isfinite(gamma))
            throw DomainError("NormalizedParams: non-finite parameter");
    }
};

struct CartesianState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double radius() const { return std::hypot(x, y); }
    Vec3 to_array() const { return {x, y, z}; }
    static CartesianState from_array(const Vec3& v) { return {v[0], v[1], v[2]}; }
};

/// Polar phase-space point (radius, angle, z). The angle is kept unwrapped;
/// reduction mod 2*pi happens only where a representative is needed.
struct PolarState {
    double radius = 0.0;
    double angle = 0.0;
    double z = 0.0;

    CartesianState to_cartesian() const {
        return {radius * std::cos(angle), radius * std::sin(angle), z};
    }
    Vec3 to_array() const { return {radius, angle, z}; }
    static PolarState from_array(const Vec3& v) { return {v[0], v[1], v[2]}; }

    static PolarState from_cartesian(const CartesianState& s) {
        return {s.radius(), std::atan2(s.y, s.x), s.z};
    }
};

enum class Family { Standard, L2, L1, Ln };

std::string family_name(Family f);

/// Which member of the Lorenz-type class a run refers to. Standard carries
/// StandardParams, everything else NormalizedParams. `n` is meaningful for
/// Ln only (L1 and L2 are the n=1 and n=2 cases up to representation).
struct SystemSpec {
    Family family = Family::L2;
    int n = 1;
    std::variant<StandardParams, NormalizedParams> params;

    const StandardParams& standard_params() const {
        return std::get<StandardParams>(params);
    }
    const NormalizedParams& normalized_params() const {
        return std::get<NormalizedParams>(params);
    }

    /// Fold count of the family member: 1 for Standard/L1, 2 for L2, n for Ln.
    int fold() const {
        switch (family) {
            case Family::Standard: return 1;
            case Family::L1: return 1;
            case Family::L2: return 2;
            case Family::Ln: return n;
        }
        return 1;
    }

    void validate() const;
};

}  // namespace lorenzn
