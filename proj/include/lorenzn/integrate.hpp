#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lorenzn/types.hpp"

namespace lorenzn {

/// Autonomous 3-component vector field. Must be pure and reentrant; may
/// throw DomainError on points outside its domain.
using VectorField = std::function<Vec3(const Vec3&)>;

enum class StepMode { Fixed, Adaptive };

struct IntegratorConfig {
    StepMode mode = StepMode::Adaptive;
    double step = 1e-3;          // fixed mode
    double rel_tol = 1e-9;       // adaptive mode
    double abs_tol = 1e-12;
    double max_step = 0.0;       // 0 means no cap beyond the interval length
    double min_step = 1e-12;
    double sample_interval = 0.01;

    void validate() const;
};

enum class CoordKind { Cartesian, Polar };

/// Time-stamped state sequence. States are raw triples interpreted per
/// `kind`; `colors` is empty unless a color channel has been attached.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec3> states;
    std::vector<int> colors;
    CoordKind kind = CoordKind::Cartesian;
    std::map<std::string, std::string> meta;

    std::size_t size() const { return times.size(); }
    bool has_colors() const { return !colors.empty(); }

    CartesianState cartesian_at(std::size_t i) const {
        return CartesianState::from_array(states[i]);
    }
    PolarState polar_at(std::size_t i) const {
        return PolarState::from_array(states[i]);
    }

    /// Cartesian view: polar trajectories are converted sample by sample,
    /// Cartesian ones are returned as-is. Colors and metadata carry over.
    Trajectory to_cartesian() const;

    void validate() const;
};

/// Integrate `field` from s0 over [t0, t1], sampling every
/// cfg.sample_interval plus the endpoint. Fixed mode is classical RK4;
/// adaptive mode is an embedded Dormand-Prince 5(4) pair with PI step
/// control and cubic Hermite dense output at the sample times.
Trajectory integrate(const VectorField& field, const Vec3& s0, double t0, double t1,
                     const IntegratorConfig& cfg);

/// Endpoint of the flow map: state after time dt (dt = 0 returns s0).
Vec3 flow(const VectorField& field, const Vec3& s0, double dt, const IntegratorConfig& cfg);

/// Vector field of a SystemSpec in its canonical integration coordinates
/// (Cartesian for Standard/L2, polar with unwrapped angle for L1/Ln).
VectorField make_field(const SystemSpec& spec);

/// Coordinates make_field integrates the given family in.
CoordKind native_coords(Family family);

}  // namespace lorenzn
