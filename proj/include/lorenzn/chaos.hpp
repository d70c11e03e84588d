#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lorenzn/integrate.hpp"
#include "lorenzn/types.hpp"

namespace lorenzn {

struct LyapunovConfig {
    double total_time = 2000.0;  // accumulation time after the transient
    double transient = 50.0;
    double tau = 0.5;            // renormalization interval
    double delta0 = 1e-8;        // reference separation
    std::uint64_t seed = 0;
    IntegratorConfig integrator{};

    void validate() const;
};

struct LyapunovEstimate {
    double lambda1 = 0.0;
    /// Running estimate after each renormalization: (elapsed time, lambda).
    std::vector<std::pair<double, double>> convergence;
    LyapunovConfig settings;

    /// Standard error from batching the per-interval log-growth increments
    /// into `blocks` blocks (>= 10 recommended).
    double standard_error(int blocks = 10) const;
};

/// Thrown when the underlying integration fails mid-estimate; carries the
/// convergence data accumulated up to the failure.
struct LyapunovFailure : NumericalFailure {
    LyapunovFailure(const NumericalFailure& cause, LyapunovEstimate partial_estimate)
        : NumericalFailure(cause.what(), cause.time, cause.state),
          partial(std::move(partial_estimate)) {}
    LyapunovEstimate partial;
};

/// Largest Lyapunov exponent by two-trajectory renormalization: evolve the
/// principal and a perturbed companion, rescale the separation back to
/// delta0 every tau, and average the log growth. The perturbation direction
/// is drawn from the seeded generator.
LyapunovEstimate lyapunov_max(const SystemSpec& spec, const Vec3& s0,
                              const LyapunovConfig& cfg);

/// Same estimator for an arbitrary field (used for calibration runs).
LyapunovEstimate lyapunov_max_field(const VectorField& field, const Vec3& s0,
                                    const LyapunovConfig& cfg);

struct ChaosRow {
    SystemSpec spec;
    bool ok = false;
    double lambda1 = 0.0;
    double stderr_lambda = 0.0;
    std::string error;
};

/// One Lyapunov estimate per spec, each started from a point on its own
/// attractor (a transient-settled default initial condition). Failures are
/// recorded in-row; remaining rows are still computed.
std::vector<ChaosRow> chaos_table(const std::vector<SystemSpec>& specs,
                                  const LyapunovConfig& cfg);

/// Default off-axis initial condition for a system family, valid for every
/// field domain in the class.
Vec3 default_initial_state(const SystemSpec& spec);

}  // namespace lorenzn
