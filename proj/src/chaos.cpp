#include "lorenzn/chaos.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lorenzn/dynamics.hpp"

namespace lorenzn {

void LyapunovConfig::validate() const {
    if (!(total_time >= 100.0))
        throw ConfigError("LyapunovConfig: total_time must be >= 100");
    if (!(transient >= 0.0)) throw ConfigError("LyapunovConfig: transient must be >= 0");
    if (!(tau > 0.0)) throw ConfigError("LyapunovConfig: tau must be > 0");
    if (!(delta0 > 0.0)) throw ConfigError("LyapunovConfig: delta0 must be > 0");
    integrator.validate();
}

double LyapunovEstimate::standard_error(int blocks) const {
    if (blocks < 2 || convergence.size() < static_cast<std::size_t>(2 * blocks))
        return std::numeric_limits<double>::quiet_NaN();
    // Recover per-interval increments of sum(log d_i / delta0) from the
    // running averages, then block them.
    const std::size_t m = convergence.size();
    std::vector<double> incr(m);
    double prev_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double sum = convergence[i].second * convergence[i].first;
        incr[i] = sum - prev_sum;
        prev_sum = sum;
    }
    const std::size_t per = m / blocks;
    std::vector<double> block_lambda;
    const double tau = convergence[0].first;
    for (int b = 0; b < blocks; ++b) {
        double s = 0.0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) s += incr[i];
        block_lambda.push_back(s / (per * tau));
    }
    double mean = 0.0;
    for (double v : block_lambda) mean += v;
    mean /= blocks;
    double var = 0.0;
    for (double v : block_lambda) var += (v - mean) * (v - mean);
    var /= (blocks - 1);
    return std::sqrt(var / blocks);
}

namespace {

double norm3(const Vec3& a, const Vec3& b) {
    const double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    while (true) {
        const Vec3 v{g(rng), g(rng), g(rng)};
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n > 1e-3) return {v[0] / n, v[1] / n, v[2] / n};
    }
}

}  // namespace

LyapunovEstimate lyapunov_max_field(const VectorField& field, const Vec3& s0,
                                    const LyapunovConfig& cfg) {
    cfg.validate();
    LyapunovEstimate est;
    est.settings = cfg;

    std::mt19937_64 rng(cfg.seed);
    const Vec3 dir = random_unit(rng);

    Vec3 principal = s0;
    if (cfg.transient > 0.0)
        principal = flow(field, principal, cfg.transient, cfg.integrator);

    Vec3 companion;
    for (int i = 0; i < 3; ++i) companion[i] = principal[i] + cfg.delta0 * dir[i];

    const long intervals = static_cast<long>(std::ceil(cfg.total_time / cfg.tau));
    double log_sum = 0.0;
    double elapsed = 0.0;
    est.convergence.reserve(intervals);

    try {
        for (long k = 0; k < intervals; ++k) {
            principal = flow(field, principal, cfg.tau, cfg.integrator);
            companion = flow(field, companion, cfg.tau, cfg.integrator);
            const double d = norm3(principal, companion);
            if (!(d > 0.0) || !std::isfinite(d))
                throw NumericalFailure("lyapunov_max: degenerate separation",
                                       cfg.transient + elapsed, principal);
            log_sum += std::log(d / cfg.delta0);
            elapsed += cfg.tau;
            est.convergence.emplace_back(elapsed, log_sum / elapsed);
            // Renormalize the companion back to distance delta0.
            const double scale = cfg.delta0 / d;
            for (int i = 0; i < 3; ++i)
                companion[i] = principal[i] + scale * (companion[i] - principal[i]);
        }
    } catch (const NumericalFailure& e) {
        if (!est.convergence.empty()) est.lambda1 = est.convergence.back().second;
        throw LyapunovFailure(e, est);
    }

    est.lambda1 = est.convergence.back().second;
    return est;
}

LyapunovEstimate lyapunov_max(const SystemSpec& spec, const Vec3& s0,
                              const LyapunovConfig& cfg) {
    return lyapunov_max_field(make_field(spec), s0, cfg);
}

Vec3 default_initial_state(const SystemSpec& spec) {
    switch (spec.family) {
        case Family::Standard:
            return {1.0, 1.0, 1.0};
        case Family::L2:
            return {1.0, 0.1, 0.5};
        case Family::L1:
        case Family::Ln:
            // Polar (radius, angle, z), off the axis near the attractor.
            return {1.0, 0.1, 0.5};
    }
    return {1.0, 1.0, 1.0};
}

std::vector<ChaosRow> chaos_table(const std::vector<SystemSpec>& specs,
                                  const LyapunovConfig& cfg) {
    if (specs.empty()) throw ConfigError("chaos_table: empty spec list");
    std::vector<ChaosRow> rows(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        rows[i].spec = specs[i];
        try {
            const LyapunovEstimate est =
                lyapunov_max(specs[i], default_initial_state(specs[i]), cfg);
            rows[i].ok = true;
            rows[i].lambda1 = est.lambda1;
            rows[i].stderr_lambda = est.standard_error(10);
        } catch (const std::exception& e) {
            rows[i].ok = false;
            rows[i].error = e.what();
        }
    }
    return rows;
}

}  // namespace lorenzn
