#include "lorenzn/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "lorenzn/dynamics.hpp"

namespace lorenzn {

void IntegratorConfig::validate() const {
    if (mode == StepMode::Fixed && !(step > 0.0))
        throw ConfigError("IntegratorConfig: fixed mode requires step > 0");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ConfigError("IntegratorConfig: tolerances must be > 0");
    if (!(min_step > 0.0))
        throw ConfigError("IntegratorConfig: min_step must be > 0");
    if (max_step > 0.0 && !(min_step < max_step))
        throw ConfigError("IntegratorConfig: min_step must be < max_step");
    if (!(sample_interval >= min_step))
        throw ConfigError("IntegratorConfig: sample_interval must be >= min_step");
}

void Trajectory::validate() const {
    if (states.size() != times.size())
        throw ConfigError("Trajectory: times/states length mismatch");
    if (!colors.empty() && colors.size() != times.size())
        throw ConfigError("Trajectory: color channel length mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ConfigError("Trajectory: timestamps not strictly increasing at row " +
                              std::to_string(i));
}

Trajectory Trajectory::to_cartesian() const {
    if (kind == CoordKind::Cartesian) return *this;
    Trajectory out = *this;
    out.kind = CoordKind::Cartesian;
    for (std::size_t i = 0; i < states.size(); ++i)
        out.states[i] = polar_at(i).to_cartesian().to_array();
    return out;
}

namespace {

bool finite(const Vec3& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

Vec3 axpy(const Vec3& a, double h, const Vec3& d) {
    return {a[0] + h * d[0], a[1] + h * d[1], a[2] + h * d[2]};
}

// Cubic Hermite interpolant over one accepted step.
Vec3 hermite(double t, double t0, double t1, const Vec3& y0, const Vec3& y1,
             const Vec3& f0, const Vec3& f1) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    Vec3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = h00 * y0[i] + h * h10 * f0[i] + h01 * y1[i] + h * h11 * f1[i];
    return out;
}

struct StepResult {
    Vec3 y;       // 5th order solution
    Vec3 f_end;   // field at the end point (FSAL stage)
    double err;   // scaled error norm
};

// Dormand-Prince 5(4) coefficients.
StepResult dopri_step(const VectorField& f, const Vec3& y0, const Vec3& k1, double h,
                      double rel_tol, double abs_tol) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    Vec3 t;
    for (int i = 0; i < 3; ++i) t[i] = y0[i] + h * a21 * k1[i];
    const Vec3 k2 = f(t);
    for (int i = 0; i < 3; ++i) t[i] = y0[i] + h * (a31 * k1[i] + a32 * k2[i]);
    const Vec3 k3 = f(t);
    for (int i = 0; i < 3; ++i) t[i] = y0[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const Vec3 k4 = f(t);
    for (int i = 0; i < 3; ++i)
        t[i] = y0[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const Vec3 k5 = f(t);
    for (int i = 0; i < 3; ++i)
        t[i] = y0[i] +
               h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const Vec3 k6 = f(t);

    StepResult r;
    for (int i = 0; i < 3; ++i)
        r.y[i] = y0[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    r.f_end = f(r.y);  // k7, FSAL

    double err2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                              e6 * k6[i] + e7 * r.f_end[i]);
        const double sc = abs_tol + rel_tol * std::max(std::abs(y0[i]), std::abs(r.y[i]));
        err2 += (e / sc) * (e / sc);
    }
    r.err = std::sqrt(err2 / 3.0);
    return r;
}

Vec3 rk4_step(const VectorField& f, const Vec3& y, double h) {
    const Vec3 k1 = f(y);
    const Vec3 k2 = f(axpy(y, h / 2, k1));
    const Vec3 k3 = f(axpy(y, h / 2, k2));
    const Vec3 k4 = f(axpy(y, h, k3));
    Vec3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

class Sampler {
public:
    Sampler(Trajectory& out, double t0, double interval, double t1)
        : out_(out), t0_(t0), interval_(interval), t1_(t1) {}

    void emit(double t, const Vec3& y) {
        out_.times.push_back(t);
        out_.states.push_back(y);
    }

    // Emit all cadence samples inside the accepted step (t_prev, t_cur].
    void cover(double t_prev, double t_cur, const Vec3& y_prev, const Vec3& y_cur,
               const Vec3& f_prev, const Vec3& f_cur) {
        while (true) {
            const double t_next = t0_ + (next_++) * interval_;
            if (t_next > t_cur + 1e-14 * std::max(1.0, std::abs(t_cur)) ||
                t_next >= t1_) {
                --next_;
                return;
            }
            emit(t_next, hermite(t_next, t_prev, t_cur, y_prev, y_cur, f_prev, f_cur));
        }
    }

private:
    Trajectory& out_;
    double t0_, interval_, t1_;
    long next_ = 1;
};

}  // namespace

Trajectory integrate(const VectorField& field, const Vec3& s0, double t0, double t1,
                     const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(t1 > t0)) throw ConfigError("integrate: requires t1 > t0");
    if (!finite(s0)) throw NumericalFailure("integrate: non-finite initial state", t0, s0);

    Trajectory out;
    Sampler sampler(out, t0, cfg.sample_interval, t1);

    double t = t0;
    Vec3 y = s0;
    sampler.emit(t0, s0);

    // Any DomainError raised by the field during a stage evaluation becomes
    // a NumericalFailure stamped with the time of the current step.
    const VectorField guarded = [&field, &t](const Vec3& yy) -> Vec3 {
        try {
            return field(yy);
        } catch (const DomainError& e) {
            throw NumericalFailure(std::string("integrate: field domain error (") +
                                       e.what() + ")",
                                   t, yy);
        }
    };
    auto eval = [&guarded](double, const Vec3& yy) { return guarded(yy); };

    if (cfg.mode == StepMode::Fixed) {
        Vec3 fy = eval(t, y);
        while (t < t1) {
            const double h = std::min(cfg.step, t1 - t);
            const Vec3 y_new = rk4_step(guarded, y, h);
            if (!finite(y_new))
                throw NumericalFailure("integrate: non-finite state", t + h, y_new);
            const Vec3 f_new = eval(t + h, y_new);
            sampler.cover(t, t + h, y, y_new, fy, f_new);
            t += h;
            y = y_new;
            fy = f_new;
        }
        sampler.emit(t1, y);
        return out;
    }

    // Adaptive Dormand-Prince with PI controller: safety 0.9, growth
    // clamped at x5, shrink at x0.2.
    const double span = t1 - t0;
    const double hmax = cfg.max_step > 0.0 ? std::min(cfg.max_step, span) : span;
    double h = std::min(hmax, std::max(cfg.min_step, 1e-3 * span));
    double err_prev = 1.0;
    Vec3 fy = eval(t, y);

    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < cfg.min_step)
            throw NumericalFailure("integrate: step size underflow", t, y);

        const StepResult r = dopri_step(guarded, y, fy, h, cfg.rel_tol, cfg.abs_tol);
        if (!finite(r.y))
            throw NumericalFailure("integrate: non-finite state", t + h, r.y);

        if (r.err <= 1.0) {
            sampler.cover(t, t + h, y, r.y, fy, r.f_end);
            t += h;
            y = r.y;
            fy = r.f_end;
            const double err = std::max(r.err, 1e-10);
            double fac = 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, 5.0);
            h = std::min(h * fac, hmax);
            err_prev = err;
        } else {
            const double fac = std::clamp(0.9 * std::pow(r.err, -0.2), 0.2, 1.0);
            h *= fac;
            if (h < cfg.min_step)
                throw NumericalFailure("integrate: step size underflow", t, y);
        }
    }
    sampler.emit(t1, y);
    return out;
}

Vec3 flow(const VectorField& field, const Vec3& s0, double dt, const IntegratorConfig& cfg) {
    if (dt == 0.0) return s0;
    IntegratorConfig c = cfg;
    c.sample_interval = std::max(c.sample_interval, dt);  // endpoint only
    const Trajectory traj = integrate(field, s0, 0.0, dt, c);
    return traj.states.back();
}

VectorField make_field(const SystemSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::Standard: {
            const StandardParams p = spec.standard_params();
            return [p](const Vec3& v) {
                return vf_standard(CartesianState::from_array(v), p).to_array();
            };
        }
        case Family::L2: {
            const NormalizedParams p = spec.normalized_params();
            return [p](const Vec3& v) {
                return vf_L2(CartesianState::from_array(v), p).to_array();
            };
        }
        case Family::L1:
        case Family::Ln: {
            const NormalizedParams p = spec.normalized_params();
            const int n = spec.fold();
            return [p, n](const Vec3& v) {
                if (v[0] < kRadiusMin)
                    throw DomainError("polar field: radius below radius_min");
                return vf_Ln_polar(PolarState::from_array(v), p, n).to_array();
            };
        }
    }
    throw DomainError("make_field: unknown family");
}

CoordKind native_coords(Family family) {
    return (family == Family::L1 || family == Family::Ln) ? CoordKind::Polar
                                                          : CoordKind::Cartesian;
}

}  // namespace lorenzn
