#include <doctest.h>

#include <cmath>

#include "lorenzn/dynamics.hpp"
#include "test_util.hpp"

using namespace lorenzn;
using testutil::PointSampler;

namespace {

// Frozen values computed with a 30-digit arbitrary-precision evaluation of
// the parameter relations at sigma=10, rayleigh=28, b=8/3.
constexpr double kMu = 0.66943868139520303;
constexpr double kBeta = 0.16228816518671589;
constexpr double kGamma = 13.0 / 15.0;
constexpr double kTimeScale = 16.431676725154983;  // sqrt(270)

NormalizedParams canonical_normalized() { return {kMu, kBeta, kGamma}; }

double vnorm(const CartesianState& s) {
    return std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z);
}

}  // namespace

TEST_CASE("vf_standard: equilibria and direct substitution") {
    const StandardParams p = StandardParams::canonical();

    const CartesianState at_origin = vf_standard({0, 0, 0}, p);
    CHECK(at_origin.x == 0.0);
    CHECK(at_origin.y == 0.0);
    CHECK(at_origin.z == 0.0);

    const double c = std::sqrt(72.0);  // sqrt(b (rayleigh-1)) = sqrt(72)
    const CartesianState at_cplus = vf_standard({c, c, 27.0}, p);
    CHECK(std::abs(at_cplus.x) < 1e-13);
    CHECK(std::abs(at_cplus.y) < 1e-13);
    CHECK(std::abs(at_cplus.z) < 1e-13);
    const CartesianState at_cminus = vf_standard({-c, -c, 27.0}, p);
    CHECK(std::abs(at_cminus.x) < 1e-13);
    CHECK(std::abs(at_cminus.y) < 1e-13);
    CHECK(std::abs(at_cminus.z) < 1e-13);

    const CartesianState d = vf_standard({1, 1, 1}, p);
    CHECK(d.x == 0.0);
    CHECK(d.y == 26.0);
    CHECK(d.z == doctest::Approx(-5.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("vf_L2: equilibria and frozen evaluation") {
    const NormalizedParams p = canonical_normalized();

    CHECK(vnorm(vf_L2({0, 0, 0}, p)) == 0.0);
    CHECK(vnorm(vf_L2({1, 0, p.gamma}, p)) < 1e-15);
    CHECK(vnorm(vf_L2({-1, 0, p.gamma}, p)) < 1e-15);

    const CartesianState d = vf_L2({1, 1, 1}, p);
    CHECK(d.x == 1.0);
    CHECK(d.y == doctest::Approx(-0.80277201472853636).epsilon(1e-14));
    CHECK(d.z == doctest::Approx(-0.021638422024895451).epsilon(1e-14));
}

TEST_CASE("vf_L2: Z2 equivariance") {
    const NormalizedParams p = canonical_normalized();
    PointSampler sampler(11);
    for (int i = 0; i < 1000; ++i) {
        const CartesianState s = sampler.next_cartesian();
        const CartesianState d = vf_L2(s, p);
        const CartesianState dm = vf_L2({-s.x, -s.y, s.z}, p);
        CHECK(dm.x == -d.x);
        CHECK(dm.y == -d.y);
        CHECK(dm.z == d.z);
    }
}

TEST_CASE("vf_L1_polar: quotient equilibrium and analytic slices") {
    const NormalizedParams p = canonical_normalized();

    const PolarState at_eq = vf_L1_polar({1.0, 0.0, p.gamma}, p);
    CHECK(std::abs(at_eq.radius) < 1e-15);
    CHECK(std::abs(at_eq.angle) < 1e-15);
    CHECK(std::abs(at_eq.z) < 1e-15);

    // At psi = pi the radial derivative collapses to -mu * rho.
    for (double rho : {0.3, 1.0, 2.5}) {
        const PolarState d = vf_L1_polar({rho, M_PI, 0.7}, p);
        CHECK(d.radius == doctest::Approx(-p.mu * rho).epsilon(1e-12));
    }

    // dz/dt comes straight from x^2 = rho^2 (1+cos psi)/2.
    PointSampler sampler(12);
    for (int i = 0; i < 200; ++i) {
        const PolarState s = sampler.next_polar();
        const PolarState d = vf_L1_polar(s, p);
        const double x2 = s.radius * s.radius * (1.0 + std::cos(s.angle)) / 2.0;
        CHECK(d.z == doctest::Approx(p.beta * (p.gamma * x2 - s.z)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(vf_L1_polar({0.0, 0.0, 0.0}, p), DomainError);
    CHECK_THROWS_AS(vf_L1_polar({-1.0, 0.0, 0.0}, p), DomainError);
}

TEST_CASE("vf_L1_polar: 2*pi periodicity in the quotient angle") {
    const NormalizedParams p = canonical_normalized();
    PointSampler sampler(13);
    for (int i = 0; i < 500; ++i) {
        const PolarState s = sampler.next_polar();
        const PolarState a = vf_L1_polar(s, p);
        const PolarState b = vf_L1_polar({s.radius, s.angle + 2.0 * M_PI, s.z}, p);
        CHECK(std::abs(a.radius - b.radius) < 1e-12);
        CHECK(std::abs(a.angle - b.angle) < 1e-12);
        CHECK(std::abs(a.z - b.z) < 1e-12);
    }
}

// The two oracles gating the derived L1 closed form.

TEST_CASE("oracle: n=2 pullback of L1 reproduces vf_L2 pointwise") {
    const NormalizedParams p = canonical_normalized();
    PointSampler sampler(42);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const CartesianState s = sampler.next_cartesian();
        const CartesianState via_quotient = vf_Ln_cartesian(s, p, 2);
        const CartesianState direct = vf_L2(s, p);
        worst = std::max(worst, testutil::dist(via_quotient, direct));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("oracle: finite-difference pushforward of vf_L2 matches vf_L1_polar") {
    // Map two states separated by h along the L2 flow direction through the
    // covering and difference-quotient the images. Entirely independent of
    // the closed-form quotient field.
    const NormalizedParams p = canonical_normalized();
    const double h = 1e-6;
    PointSampler sampler(43, 0.05, 3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const CartesianState s = sampler.next_cartesian();
        const CartesianState d = vf_L2(s, p);
        const CartesianState s2{s.x + h * d.x, s.y + h * d.y, s.z + h * d.z};
        if (s2.radius() < 0.04) continue;  // stay clear of the axis

        // Downstairs images in polar coordinates with a continuity-matched
        // angle difference.
        const double r0 = s.radius(), r1 = s2.radius();
        const double psi0 = 2.0 * std::atan2(s.y, s.x);
        const double psi1 = 2.0 * std::atan2(s2.y, s2.x);
        const double dpsi = std::remainder(psi1 - psi0, 2.0 * M_PI);

        const PolarState predicted = vf_L1_polar({r0, psi0, s.z}, p);
        CHECK(std::abs((r1 - r0) / h - predicted.radius) < 2e-4 * (1.0 + std::abs(predicted.radius)));
        CHECK(std::abs(dpsi / h - predicted.angle) < 2e-4 * (1.0 + std::abs(predicted.angle)));
        // The covering is the identity on z, so the downstairs z-derivative
        // is the upstairs one.
        CHECK(std::abs(d.z - predicted.z) < 1e-10 * (1.0 + std::abs(predicted.z)));
    }
}

TEST_CASE("vf_Ln_polar: n=1 identity and Zn equilibria") {
    const NormalizedParams p = canonical_normalized();
    PointSampler sampler(14);
    for (int i = 0; i < 500; ++i) {
        const PolarState s = sampler.next_polar();
        const PolarState a = vf_Ln_polar(s, p, 1);
        const PolarState b = vf_L1_polar(s, p);
        CHECK(a.radius == b.radius);
        CHECK(a.angle == b.angle);
        CHECK(a.z == b.z);
    }

    // Ln equilibria sit at angle 2*pi*k/n over the quotient equilibrium.
    for (int n : {2, 3, 5}) {
        for (int k = 0; k < n; ++k) {
            const PolarState d = vf_Ln_polar({1.0, 2.0 * M_PI * k / n, kGamma}, p, n);
            CHECK(std::abs(d.radius) < 1e-12);
            CHECK(std::abs(d.angle) < 1e-12);
            CHECK(std::abs(d.z) < 1e-12);
        }
    }
}

TEST_CASE("vf_Ln_polar: Zn equivariance (angle-shift invariance)") {
    const NormalizedParams p = canonical_normalized();
    PointSampler sampler(15);
    for (int n : {2, 3, 5}) {
        for (int i = 0; i < 2000; ++i) {
            const PolarState s = sampler.next_polar();
            const PolarState a = vf_Ln_polar(s, p, n);
            const PolarState b = vf_Ln_polar({s.radius, s.angle + 2.0 * M_PI / n, s.z}, p, n);
            CHECK(std::abs(a.radius - b.radius) < 1e-12);
            CHECK(std::abs(a.angle - b.angle) < 1e-12);
            CHECK(std::abs(a.z - b.z) < 1e-12);
        }
    }
}

TEST_CASE("vf_Ln_cartesian: chain-rule consistency and equilibrium") {
    const NormalizedParams p = canonical_normalized();

    const CartesianState at_eq = vf_Ln_cartesian({1.0, 0.0, kGamma}, p, 2);
    CHECK(vnorm(at_eq) < 1e-13);

    PointSampler sampler(16);
    for (int n : {1, 2, 3, 4}) {
        for (int i = 0; i < 500; ++i) {
            const CartesianState s = sampler.next_cartesian();
            const CartesianState d = vf_Ln_cartesian(s, p, n);
            const double rho = s.radius();
            const PolarState dp = vf_Ln_polar(PolarState::from_cartesian(s), p, n);
            CHECK(std::abs((s.x * d.x + s.y * d.y) / rho - dp.radius) <
                  1e-10 * (1.0 + std::abs(dp.radius)));
        }
    }

    CHECK_THROWS_AS(vf_Ln_cartesian({0.0, 0.0, 1.0}, p, 2), DomainError);
}

TEST_CASE("params_normalize: frozen canonical values") {
    const NormalizedParams p = params_normalize(StandardParams::canonical());
    CHECK(p.mu == doctest::Approx(kMu).epsilon(1e-15));
    CHECK(p.beta == doctest::Approx(kBeta).epsilon(1e-15));
    CHECK(p.gamma == doctest::Approx(kGamma).epsilon(1e-15));

    // sigma = b/2 puts gamma exactly at 0.
    const NormalizedParams edge = params_normalize({1.5, 10.0, 3.0});
    CHECK(edge.gamma == 0.0);

    CHECK_THROWS_AS(params_normalize({10.0, 1.0, 8.0 / 3.0}), DomainError);
    CHECK_THROWS_AS(params_normalize({10.0, 0.5, 8.0 / 3.0}), DomainError);
}

TEST_CASE("params round trip and denormalize preconditions") {
    PointSampler sampler(17);
    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> sig(0.5, 20.0), ray(1.1, 50.0), bb(0.5, 5.0);
    for (int i = 0; i < 500; ++i) {
        StandardParams p{sig(rng), ray(rng), bb(rng)};
        if (!(p.b / (2.0 * p.sigma) < 1.0)) continue;  // gamma must be in (0,1)
        const StandardParams q = params_denormalize(params_normalize(p));
        CHECK(q.sigma == doctest::Approx(p.sigma).epsilon(1e-12));
        CHECK(q.rayleigh == doctest::Approx(p.rayleigh).epsilon(1e-12));
        CHECK(q.b == doctest::Approx(p.b).epsilon(1e-12));
    }

    CHECK_THROWS_AS(params_denormalize({1.0, 1.0, 0.5}), DomainError);   // 2 mu (1-g) <= beta
    CHECK_THROWS_AS(params_denormalize({1.0, 0.1, 1.0}), DomainError);   // gamma >= 1
    CHECK_THROWS_AS(params_denormalize({1.0, 0.1, 1.5}), DomainError);
}

TEST_CASE("state_normalize: equilibria map onto equilibria") {
    const StandardParams p = StandardParams::canonical();
    const NormalizedParams np = params_normalize(p);

    const TimedState o = state_normalize({0, 0, 0}, 0.0, p);
    CHECK(o.state.x == 0.0);
    CHECK(o.state.y == 0.0);
    CHECK(o.state.z == 0.0);

    const double c = std::sqrt(p.b * (p.rayleigh - 1.0));
    const TimedState plus = state_normalize({c, c, p.rayleigh - 1.0}, 0.0, p);
    CHECK(plus.state.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(plus.state.y) < 1e-14);
    CHECK(plus.state.z == doctest::Approx(np.gamma).epsilon(1e-14));

    const TimedState minus = state_normalize({-c, -c, p.rayleigh - 1.0}, 0.0, p);
    CHECK(minus.state.x == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(minus.state.y) < 1e-14);
    CHECK(minus.state.z == doctest::Approx(np.gamma).epsilon(1e-14));

    CHECK(state_normalize({1, 1, 1}, 2.0, p).time ==
          doctest::Approx(2.0 * kTimeScale).epsilon(1e-15));

    CHECK_THROWS_AS(state_normalize({1, 1, 1}, 0.0, StandardParams{10.0, 0.5, 8.0 / 3.0}),
                    DomainError);
}

TEST_CASE("state transforms: round trip within 1e-12") {
    const StandardParams p = StandardParams::canonical();
    PointSampler sampler(19, 0.05, 30.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        const CartesianState S = sampler.next_cartesian();
        const TimedState fwd = state_normalize(S, 0.7, p);
        const TimedState back = state_denormalize(fwd.state, fwd.time, p);
        CHECK(back.state.x == doctest::Approx(S.x).epsilon(1e-12));
        CHECK(back.state.y == doctest::Approx(S.y).epsilon(1e-12));
        CHECK(back.state.z == doctest::Approx(S.z).epsilon(1e-12));
        CHECK(back.time == doctest::Approx(0.7).epsilon(1e-12));
    }

    // Normalized equilibria map back to C+-.
    const TimedState cplus = state_denormalize({1.0, 0.0, kGamma}, 0.0, p);
    const double c = std::sqrt(p.b * (p.rayleigh - 1.0));
    CHECK(cplus.state.x == doctest::Approx(c).epsilon(1e-13));
    CHECK(cplus.state.y == doctest::Approx(c).epsilon(1e-13));
    CHECK(cplus.state.z == doctest::Approx(27.0).epsilon(1e-13));
}

TEST_CASE("fixed_points: every family") {
    SystemSpec std_spec{Family::Standard, 1, StandardParams::canonical()};
    const FixedPointSet fs = fixed_points(std_spec);
    REQUIRE(fs.points.size() == 3);
    CHECK_FALSE(fs.axis_degenerate);
    for (const CartesianState& p : fs.points)
        CHECK(vnorm(vf_standard(p, std_spec.standard_params())) < 1e-12);

    SystemSpec l2_spec{Family::L2, 1, canonical_normalized()};
    const FixedPointSet f2 = fixed_points(l2_spec);
    REQUIRE(f2.points.size() == 3);
    for (const CartesianState& p : f2.points)
        CHECK(vnorm(vf_L2(p, canonical_normalized())) < 1e-12);

    SystemSpec l1_spec{Family::L1, 1, canonical_normalized()};
    const FixedPointSet f1 = fixed_points(l1_spec);
    REQUIRE(f1.points.size() == 1);
    CHECK(f1.axis_degenerate);
    CHECK(f1.points[0].x == doctest::Approx(1.0));
    CHECK(f1.points[0].z == doctest::Approx(kGamma));

    SystemSpec l3_spec{Family::Ln, 3, canonical_normalized()};
    const FixedPointSet f3 = fixed_points(l3_spec);
    REQUIRE(f3.points.size() == 3);
    CHECK(f3.axis_degenerate);
    for (const CartesianState& p : f3.points)
        CHECK(vnorm(vf_Ln_cartesian(p, canonical_normalized(), 3)) < 1e-12);
    // The three points form an exact 2*pi/3 rotation orbit.
    for (int k = 0; k < 3; ++k) {
        const double a = 2.0 * M_PI / 3.0;
        const CartesianState& p = f3.points[k];
        const CartesianState& q = f3.points[(k + 1) % 3];
        CHECK(q.x == doctest::Approx(p.x * std::cos(a) - p.y * std::sin(a)).epsilon(1e-12));
        CHECK(q.y == doctest::Approx(p.x * std::sin(a) + p.y * std::cos(a)).epsilon(1e-12));
    }
}
