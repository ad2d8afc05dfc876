#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "udw/errors.hpp"
#include "udw/response_closed.hpp"
#include "udw/response_numeric.hpp"

using namespace udw;
using std::numbers::pi;

namespace {

// Gaussian-switched inertial detector, exact:
// lambda^2/(4 pi) [e^{-x^2} - sqrt(pi) x erfc(x)], x = sigma omega.
double inertial_probability(double lambda, double sigma, double omega) {
    const double x = sigma * omega;
    return lambda * lambda / (4 * pi) * (std::exp(-x * x) - std::sqrt(pi) * x * std::erfc(x));
}

DetectorParams rate_params(double omega) { return {omega, 1.0, 1.0}; }

}  // namespace

TEST_CASE("planck oracle") {
    CHECK(planck_rate(1.0, 1.0) == doctest::Approx(2.9778e-4).epsilon(1e-4));
    CHECK(planck_rate(1.0, -1.0) == doctest::Approx(0.15945).epsilon(1e-4));
    for (double w : {0.1, 0.5, 1.0, 3.0}) {
        CHECK(planck_rate(2.0, w) / planck_rate(2.0, -w) == doctest::Approx(std::exp(-pi * w)).epsilon(1e-13));
    }
    // continuous through omega = 0
    CHECK(planck_rate(1.0, 1e-7) == doctest::Approx(planck_rate(1.0, 2e-6)).epsilon(1e-5));
    CHECK(planck_rate(1.0, 0.0) == doctest::Approx(1.0 / (4 * pi * pi)));
    CHECK_THROWS_AS(planck_rate(0.0, 1.0), InvalidArgument);
}

TEST_CASE("epsilon extrapolation") {
    auto r = epsilon_extrapolate({{0.02, 3.1}, {0.01, 3.05}, {0.005, 3.025}});
    CHECK(r.limit == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r.error_estimate < 1e-13);
    r = epsilon_extrapolate({{0.02, 2.0}, {0.01, 2.0}});
    CHECK(r.limit == 2.0);
    auto quad = [](double e) { return 1.0 + e * e; };
    r = epsilon_extrapolate({{0.02, quad(0.02)}, {0.01, quad(0.01)}, {0.005, quad(0.005)}},
                            Extrapolation::RichardsonQuadratic);
    CHECK(r.limit == doctest::Approx(1.0).epsilon(1e-8));
    r = epsilon_extrapolate({{0.02, 1.0}, {0.01, 1.5}, {0.005, 1.2}});
    CHECK_FALSE(r.warnings.empty());
    r = epsilon_extrapolate({{0.01, 7.0}}, Extrapolation::None);
    CHECK(r.limit == 7.0);

    CHECK_THROWS_AS(epsilon_extrapolate({{0.01, 1.0}, {0.02, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(epsilon_extrapolate({{0.01, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(epsilon_extrapolate({{0.02, 1.0}, {0.01, 1.0}}, Extrapolation::RichardsonQuadratic),
                    InvalidArgument);
}

TEST_CASE("regulator schedule") {
    const auto s = RegulatorSchedule::standard(2.0);
    REQUIRE(s.epsilons.size() == 3);
    CHECK(s.epsilons[0] == doctest::Approx(0.02));
    CHECK(RegulatorSchedule{}.resolved(0.5).epsilons[2] == doctest::Approx(2.5e-3 * 0.5));
    CHECK_THROWS_AS((RegulatorSchedule{{0.01, 0.02}, Extrapolation::RichardsonLinear}.validate()), InvalidArgument);
    CHECK_THROWS_AS((RegulatorSchedule{{0.01}, Extrapolation::RichardsonLinear}.validate()), InvalidArgument);
    CHECK_THROWS_AS((RegulatorSchedule{{0.01, -1.0}, Extrapolation::RichardsonLinear}.validate()), InvalidArgument);
    for (auto m : {Extrapolation::RichardsonLinear, Extrapolation::RichardsonQuadratic, Extrapolation::None}) {
        CHECK(extrapolation_from_string(to_string(m)) == m);
    }
}

TEST_CASE("single trajectory rate is Planckian") {
    const auto sc = TrajectoryScenario::single(1.0);
    auto r = transition_rate(sc, rate_params(1.0), 0.0);
    CHECK(r.value == doctest::Approx(2.978e-4).epsilon(1e-3));
    CHECK(r.epsilon_estimates.size() == 3);
    CHECK(r.error_estimate < 1e-3 * r.value);
    r = transition_rate(sc, rate_params(-1.0), 0.0);
    CHECK(r.value == doctest::Approx(0.15945).epsilon(1e-3));
    // stationary
    CHECK(transition_rate(sc, rate_params(0.5), 3.0).value ==
          doctest::Approx(transition_rate(sc, rate_params(0.5), -2.0).value).epsilon(1e-9));
    // kappa scaling: rate(kappa, omega) = kappa rate(1, omega/kappa)
    CHECK(transition_rate(TrajectoryScenario::single(2.0), rate_params(2.0), 0.0).value ==
          doctest::Approx(2.0 * transition_rate(sc, rate_params(1.0), 0.0).value).epsilon(1e-6));
    // lambda^2 prefactor
    DetectorParams p = rate_params(1.0);
    p.lambda_coupling = 0.0;
    CHECK(transition_rate(sc, p, 0.0).value == 0.0);
}

TEST_CASE("far-separated branches give half the Planck rate") {
    for (auto sc : {TrajectoryScenario::parallel(1.0, 1e6), TrajectoryScenario::anti_parallel(1.0, 1e6),
                    TrajectoryScenario::thermal_pair(1.0, 1e6)}) {
        CHECK(transition_rate(sc, rate_params(1.0), 0.0).value ==
              doctest::Approx(0.5 * planck_rate(1.0, 1.0)).epsilon(1e-3));
    }
}

TEST_CASE("thermal pair rate is time independent") {
    const auto sc = TrajectoryScenario::thermal_pair(1.0, 0.8);
    const double a = transition_rate(sc, rate_params(0.7), -2.0).value;
    const double b = transition_rate(sc, rate_params(0.7), 1.5).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("finite switching") {
    const auto sc = TrajectoryScenario::single(1.0);
    DetectorParams p{1.0, 1.0, 1e3};
    CHECK(transition_rate_finite_switching(sc, p, 0.0).value ==
          doctest::Approx(transition_rate(sc, p, 0.0).value).epsilon(5e-3));
    p.sigma = 1.0;
    CHECK(std::abs(transition_rate_finite_switching(sc, p, 20.0).value) < 1e-14);

    // sigma kappa = 1, tau = 0: brute-force Simpson on a uniform grid at each
    // regulator, extrapolated the same way
    const auto r = transition_rate_finite_switching(sc, p, 0.0);
    std::vector<EpsilonEstimate> brute;
    for (const auto& [eps, value] : r.epsilon_estimates) {
        const int n = 400000;
        const double h = 8.0 / n;
        double sum = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double s = k * h;
            const double f = (std::exp(ComplexValue(0, -s)) * wightman_local(1.0, s, {eps})).real() *
                             std::exp(-0.5 * s * s);
            sum += (k == 0 || k == n ? 1.0 : (k % 2 ? 4.0 : 2.0)) * f;
        }
        const double v = 2.0 * sum * h / 3.0;
        CHECK(v == doctest::Approx(value).epsilon(1e-6));
        brute.emplace_back(eps, v);
    }
    const double oracle = epsilon_extrapolate(brute).limit;
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(r.value > 0.0);
    CHECK(std::isfinite(r.value));
    // the short window exceeds the long-time value here
    CHECK(r.value > transition_rate(sc, p, 0.0).value);
}

TEST_CASE("detailed balance") {
    auto oracle = [](double w) {
        RateResult r;
        r.value = planck_rate(1.0, w);
        return r;
    };
    CHECK(kms_check(oracle, 1.0, 1.0, 1e-12).satisfied);
    CHECK(kms_check(oracle, 2.5, 1.0, 1e-12).satisfied);

    auto rate_of = [](TrajectoryScenario sc, double tau) {
        return [sc, tau](double w) { return transition_rate(sc, rate_params(w), tau); };
    };
    CHECK(kms_check(rate_of(TrajectoryScenario::parallel(1.0, 1e6), 0.0), 1.0, 1.0, 0.01).satisfied);
    CHECK(kms_check(rate_of(TrajectoryScenario::single(1.0), 0.0), 1.0, 1.0, 0.01).satisfied);
    // finite separation breaks it away from the symmetric instant tau = 0
    const auto k1 = kms_check(rate_of(TrajectoryScenario::parallel(1.0, 0.5), 1.0), 1.0, 1.0, 0.01);
    CHECK_FALSE(k1.satisfied);
    CHECK(k1.deviation > 1.0);
    CHECK_FALSE(kms_check(rate_of(TrajectoryScenario::parallel(1.0, 0.5), -1.0), 1.0, 1.0, 0.01).satisfied);
    // at tau = 0 the cross term is even and 2 pi i periodic in s, so it holds
    CHECK(kms_check(rate_of(TrajectoryScenario::parallel(1.0, 0.5), 0.0), 1.0, 1.0, 0.01).satisfied);

    auto zero = [](double w) {
        RateResult r;
        r.value = w > 0 ? 1.0 : 1e-20;
        r.error_estimate = 1e-10;
        return r;
    };
    CHECK_THROWS_AS(kms_check(zero, 1.0, 1.0, 0.01), IndeterminateRatio);
}

TEST_CASE("probability quadrature against the inertial oracle") {
    const double sigma = 1.0;
    for (double ws : {0.28, 0.5, 1.0, 2.0}) {
        const DetectorParams p{ws / sigma, 0.01, sigma};
        const auto r = excitation_probability_quadrature(TrajectoryScenario::single(1e-3 / sigma), p);
        CHECK(r.value == doctest::Approx(inertial_probability(0.01, sigma, ws / sigma)).epsilon(1e-4));
        CHECK(r.contour == ContourKind::Shifted);
    }
    // Omega sigma = 0.28 is outside the saddle-point regime: the closed form
    // overestimates by about an order of magnitude
    const DetectorParams p{0.28 / 0.05, 0.01, 0.05};
    const double q = excitation_probability_quadrature(TrajectoryScenario::single(1.0), p).value;
    CHECK(p_local(p, 1.0).probability > 5.0 * q);
}

TEST_CASE("probability quadrature against the saddle point") {
    // kappa sigma = 0.05, beta = 0.5: omega sigma = 10
    const double sigma = 0.05, kappa = 1.0;
    const DetectorParams p{0.5 / (kappa * sigma * sigma), 0.01, sigma};
    const double local = p_local(p, kappa).probability;
    const double q = excitation_probability_quadrature(TrajectoryScenario::single(kappa), p).value;
    CHECK(q == doctest::Approx(local).epsilon(0.02));
    const double par0 = excitation_probability_quadrature(TrajectoryScenario::parallel(kappa, 0.0), p).value;
    CHECK(par0 == doctest::Approx(q).epsilon(1e-6));
    const double far = excitation_probability_quadrature(TrajectoryScenario::parallel(kappa, 1e6 * sigma), p).value;
    CHECK(far == doctest::Approx(0.5 * q).epsilon(1e-4));
    CHECK(far == doctest::Approx(0.5 * local).epsilon(0.02));
    const double par = excitation_probability_quadrature(TrajectoryScenario::parallel(kappa, 1.0), p).value;
    CHECK(par == doctest::Approx(p_parallel(p, kappa, 1.0).probability).epsilon(0.02));

    DetectorParams off = p;
    off.lambda_coupling = 0.0;
    CHECK(excitation_probability_quadrature(TrajectoryScenario::single(kappa), off).value == 0.0);
}

TEST_CASE("probability quadrature for negative gaps uses the real axis") {
    const DetectorParams p{-2.0, 0.01, 1.0};
    const auto r = excitation_probability_quadrature(TrajectoryScenario::single(1e-3), p);
    CHECK(r.contour == ContourKind::RealAxis);
    CHECK(r.shift == 0.0);
    CHECK(r.value == doctest::Approx(inertial_probability(0.01, 1.0, -2.0)).epsilon(1e-4));
}

TEST_CASE("pair integrals are hermitian and the diagonal is non-negative") {
    const DetectorParams p{10.0, 0.01, 0.1};
    for (auto sc : {TrajectoryScenario::parallel(1.0, 0.3), TrajectoryScenario::anti_parallel(1.0, -0.4),
                    TrajectoryScenario::differing(1.0, 0.6)}) {
        const auto d11 = full_pair_integral(sc, 1, 1, p, {1e-3});
        CHECK(d11.value.real() >= 0.0);
        CHECK(std::abs(d11.value.imag()) <= 1e-6 * d11.value.real());
        const auto a = full_pair_integral(sc, 1, 2, p, {1e-3});
        const auto b = full_pair_integral(sc, 2, 1, p, {1e-3});
        CHECK(std::abs(a.value - std::conj(b.value)) <= 1e-6 * std::abs(a.value) + 1e-14);
    }
}

TEST_CASE("argument errors") {
    const auto sc = TrajectoryScenario::single(1.0);
    CHECK_THROWS_AS(transition_rate(sc, rate_params(NAN), 0.0), InvalidArgument);
    CHECK_THROWS_AS(transition_rate(sc, rate_params(1.0), INFINITY), InvalidArgument);
    CHECK_THROWS_AS(transition_rate(TrajectoryScenario::single(-1.0), rate_params(1.0), 0.0), InvalidArgument);
    CHECK_THROWS_AS(excitation_probability_quadrature(sc, {1.0, 0.01, 0.0}), InvalidArgument);
    QuadratureConfig q;
    q.max_subdivisions = 3;
    CHECK_THROWS_AS(transition_rate(TrajectoryScenario::parallel(1.0, 0.2), rate_params(1.0), 1.0, {}, q),
                    ConvergenceError);
}
