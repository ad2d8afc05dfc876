#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "udw/errors.hpp"
#include "udw/response_closed.hpp"
#include "udw/superposition_state.hpp"

using namespace udw;
using std::numbers::pi;

namespace {

// kappa sigma = 0.05, omega sigma = 0.5
const DetectorParams kParams{10.0, 0.01, 0.05};

std::vector<double> phase_grid(int n) {
    std::vector<double> g;
    for (int k = 0; k < n; ++k) g.push_back(2 * pi * k / (n - 1));
    return g;
}

}  // namespace

TEST_CASE("control state") {
    const auto c = ControlState::make({0.4, 1.0, -0.2});
    CHECK(c.branch_count == 3);
    CHECK(c.phases[0] == 0.0);
    CHECK(c.phases[1] == doctest::Approx(0.6));
    const auto two = ControlState::two_branch(0.3);
    CHECK(two.phases[0] - two.phases[1] == doctest::Approx(0.3));
    CHECK_THROWS_AS(ControlState::make({}), InvalidArgument);
    CHECK_THROWS_AS(ControlState::make({0.0, NAN}), InvalidArgument);
}

TEST_CASE("integral grid structure") {
    const auto w = compute_wightman_integrals(TrajectoryScenario::parallel(1.0, 0.5), kParams);
    CHECK(w.branch_count == 2);
    CHECK(w.full_grid.size() == 4);
    CHECK(w.time_ordered.size() == 2);
    for (int a = 1; a <= 2; ++a) {
        CHECK(w.full_grid.at({a, a}).real() >= 0.0);
        for (int b = 1; b <= 2; ++b) {
            CHECK(w.full_grid.at({a, b}) == std::conj(w.full_grid.at({b, a})));
        }
    }
    CHECK(w.error_estimate >= 0.0);
}

TEST_CASE("single branch reproduces the closed form") {
    const auto w = compute_wightman_integrals(TrajectoryScenario::single(1.0), kParams);
    const double l2 = kParams.lambda_coupling * kParams.lambda_coupling;
    // closed form needs omega sigma >> 1
    const DetectorParams hi{0.5 / (0.05 * 0.05), 0.01, 0.05};
    const auto whi = compute_wightman_integrals(TrajectoryScenario::single(1.0), hi);
    const double local = p_local(hi, 1.0).probability;
    CHECK(l2 * whi.full_grid.at({1, 1}).real() == doctest::Approx(local).epsilon(0.02));

    const auto dm = conditional_density_matrix(w, ControlState::make({0.0}), kParams);
    CHECK(dm.p_excited_unnormalized == doctest::Approx(l2 * w.full_grid.at({1, 1}).real()).epsilon(1e-14));

    // overlapping branches: lambda^2/4 sum_ab is the same number
    const auto w0 = compute_wightman_integrals(TrajectoryScenario::parallel(1.0, 0.0), hi);
    double sum = 0.0;
    for (const auto& [key, v] : w0.full_grid) sum += v.real();
    CHECK(l2 / 4 * sum == doctest::Approx(local).epsilon(0.02));
}

TEST_CASE("conditional state at the reference phases") {
    const auto sc = TrajectoryScenario::parallel(1.0, 1.0);
    const auto w = compute_wightman_integrals(sc, kParams);
    const auto dm0 = conditional_density_matrix(w, ControlState::two_branch(0.0), kParams);
    const auto q = excitation_probability_quadrature(sc, kParams);
    CHECK(dm0.p_excited_unnormalized == doctest::Approx(q.value).epsilon(1e-8));
    CHECK(dm0.norm < 1.0);
    CHECK(dm0.norm > 1.0 - 1e-3);
    // the two outcomes of the control measurement exhaust the state
    const auto dm_other = conditional_density_matrix(w, ControlState::two_branch(pi), kParams);
    CHECK(dm0.norm + dm_other.norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(conditional_norm(dm0) == dm0.norm);
    CHECK(dm0.p_excited_conditional == doctest::Approx(dm0.p_excited_unnormalized / dm0.norm));

    const auto dmpi = conditional_density_matrix(w, ControlState::two_branch(pi), kParams);
    CHECK(dmpi.p_ground_unnormalized == 0.0);
    CHECK(dmpi.p_excited_unnormalized >= 0.0);

    DetectorParams off = kParams;
    off.lambda_coupling = 0.0;
    CHECK(conditional_density_matrix(w, ControlState::two_branch(0.0), off).norm == doctest::Approx(1.0));
    CHECK(conditional_density_matrix(w, ControlState::two_branch(pi), off).norm == doctest::Approx(0.0));

    CHECK_THROWS_AS(conditional_density_matrix(w, ControlState::make({0.0}), kParams), InvalidArgument);
}

TEST_CASE("global phase invariance on random draws") {
    const auto w = compute_wightman_integrals(TrajectoryScenario::anti_parallel(1.0, 0.7), kParams);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ph(-10.0, 10.0);
    for (int n = 0; n < 250; ++n) {
        const double a = ph(rng), b = ph(rng), shift = ph(rng);
        const auto x = conditional_density_matrix(w, ControlState::make({a, b}), kParams);
        ControlState raw;
        raw.branch_count = 2;
        raw.phases = {a + shift, b + shift};  // not canonicalized
        const auto y = conditional_density_matrix(w, raw, kParams);
        CHECK(x.norm == doctest::Approx(y.norm).epsilon(1e-12));
        CHECK(x.p_excited_unnormalized == doctest::Approx(y.p_excited_unnormalized).epsilon(1e-9));
    }
}

TEST_CASE("visibility") {
    const auto sc = TrajectoryScenario::parallel(1.0, 1.0);
    const auto w = compute_wightman_integrals(sc, kParams);
    const auto grid = phase_grid(33);
    const auto v1 = visibility_scan(w, kParams, grid);
    CHECK(v1.amplitude > 0.0);
    CHECK(v1.norms.size() == grid.size());
    double envelope = 0.0;
    for (double g : grid) envelope += 0.5 * (1 + std::cos(g)) / grid.size();
    CHECK(v1.mean == doctest::Approx(envelope).epsilon(1e-3));

    DetectorParams p2 = kParams;
    p2.lambda_coupling = 0.02;
    const auto v2 = visibility_scan(w, p2, grid);
    CHECK(v2.amplitude / v1.amplitude == doctest::Approx(4.0).epsilon(0.05));

    DetectorParams p0 = kParams;
    p0.lambda_coupling = 0.0;
    CHECK(visibility_scan(w, p0, grid).amplitude == 0.0);

    CHECK_THROWS_AS(visibility_scan(w, kParams, {}), InvalidArgument);
    const auto single = compute_wightman_integrals(TrajectoryScenario::single(1.0), kParams);
    CHECK_THROWS_AS(visibility_scan(single, kParams, grid), InvalidArgument);
}
