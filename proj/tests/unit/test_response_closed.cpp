#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "udw/errors.hpp"
#include "udw/response_closed.hpp"

using namespace udw;
using std::numbers::pi;

namespace {

const DetectorParams kRef{1.0, 0.01, 0.1};  // beta = 0.01 at kappa = 1

}  // namespace

TEST_CASE("local probability") {
    const auto r = p_local(kRef, 1.0);
    CHECK(r.probability == doctest::Approx(3.939e-4).epsilon(1e-3));
    const double exact = std::pow(0.5 * 0.1 * 0.01, 2) * std::exp(-0.01) / (2 * pi * std::pow(std::sin(0.01), 2));
    CHECK(r.probability == doctest::Approx(exact).epsilon(1e-14));
    CHECK_FALSE(r.residues_omitted);
    REQUIRE(r.beta_values.size() == 1);
    CHECK(r.beta_values[0] == doctest::Approx(0.01));
    CHECK(r.warnings.empty());

    // beta -> 0: lambda^2 e^{-sigma^2 omega^2} / (8 pi sigma^2 omega^2), any kappa
    const double flat = 1e-4 * std::exp(-0.01) / (8 * pi * 0.01);
    CHECK(p_local(kRef, 1e-5).probability == doctest::Approx(flat).epsilon(1e-9));
    CHECK(p_local(kRef, 3e-5).probability == doctest::Approx(flat).epsilon(1e-9));

    DetectorParams twice = kRef;
    twice.lambda_coupling *= 2;
    CHECK(p_local(twice, 1.0).probability == doctest::Approx(4 * r.probability).epsilon(1e-14));
}

TEST_CASE("parallel probability") {
    const double local = p_local(kRef, 1.0).probability;
    CHECK(p_parallel(kRef, 1.0, 0.0).probability == doctest::Approx(local).epsilon(1e-14));
    CHECK(p_parallel(kRef, 1.0, 1e6).probability == doctest::Approx(local / 2).epsilon(1e-10));
    const double expected = local / 2 + zeta_prefactor(kRef, 1.0) / (0.25 + std::pow(std::sin(0.01), 2));
    CHECK(p_parallel(kRef, 1.0, 1.0).probability == doctest::Approx(expected).epsilon(1e-14));
    CHECK(p_parallel(kRef, 1.0, 1.0).probability == doctest::Approx(1.97046e-4).epsilon(1e-4));
    // monotone decrease in L (correlations inhibit excitation less as L grows)
    double prev = local;
    for (double L : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const double v = p_parallel(kRef, 1.0, L).probability;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("anti-parallel probability") {
    const double local = p_local(kRef, 1.0).probability;
    const double z = zeta_prefactor(kRef, 1.0);
    CHECK(p_antiparallel(kRef, 1.0, 0.0).probability ==
          doctest::Approx(local / 2 + z / (2 * (1 - std::cos(0.01)))).epsilon(1e-10));
    CHECK(p_antiparallel(kRef, 1.0, 1e6).probability == doctest::Approx(local / 2).epsilon(1e-10));
    CHECK(p_antiparallel(kRef, 1.0, -1e6).probability == doctest::Approx(local / 2).epsilon(1e-10));

    // small beta: anti-parallel approaches parallel
    const DetectorParams small{0.1, 0.01, 0.1};  // beta = 1e-3
    const double par = p_parallel(small, 1.0, 1.0).probability;
    CHECK(std::abs(p_antiparallel(small, 1.0, 1.0).probability - par) / par < 1e-3);

    // asymmetric in L
    const DetectorParams half{50.0, 0.01, 0.1};  // beta = 0.5
    CHECK(p_antiparallel(half, 1.0, 1.0).probability != p_antiparallel(half, 1.0, -1.0).probability);

    // the guarded form refuses the flagged neighbourhood, the raw formula does not
    CHECK_THROWS_AS(p_antiparallel(half, 1.0, 2.0), ValidityError);
    CHECK(std::isfinite(p_antiparallel_formula(half, 1.0, 2.0).probability));
    CHECK(p_antiparallel_formula(half, 1.0, 1.0).probability == p_antiparallel(half, 1.0, 1.0).probability);
}

TEST_CASE("differing probability") {
    const double local = p_local(kRef, 1.0).probability;
    const auto r = p_differing(kRef, 1.0, 1.0);
    CHECK(r.probability == doctest::Approx(local).epsilon(1e-12));
    CHECK(r.residues_omitted);
    CHECK(r.beta_values.size() == 2);

    // kappa1 -> 0: P_loc(kappa2)/4 + (lambda / 2 sigma omega)^2 e^{-sigma^2 omega^2} / 8 pi
    const DetectorParams p{2.0, 0.01, 0.1};
    const double inertial = std::pow(0.01 / (2 * 0.1 * 2.0), 2) * std::exp(-0.04) / (8 * pi);
    CHECK(p_differing(p, 1e-6, 0.7).probability ==
          doctest::Approx(p_local(p, 0.7).probability / 4 + inertial).epsilon(1e-10));

    CHECK(p_differing(p, 0.3, 1.4).probability == doctest::Approx(p_differing(p, 1.4, 0.3).probability).epsilon(1e-14));

    // series branch is continuous with the direct formula
    const double a = p_differing(p, 0.9e-3, 0.5).probability;
    const double b = p_differing(p, 1.1e-3, 0.5).probability;
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("closed-form invariants on random draws") {
    std::mt19937_64 rng(3);
    // omega sigma = beta / (kappa sigma) stays below 10 so exp(-sigma^2 omega^2) does not underflow
    std::uniform_real_distribution<double> beta(0.01, 2.0), kappa(0.1, 10.0), ks(0.2, 1.0), l(0.0, 50.0);
    for (int n = 0; n < 300; ++n) {
        const double k = kappa(rng), sg = ks(rng) / k, b = beta(rng);
        const DetectorParams p{b / (k * sg * sg), 0.01, sg};
        const double local = p_local(p, k).probability;
        CHECK(local > 0.0);
        CHECK(p_parallel(p, k, 0.0).probability == doctest::Approx(local).epsilon(1e-12));
        CHECK(p_differing(p, k, k).probability == doctest::Approx(local).epsilon(1e-10));
        const double L = l(rng) / k;
        const double par = p_parallel(p, k, L).probability;
        CHECK(par >= 0.5 * local);
        CHECK(par <= local * (1 + 1e-12));
    }
}

TEST_CASE("warnings and errors") {
    DetectorParams p{2.9 / 0.01, 0.5, 0.1};  // beta 2.9 < 3 no warning, lambda warns
    auto r = p_local(p, 1.0);
    CHECK(r.warnings.size() == 1);
    p.omega = 3.1 / 0.01;
    r = p_local(p, 1.0);
    CHECK(r.warnings.size() == 2);

    CHECK_THROWS_AS(p_local({0.0, 0.01, 0.1}, 1.0), SingularParameter);
    CHECK_THROWS_AS(p_local({4.0, 0.01, 1.0}, 1.0), ValidityError);
    CHECK_THROWS_AS(p_local({-1.0, 0.01, 0.1}, 1.0), ValidityError);
    CHECK_THROWS_AS(p_local(kRef, 0.0), InvalidArgument);
    CHECK_THROWS_AS(p_parallel(kRef, 1.0, INFINITY), InvalidArgument);
    CHECK_THROWS_AS(p_differing({4.0, 0.01, 1.0}, 0.1, 1.0), ValidityError);

    const DetectorParams half_pi{std::numbers::pi / 2 / 0.01, 0.01, 0.1};
    CHECK_THROWS_AS(p_antiparallel(half_pi, 1.0, 2.06), ValidityError);
}
