#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "udw/correlators.hpp"
#include "udw/detector.hpp"
#include "udw/kinematics.hpp"
#include "udw/quadrature.hpp"

namespace udw {

enum class Extrapolation { RichardsonLinear, RichardsonQuadratic, None };

std::string_view to_string(Extrapolation mode);
Extrapolation extrapolation_from_string(std::string_view name);

// Ladder of regulator values; the point-like limit is taken after integrating.
struct RegulatorSchedule {
    std::vector<double> epsilons;  // empty: default ladder scaled per operation
    Extrapolation extrapolation = Extrapolation::RichardsonLinear;

    static RegulatorSchedule standard(double time_scale,
                                      Extrapolation mode = Extrapolation::RichardsonLinear);
    // Default ladder in units of the scale: 1e-2, 5e-3, 2.5e-3.
    static constexpr double kLadder[3] = {1e-2, 5e-3, 2.5e-3};

    void validate() const;
    RegulatorSchedule resolved(double time_scale) const;
};

using EpsilonEstimate = std::pair<double, double>;  // (epsilon, value)

struct ExtrapolationResult {
    double limit = 0.0;
    double error_estimate = 0.0;
    std::vector<std::string> warnings;
};

// Richardson extrapolation in epsilon; estimates must have strictly
// decreasing epsilon. Linear mode needs 2 points, quadratic 3.
ExtrapolationResult epsilon_extrapolate(const std::vector<EpsilonEstimate>& estimates,
                                        Extrapolation mode = Extrapolation::RichardsonLinear);

struct RateResult {
    double value = 0.0;  // may be negative
    std::vector<EpsilonEstimate> epsilon_estimates;
    double error_estimate = 0.0;
    std::vector<std::string> warnings;
};

enum class ContourKind { Shifted, RealAxis };

struct ProbabilityResult {
    double value = 0.0;
    std::vector<EpsilonEstimate> epsilon_estimates;
    double error_estimate = 0.0;
    ContourKind contour = ContourKind::Shifted;
    double shift = 0.0;  // imaginary offset of the s contour
    std::vector<std::string> warnings;
};

// lambda^2 / N^2 * sum_ij  int dtau' int dtau'' chi(tau') conj chi(tau'') W^{ij}(tau', tau''),
// chi = eta e^{-i omega tau}.
ProbabilityResult excitation_probability_quadrature(const TrajectoryScenario& scenario,
                                                    const DetectorParams& params,
                                                    const RegulatorSchedule& schedule = {},
                                                    const QuadratureConfig& quad = {});

// Long-interaction rate, 2 lambda^2/N^2 Re sum_ij int_0^s_max ds e^{-i omega s} W^{ij}(tau, tau - s).
// params.sigma is ignored.
RateResult transition_rate(const TrajectoryScenario& scenario, const DetectorParams& params,
                           double tau, const RegulatorSchedule& schedule = {},
                           const QuadratureConfig& quad = {});

// Same with the Gaussian window: 2 eta(tau) Re sum int ds e^{-i omega s} eta(tau - s) W.
RateResult transition_rate_finite_switching(const TrajectoryScenario& scenario,
                                            const DetectorParams& params, double tau,
                                            const RegulatorSchedule& schedule = {},
                                            const QuadratureConfig& quad = {});

// omega / (2 pi (exp(2 pi omega / kappa) - 1)), the thermal single-detector rate.
double planck_rate(double kappa, double omega);

struct KmsReport {
    double ratio = 0.0;
    double expected = 0.0;
    double deviation = 0.0;  // |ratio / expected - 1|
    bool satisfied = false;
};

KmsReport kms_check(const std::function<RateResult(double)>& rate_at, double omega, double kappa,
                    double tol);

// Default truncation of the semi-infinite rate integral.
double default_s_max(const TrajectoryScenario& scenario);

// One full-square integral  int dtau' int dtau'' chi(tau') conj chi(tau'') W^{ab}
// at fixed epsilon (no lambda, no 1/N^2).
struct PairIntegral {
    ComplexValue value;
    double error = 0.0;
    ContourKind contour = ContourKind::Shifted;
    double shift = 0.0;
};
PairIntegral full_pair_integral(const TrajectoryScenario& scenario, int a, int b,
                                const DetectorParams& params, Regulator reg,
                                const QuadratureConfig& quad = {});

// Time-ordered integral (inner tau'' < tau') of a local term on branch a.
PairIntegral time_ordered_integral(const TrajectoryScenario& scenario, int a,
                                   const DetectorParams& params, Regulator reg,
                                   const QuadratureConfig& quad = {});

}  // namespace udw
