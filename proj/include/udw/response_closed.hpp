#pragma once

#include <string>
#include <vector>

#include "udw/detector.hpp"

namespace udw {

// Saddle-point probabilities for Gaussian switching with sigma << 1/kappa.
struct ClosedFormResult {
    double probability = 0.0;
    bool residues_omitted = false;  // true only for differing accelerations
    std::vector<double> beta_values;
    std::vector<std::string> warnings;  // beta > 3, lambda > 0.1
};

// (kappa sigma lambda)^2 exp(-sigma^2 omega^2) / 16 pi
double zeta_prefactor(const DetectorParams& params, double kappa);
// (lambda^2 / 8) exp(-sigma^2 omega^2)
double xi_prefactor(const DetectorParams& params);

ClosedFormResult p_local(const DetectorParams& params, double kappa);
ClosedFormResult p_parallel(const DetectorParams& params, double kappa, double L);
ClosedFormResult p_antiparallel(const DetectorParams& params, double kappa, double L);
// Same expression without the pole check, for comparisons inside the
// flagged neighbourhood of kappa L = 2.
ClosedFormResult p_antiparallel_formula(const DetectorParams& params, double kappa, double L);
// Residue contributions are not included; see response_numeric for the full value.
ClosedFormResult p_differing(const DetectorParams& params, double kappa1, double kappa2);

inline constexpr double kBetaWarning = 3.0;
inline constexpr double kLambdaWarning = 0.1;

}  // namespace udw
