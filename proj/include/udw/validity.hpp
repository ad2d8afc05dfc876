#pragma once

#include <string>
#include <vector>

#include "udw/detector.hpp"

namespace udw {

struct Violation {
    std::string name;
    std::string detail;
};

struct ValidityReport {
    bool ok = true;
    std::vector<Violation> violated_constraints;
    double beta = 0.0;

    void add(std::string name, std::string detail);
    std::string summary() const;
};

// Shifting s -> s - 2 i sigma^2 omega stays pole-free while
// beta = kappa sigma^2 omega lies in (0, pi).
ValidityReport check_beta_bound(const DetectorParams& params, double kappa);

// Anti-parallel cross-correlator poles inside the shifted strip. Also flags
// the neighbourhood |kappa L - 2| < kAntiParallelSuspectWidth where the pole
// condition diverges.
ValidityReport check_antiparallel_pole(const DetectorParams& params, double kappa, double L);

inline constexpr double kAntiParallelSuspectWidth = 0.05;

// Left side of the pole equation, (1/16) / ((kL/2 - 1)(kL/2 + 1)^2), in units
// where kappa = 1.
double antiparallel_pole_lhs(double kappa_L);

}  // namespace udw
