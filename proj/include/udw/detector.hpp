#pragma once

namespace udw {

// Gap, coupling and Gaussian switching width eta(tau) = exp(-tau^2 / 2 sigma^2).
struct DetectorParams {
    double omega = 1.0;
    double lambda_coupling = 0.01;
    double sigma = 0.05;

    // sigma > 0, lambda >= 0, omega finite. Throws InvalidArgument.
    void validate() const;
};

}  // namespace udw
