#pragma once

#include <map>
#include <utility>
#include <vector>

#include "udw/response_numeric.hpp"

namespace udw {

// Control measured in N^{-1/2} sum_i e^{-i phi_i} |c_i>.
struct ControlState {
    int branch_count = 2;
    std::vector<double> phases;

    // Checks N >= 1 and finiteness, shifts so phases[0] = 0.
    static ControlState make(std::vector<double> phases);
    static ControlState two_branch(double delta_phi);  // phi_1 - phi_2 = delta_phi
};

struct WightmanIntegrals {
    int branch_count = 0;
    // (i, j) -> int dtau' chi(tau') int dtau'' conj chi(tau'') W^{ij}(tau', tau'')
    std::map<std::pair<int, int>, ComplexValue> full_grid;
    // i -> same with tau'' < tau' and W^{ii}. The real part is the regulator
    // limit; the imaginary part grows like 1/eps and is the smallest-eps value.
    std::map<int, ComplexValue> time_ordered;
    double error_estimate = 0.0;
};

struct DetectorDensityMatrix {
    double p_ground_unnormalized = 0.0;
    double p_excited_unnormalized = 0.0;
    double norm = 0.0;
    double p_excited_conditional = 0.0;  // NaN when norm <= 0
    // Off-diagonal elements vanish at this order.
};

WightmanIntegrals compute_wightman_integrals(const TrajectoryScenario& scenario,
                                             const DetectorParams& params,
                                             const RegulatorSchedule& schedule = {},
                                             const QuadratureConfig& quad = {});

DetectorDensityMatrix conditional_density_matrix(const WightmanIntegrals& integrals,
                                                 const ControlState& control,
                                                 const DetectorParams& params);

inline double conditional_norm(const DetectorDensityMatrix& dm) { return dm.norm; }

struct VisibilityScan {
    double mean = 0.0;       // mean of the conditional norm over the phase grid
    double amplitude = 0.0;  // half peak-to-peak of norm - (1 + cos dphi)/2
    std::vector<double> norms;
    std::vector<double> field_terms;
};

VisibilityScan visibility_scan(const WightmanIntegrals& integrals, const DetectorParams& params,
                               const std::vector<double>& phase_grid);

}  // namespace udw
