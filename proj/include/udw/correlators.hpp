#pragma once

#include <complex>

#include "udw/kinematics.hpp"

namespace udw {

using ComplexValue = std::complex<double>;

struct Regulator {
    double epsilon = 1e-3;  // smearing time scale, strictly positive
};

// Cross-correlator label: 12 means branch 1 at tau', branch 2 at tau''.
enum class Direction { D12, D21 };

// Massless scalar vacuum Wightman function smeared with a Lorentzian profile,
//   W^{ij}(tau', tau'') = (1/4pi^2) / (x_i(tau') - x_j(tau'') - i eps (u_i + u_j))^2.
// Generic fallback; evaluated from worldline events.
ComplexValue wightman_schlicht(const TrajectoryScenario& scenario, int i, int j, double tau1,
                               double tau2, Regulator reg);

// Along a single hyperbola, s = tau' - tau''. Complex s is accepted so the
// integration contour can be shifted off the real axis.
ComplexValue wightman_local(double kappa, ComplexValue s, Regulator reg);

// (p, s) = (tau' + tau'', tau' - tau'').
ComplexValue wightman_parallel_cross(double kappa, double L, double p, ComplexValue s, Regulator reg,
                                     Direction direction);
ComplexValue wightman_antiparallel_cross(double kappa, double L, double p, ComplexValue s,
                                         Regulator reg);
// tau1 on branch i, tau2 on branch j, (i, j) given by direction.
ComplexValue wightman_differing_cross(double kappa1, double kappa2, ComplexValue tau1,
                                      ComplexValue tau2, Regulator reg, Direction direction);
// Static pair at separation L in a bath at temperature kappa/2pi; s = tau' - tau''.
ComplexValue wightman_thermal_cross(double kappa, double L, ComplexValue s, Regulator reg);

// Literal transcriptions of the product forms above. They cancel badly for
// small arguments; kept as references for tests.
namespace reference {
ComplexValue parallel_cross(double kappa, double L, double p, ComplexValue s, Regulator reg,
                            Direction direction);
ComplexValue antiparallel_cross(double kappa, double L, double p, ComplexValue s, Regulator reg);
ComplexValue differing_cross(double kappa1, double kappa2, ComplexValue tau1, ComplexValue tau2,
                             Regulator reg, Direction direction);
}  // namespace reference

// Dispatch on the scenario family: branch i at tau' = (p+s)/2, branch j at
// tau'' = (p-s)/2.
ComplexValue wightman_ps(const TrajectoryScenario& scenario, int i, int j, double p, ComplexValue s,
                         Regulator reg);

inline ComplexValue wightman(const TrajectoryScenario& scenario, int i, int j, double tau1,
                             double tau2, Regulator reg) {
    return wightman_ps(scenario, i, j, tau1 + tau2, tau1 - tau2, reg);
}

}  // namespace udw
