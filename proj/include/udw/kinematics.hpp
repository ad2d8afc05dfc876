#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace udw {

// Natural units (c = hbar = k_B = 1), metric signature (-,+,+,+).

enum class Family {
    SingleAccel,          // one hyperbola, z = cosh(k tau)/k
    Parallel,             // two hyperbolae offset by +-L/2, same orientation
    AntiParallel,         // mirrored hyperbolae, closest approach L
    Differing,            // common horizon, accelerations kappa1 / kappa2
    ThermalInertialPair,  // static branches at z = +-L/2 in a thermal bath
};

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

struct Event {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct FourVector {
    std::array<double, 4> components{};  // (dt, dx, dy, dz) / dtau

    double minkowski_norm() const;
};

struct TrajectoryScenario {
    Family family = Family::SingleAccel;
    double kappa1 = 1.0;
    double kappa2 = 1.0;  // Differing only
    double L = 0.0;       // Parallel / AntiParallel / ThermalInertialPair

    static TrajectoryScenario single(double kappa);
    static TrajectoryScenario parallel(double kappa, double L);
    static TrajectoryScenario anti_parallel(double kappa, double L);
    static TrajectoryScenario differing(double kappa1, double kappa2);
    static TrajectoryScenario thermal_pair(double kappa, double L);

    int branch_count() const { return family == Family::SingleAccel ? 1 : 2; }

    // Proper acceleration of a branch (the bath temperature scale for the
    // thermal pair).
    double branch_kappa(int branch) const;

    // Smallest / largest acceleration over all branches.
    double kappa_min() const;
    double kappa_max() const;

    // Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

// |kappa * tau| above this is rejected instead of overflowing cosh^2.
inline constexpr double kMaxHyperbolicArgument = 350.0;

Event worldline_event(const TrajectoryScenario& scenario, int branch, double tau);
FourVector four_velocity(const TrajectoryScenario& scenario, int branch, double tau);

// -(dt)^2 + |dx|^2
double minkowski_interval(const Event& a, const Event& b);

// Proper times at which a branch crosses one of the asymptotic Rindler
// horizons (past or future) of the other branch, sorted ascending.
// Parallel and AntiParallel only.
std::vector<double> horizon_crossing_time(const TrajectoryScenario& scenario);

}  // namespace udw
