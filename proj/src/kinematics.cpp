#include "udw/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "udw/errors.hpp"

namespace udw {

namespace {

void check_branch(const TrajectoryScenario& scenario, int branch) {
    if (branch < 1 || branch > scenario.branch_count()) {
        throw InvalidArgument("branch " + std::to_string(branch) + " out of range [1, " +
                              std::to_string(scenario.branch_count()) + "]");
    }
}

void check_argument(double kappa_tau) {
    if (!std::isfinite(kappa_tau) || std::abs(kappa_tau) > kMaxHyperbolicArgument) {
        throw OutOfRange("hyperbolic argument kappa*tau = " + std::to_string(kappa_tau) +
                         " outside the supported range");
    }
}

// Offset hyperbola z = sign * (cosh(k tau) - 1)/k + shift, t = sinh(k tau)/k.
struct Hyperbola {
    double kappa;
    double sign;   // +1 opens to the right (wedge z > centre), -1 to the left
    double shift;  // z at tau = 0

    double centre() const { return shift - sign / kappa; }
};

Hyperbola branch_hyperbola(const TrajectoryScenario& s, int branch) {
    const double half = 0.5 * s.L;
    switch (s.family) {
        case Family::Parallel:
            return branch == 1 ? Hyperbola{s.kappa1, 1.0, half} : Hyperbola{s.kappa1, 1.0, -half};
        case Family::AntiParallel:
            return branch == 1 ? Hyperbola{s.kappa1, 1.0, half} : Hyperbola{s.kappa1, -1.0, -half};
        default:
            throw InvalidArgument("horizon_crossing_time supports Parallel and AntiParallel only");
    }
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::SingleAccel: return "single";
        case Family::Parallel: return "parallel";
        case Family::AntiParallel: return "antiparallel";
        case Family::Differing: return "differing";
        case Family::ThermalInertialPair: return "thermal_pair";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    for (Family f : {Family::SingleAccel, Family::Parallel, Family::AntiParallel, Family::Differing,
                     Family::ThermalInertialPair}) {
        if (name == to_string(f)) return f;
    }
    throw InvalidArgument("unknown trajectory family '" + std::string(name) + "'");
}

double FourVector::minkowski_norm() const {
    const auto& c = components;
    return -c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
}

TrajectoryScenario TrajectoryScenario::single(double kappa) {
    return {Family::SingleAccel, kappa, kappa, 0.0};
}
TrajectoryScenario TrajectoryScenario::parallel(double kappa, double L) {
    return {Family::Parallel, kappa, kappa, L};
}
TrajectoryScenario TrajectoryScenario::anti_parallel(double kappa, double L) {
    return {Family::AntiParallel, kappa, kappa, L};
}
TrajectoryScenario TrajectoryScenario::differing(double kappa1, double kappa2) {
    return {Family::Differing, kappa1, kappa2, 0.0};
}
TrajectoryScenario TrajectoryScenario::thermal_pair(double kappa, double L) {
    return {Family::ThermalInertialPair, kappa, kappa, L};
}

double TrajectoryScenario::branch_kappa(int branch) const {
    check_branch(*this, branch);
    return (family == Family::Differing && branch == 2) ? kappa2 : kappa1;
}

double TrajectoryScenario::kappa_min() const {
    return family == Family::Differing ? std::min(kappa1, kappa2) : kappa1;
}

double TrajectoryScenario::kappa_max() const {
    return family == Family::Differing ? std::max(kappa1, kappa2) : kappa1;
}

void TrajectoryScenario::validate() const {
    if (!(kappa1 > 0.0) || !std::isfinite(kappa1)) {
        throw InvalidArgument("kappa1 must be finite and > 0");
    }
    if (family == Family::Differing && (!(kappa2 > 0.0) || !std::isfinite(kappa2))) {
        throw InvalidArgument("kappa2 must be finite and > 0 for the differing family");
    }
    if (!std::isfinite(L)) throw InvalidArgument("L must be finite");
    if (family == Family::Parallel && L < 0.0) {
        throw InvalidArgument("parallel configurations require L >= 0");
    }
    if (family == Family::ThermalInertialPair && L == 0.0) {
        throw InvalidArgument("thermal pair requires L != 0");
    }
}

Event worldline_event(const TrajectoryScenario& s, int branch, double tau) {
    check_branch(s, branch);
    if (!std::isfinite(tau)) throw InvalidArgument("tau must be finite");

    if (s.family == Family::ThermalInertialPair) {
        return {tau, 0.0, 0.0, branch == 1 ? 0.5 * s.L : -0.5 * s.L};
    }

    const double k = s.branch_kappa(branch);
    check_argument(k * tau);
    const double t = std::sinh(k * tau) / k;

    switch (s.family) {
        case Family::SingleAccel:
        case Family::Differing:
            return {t, 0.0, 0.0, std::cosh(k * tau) / k};
        case Family::Parallel:
        case Family::AntiParallel: {
            const Hyperbola h = branch_hyperbola(s, branch);
            // cosh(x) - 1 = 2 sinh^2(x/2) keeps small-tau accuracy
            const double sh = std::sinh(0.5 * k * tau);
            return {t, 0.0, 0.0, h.sign * 2.0 * sh * sh / k + h.shift};
        }
        case Family::ThermalInertialPair:
            break;
    }
    return {};
}

FourVector four_velocity(const TrajectoryScenario& s, int branch, double tau) {
    check_branch(s, branch);
    if (!std::isfinite(tau)) throw InvalidArgument("tau must be finite");
    if (s.family == Family::ThermalInertialPair) return {{1.0, 0.0, 0.0, 0.0}};

    const double k = s.branch_kappa(branch);
    check_argument(k * tau);
    double sign = 1.0;
    if (s.family == Family::AntiParallel && branch == 2) sign = -1.0;
    return {{std::cosh(k * tau), 0.0, 0.0, sign * std::sinh(k * tau)}};
}

double minkowski_interval(const Event& a, const Event& b) {
    const double dt = a.t - b.t;
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return -dt * dt + dx * dx + dy * dy + dz * dz;
}

std::vector<double> horizon_crossing_time(const TrajectoryScenario& s) {
    if (s.family != Family::Parallel && s.family != Family::AntiParallel) {
        throw InvalidArgument("horizon_crossing_time supports Parallel and AntiParallel only");
    }
    s.validate();

    const double k = s.kappa1;
    std::vector<double> roots;
    for (int b = 1; b <= 2; ++b) {
        const Hyperbola own = branch_hyperbola(s, b);
        const Hyperbola other = branch_hyperbola(s, 3 - b);
        // other.sign*(z - other.centre) = horizon*t on branch b reads
        // a cosh x - horizon sinh x + d = 0 with x = k tau; in u = e^x it is
        // (a - horizon) u^2 + 2 d u + (a + horizon) = 0, at most one root.
        // Scanning the hyperbolic form instead picks up cancellation noise.
        const double a = other.sign * own.sign;
        const double d = other.sign * k * (own.centre() - other.centre());
        for (double horizon : {+1.0, -1.0}) {  // future, past
            double u = 0.0;
            if (a == horizon) {
                if (d != 0.0) u = -a / d;
            } else {
                u = -d / a;
            }
            if (!(u > 0.0)) continue;
            const double x = std::log(u);
            if (std::abs(x) <= kMaxHyperbolicArgument) roots.push_back(x / k);
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-8; }),
                roots.end());
    return roots;
}

}  // namespace udw
