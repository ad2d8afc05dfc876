#include "udw/correlators.hpp"

#include <cmath>
#include <numbers>

#include "udw/errors.hpp"

namespace udw {

namespace {

using std::numbers::pi;
constexpr ComplexValue I{0.0, 1.0};
constexpr double kFourPiSq = 4.0 * pi * pi;

void check_regulator(Regulator reg) {
    if (!(reg.epsilon > 0.0) || !std::isfinite(reg.epsilon)) {
        throw InvalidArgument("regulator epsilon must be finite and > 0");
    }
}

void check_hyperbolic(ComplexValue x) {
    if (!std::isfinite(x.real()) || std::abs(x.real()) > kMaxHyperbolicArgument) {
        throw OutOfRange("hyperbolic argument outside the supported range");
    }
}

// kappa^-1 sinh(kappa s/2) - i eps cosh(kappa s/2)
ComplexValue local_f(double kappa, ComplexValue s, double eps) {
    const ComplexValue x = 0.5 * kappa * s;
    check_hyperbolic(x);
    return std::sinh(x) / kappa - I * eps * std::cosh(x);
}

}  // namespace

ComplexValue wightman_schlicht(const TrajectoryScenario& scenario, int i, int j, double tau1,
                               double tau2, Regulator reg) {
    check_regulator(reg);
    const Event a = worldline_event(scenario, i, tau1);
    const Event b = worldline_event(scenario, j, tau2);
    const FourVector ua = four_velocity(scenario, i, tau1);
    const FourVector ub = four_velocity(scenario, j, tau2);

    const std::array<double, 4> dx{a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    ComplexValue sq = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        const ComplexValue c = dx[mu] - I * reg.epsilon * (ua.components[mu] + ub.components[mu]);
        sq += (mu == 0 ? -1.0 : 1.0) * c * c;
    }
    return 1.0 / (kFourPiSq * sq);
}

ComplexValue wightman_local(double kappa, ComplexValue s, Regulator reg) {
    check_regulator(reg);
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
    const ComplexValue f = local_f(kappa, s, reg.epsilon);
    return -1.0 / (4.0 * kFourPiSq * f * f);
}

// psi^2 - (phi +- L)^2 with psi^2 - phi^2 = 4 f^2 folded in analytically.
ComplexValue wightman_parallel_cross(double kappa, double L, double p, ComplexValue s, Regulator reg,
                                     Direction direction) {
    check_regulator(reg);
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
    check_hyperbolic(0.5 * kappa * p);
    const ComplexValue f = local_f(kappa, s, reg.epsilon);
    const ComplexValue phi = 2.0 * std::sinh(0.5 * kappa * p) * f;
    const double sign = direction == Direction::D12 ? 1.0 : -1.0;
    const ComplexValue d = 4.0 * f * f - 2.0 * sign * L * phi - L * L;
    return -1.0 / (kFourPiSq * d);
}

// psi^2 - (phi - 2/kappa + L)^2 rewritten so the s = p = 0, L = 0 cancellation
// is done by hand:
//   -(L + 4 sinh^2(kp/4)/k)^2 - 4 C^2 eps^2
//   + 4 C c (-2 sinh^2(ks/4)/k + i eps sinh(ks/2)),  C = cosh(kp/2), c = L - 2/k
ComplexValue wightman_antiparallel_cross(double kappa, double L, double p, ComplexValue s,
                                         Regulator reg) {
    check_regulator(reg);
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
    check_hyperbolic(0.5 * kappa * p);
    check_hyperbolic(0.5 * kappa * s);
    const double eps = reg.epsilon;
    const double C = std::cosh(0.5 * kappa * p);
    const double shp = std::sinh(0.25 * kappa * p);
    const double lead = L + 4.0 * shp * shp / kappa;
    const double c = L - 2.0 / kappa;
    const ComplexValue shs = std::sinh(0.25 * kappa * s);
    const ComplexValue d = -lead * lead - 4.0 * C * C * eps * eps +
                           4.0 * C * c * (-2.0 * shs * shs / kappa + I * eps * std::sinh(0.5 * kappa * s));
    return -1.0 / (kFourPiSq * d);
}

// Depends on the events only through a = (k_i tau' - k_j tau'')/2:
//   -(1/k_i - 1/k_j)^2 + 4 sinh^2 a/(k_i k_j) - 2 i eps (1/k_i + 1/k_j) sinh 2a - 4 eps^2 cosh^2 a
ComplexValue wightman_differing_cross(double kappa1, double kappa2, ComplexValue tau1,
                                      ComplexValue tau2, Regulator reg, Direction direction) {
    check_regulator(reg);
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw InvalidArgument("accelerations must be > 0");
    const double ki = direction == Direction::D12 ? kappa1 : kappa2;
    const double kj = direction == Direction::D12 ? kappa2 : kappa1;
    check_hyperbolic(ki * tau1);
    check_hyperbolic(kj * tau2);
    const double eps = reg.epsilon;
    const ComplexValue a = 0.5 * (ki * tau1 - kj * tau2);
    const ComplexValue sh = std::sinh(a);
    const ComplexValue ch = std::cosh(a);
    const double dk = 1.0 / ki - 1.0 / kj;
    const ComplexValue d = -dk * dk + 4.0 * sh * sh / (ki * kj) -
                           2.0 * I * eps * (1.0 / ki + 1.0 / kj) * std::sinh(2.0 * a) -
                           4.0 * eps * eps * ch * ch;
    return -1.0 / (kFourPiSq * d);
}

ComplexValue wightman_thermal_cross(double kappa, double L, ComplexValue s, Regulator reg) {
    check_regulator(reg);
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
    if (L == 0.0 || !std::isfinite(L)) throw InvalidArgument("thermal cross-correlator needs L != 0");
    const ComplexValue sp = s - I * reg.epsilon;
    auto coth = [](ComplexValue x) { return 1.0 / std::tanh(x); };
    const ComplexValue sum = coth(0.5 * kappa * (L - sp)) + coth(0.5 * kappa * (L + sp));
    return kappa * sum / (16.0 * pi * pi * L);
}

namespace reference {

ComplexValue parallel_cross(double kappa, double L, double p, ComplexValue s, Regulator reg,
                            Direction direction) {
    const ComplexValue f = std::sinh(0.5 * kappa * s) / kappa - I * reg.epsilon * std::cosh(0.5 * kappa * s);
    const ComplexValue psi = 2.0 * std::cosh(0.5 * kappa * p) * f;
    const ComplexValue phi = 2.0 * std::sinh(0.5 * kappa * p) * f;
    const double sign = direction == Direction::D12 ? 1.0 : -1.0;
    const ComplexValue shifted = phi + sign * L;
    return -1.0 / (kFourPiSq * (psi * psi - shifted * shifted));
}

ComplexValue antiparallel_cross(double kappa, double L, double p, ComplexValue s, Regulator reg) {
    const double eps = reg.epsilon;
    const double C = std::cosh(0.5 * kappa * p);
    const ComplexValue psi = 2.0 * C * (std::sinh(0.5 * kappa * s) / kappa - I * eps * std::cosh(0.5 * kappa * s));
    const ComplexValue phi = 2.0 * C * (std::cosh(0.5 * kappa * s) / kappa - I * eps * std::sinh(0.5 * kappa * s));
    const ComplexValue shifted = phi - 2.0 / kappa + L;
    return -1.0 / (kFourPiSq * (psi * psi - shifted * shifted));
}

ComplexValue differing_cross(double kappa1, double kappa2, ComplexValue tau1, ComplexValue tau2,
                             Regulator reg, Direction direction) {
    const double ki = direction == Direction::D12 ? kappa1 : kappa2;
    const double kj = direction == Direction::D12 ? kappa2 : kappa1;
    const double eps = reg.epsilon;
    const ComplexValue vs = std::sinh(ki * tau1) / ki - std::sinh(kj * tau2) / kj;
    const ComplexValue chi = std::cosh(ki * tau1) / ki - std::cosh(kj * tau2) / kj;
    const ComplexValue am = 0.5 * (ki * tau1 - kj * tau2);
    const ComplexValue ap = 0.5 * (ki * tau1 + kj * tau2);
    const ComplexValue psi = vs - 2.0 * I * eps * std::cosh(am) * std::cosh(ap);
    const ComplexValue phi = chi - 2.0 * I * eps * std::cosh(am) * std::sinh(ap);
    return -1.0 / (kFourPiSq * (psi * psi - phi * phi));
}

}  // namespace reference

ComplexValue wightman_ps(const TrajectoryScenario& sc, int i, int j, double p, ComplexValue s,
                         Regulator reg) {
    const int n = sc.branch_count();
    if (i < 1 || i > n || j < 1 || j > n) throw InvalidArgument("branch index out of range");

    if (i == j) {
        switch (sc.family) {
            case Family::Differing:
                if (i == 2) return wightman_local(sc.kappa2, s, reg);
                return wightman_local(sc.kappa1, s, reg);
            default:
                return wightman_local(sc.kappa1, s, reg);
        }
    }

    const Direction dir = i == 1 ? Direction::D12 : Direction::D21;
    switch (sc.family) {
        case Family::Parallel:
            return wightman_parallel_cross(sc.kappa1, sc.L, p, s, reg, dir);
        case Family::AntiParallel:
            return wightman_antiparallel_cross(sc.kappa1, sc.L, p, s, reg);
        case Family::Differing:
            return wightman_differing_cross(sc.kappa1, sc.kappa2, 0.5 * (p + s), 0.5 * (p - s), reg, dir);
        case Family::ThermalInertialPair:
            return wightman_thermal_cross(sc.kappa1, sc.L, s, reg);
        case Family::SingleAccel:
            break;
    }
    throw InvalidArgument("unsupported branch pair");
}

}  // namespace udw
