#include "udw/response_numeric.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "udw/errors.hpp"

namespace udw {

namespace {

using std::numbers::pi;
constexpr ComplexValue I{0.0, 1.0};

// Truncation of the Gaussian-windowed square, in units of sigma.
constexpr double kWindowHalfWidth = 12.0;
// Past this many oscillation periods the panel sums need compensation (the
// integrator always compensates, this only feeds a diagnostic).
constexpr double kManyOscillations = 1e4;

std::vector<double> sign_change_roots(const auto& g, double a, double b, int n) {
    std::vector<double> roots;
    double x0 = a;
    double g0 = g(a);
    for (int k = 1; k <= n; ++k) {
        const double x1 = a + (b - a) * k / n;
        const double g1 = g(x1);
        if ((g0 < 0.0) != (g1 < 0.0)) {
            double lo = x0, hi = x1, glo = g0;
            for (int it = 0; it < 80 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if ((gm < 0.0) == (glo < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        g0 = g1;
    }
    return roots;
}

double kappa_scale_max(const TrajectoryScenario& sc) { return sc.kappa_max(); }

std::vector<std::pair<int, int>> all_pairs(const TrajectoryScenario& sc) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= sc.branch_count(); ++i) {
        for (int j = 1; j <= sc.branch_count(); ++j) out.emplace_back(i, j);
    }
    return out;
}

bool stationary_pair(const TrajectoryScenario& sc, int a, int b) {
    return a == b || sc.family == Family::ThermalInertialPair;
}

struct Fixed {
    double value;
    double error;
};

double gaussian(double x, double sigma) { return std::exp(-0.5 * x * x / (sigma * sigma)); }

// Re sum_ij e^{-i omega s} W^{ij}(tau, tau - s) [* eta(tau - s)] integrated on [0, s_max].
Fixed rate_integral(const TrajectoryScenario& sc, const DetectorParams& dp, double tau, Regulator reg,
                    const QuadratureConfig& q, double s_max, bool windowed) {
    const double omega = dp.omega;
    const auto pairs = all_pairs(sc);

    std::vector<double> pts;
    add_graded_points(pts, 0.0, reg.epsilon, s_max);
    const double kmin = sc.kappa_min();
    for (const auto& [i, j] : pairs) {
        if (i == j) continue;
        const Event here = worldline_event(sc, i, tau);
        auto g = [&](double s) { return minkowski_interval(here, worldline_event(sc, j, tau - s)); };
        const int n = std::max(2000, static_cast<int>(s_max * kmin * 100.0));
        for (double root : sign_change_roots(g, 0.0, s_max, n)) {
            add_graded_points(pts, root, reg.epsilon, std::min(s_max, 2.0 / kmin), 2.0);
        }
    }
    add_oscillation_mesh(pts, 0.0, s_max, omega, q.oscillation_resolution);
    if (windowed) add_oscillation_mesh(pts, 0.0, s_max, 2.0 * pi / dp.sigma, 8.0);

    auto f = [&](double s) {
        ComplexValue sum = 0.0;
        for (const auto& [i, j] : pairs) sum += wightman_ps(sc, i, j, 2.0 * tau - s, s, reg);
        double v = (std::exp(-I * (omega * s)) * sum).real();
        if (windowed) v *= gaussian(tau - s, dp.sigma);
        return v;
    };
    const auto r = integrate_adaptive<double>(f, normalize_breakpoints(pts, 0.0, s_max), q.abs_tol,
                                              q.rel_tol, q.max_subdivisions);
    return {r.value, r.error};
}

RateResult rate_impl(const TrajectoryScenario& sc, const DetectorParams& dp, double tau,
                     const RegulatorSchedule& schedule, const QuadratureConfig& q, bool windowed) {
    sc.validate();
    if (!std::isfinite(dp.omega)) throw InvalidArgument("omega must be finite");
    if (!(dp.lambda_coupling >= 0.0)) throw InvalidArgument("lambda_coupling must be >= 0");
    if (windowed && !(dp.sigma > 0.0)) throw InvalidArgument("sigma must be > 0");
    if (!std::isfinite(tau)) throw InvalidArgument("tau must be finite");
    q.validate();
    const RegulatorSchedule sch = schedule.resolved(1.0 / sc.kappa_max());

    const double n = sc.branch_count();
    double pre = 2.0 * dp.lambda_coupling * dp.lambda_coupling / (n * n);
    double s_max = q.s_max > 0.0 ? q.s_max : default_s_max(sc);
    RateResult out;
    if (windowed) {
        pre *= gaussian(tau, dp.sigma);
        s_max = std::min(s_max, std::max(tau + 8.0 * dp.sigma, 8.0 * dp.sigma));
    }
    if (std::abs(dp.omega) * s_max / (2.0 * pi) > kManyOscillations) {
        out.warnings.push_back("more than 1e4 oscillation periods, compensated panel summation");
    }
    if (pre == 0.0) {
        for (double e : sch.epsilons) out.epsilon_estimates.emplace_back(e, 0.0);
        return out;
    }

    double quad_err = 0.0;
    for (double eps : sch.epsilons) {
        const Fixed r = rate_integral(sc, dp, tau, Regulator{eps}, q, s_max, windowed);
        out.epsilon_estimates.emplace_back(eps, pre * r.value);
        quad_err = std::max(quad_err, pre * r.error);
    }
    const auto ex = epsilon_extrapolate(out.epsilon_estimates, sch.extrapolation);
    out.value = ex.limit;
    out.error_estimate = ex.error_estimate + quad_err;
    out.warnings.insert(out.warnings.end(), ex.warnings.begin(), ex.warnings.end());
    return out;
}

}  // namespace

std::string_view to_string(Extrapolation mode) {
    switch (mode) {
        case Extrapolation::RichardsonLinear: return "richardson_linear";
        case Extrapolation::RichardsonQuadratic: return "richardson_quadratic";
        case Extrapolation::None: return "none";
    }
    return "unknown";
}

Extrapolation extrapolation_from_string(std::string_view name) {
    for (auto m : {Extrapolation::RichardsonLinear, Extrapolation::RichardsonQuadratic, Extrapolation::None}) {
        if (name == to_string(m)) return m;
    }
    throw InvalidArgument("unknown extrapolation '" + std::string(name) + "'");
}

RegulatorSchedule RegulatorSchedule::standard(double time_scale, Extrapolation mode) {
    RegulatorSchedule s;
    for (double e : kLadder) s.epsilons.push_back(e * time_scale);
    s.extrapolation = mode;
    return s;
}

void RegulatorSchedule::validate() const {
    if (epsilons.empty()) return;
    const size_t need = extrapolation == Extrapolation::None ? 1
                        : extrapolation == Extrapolation::RichardsonLinear ? 2 : 3;
    if (epsilons.size() < need) {
        throw InvalidArgument("regulator schedule needs at least " + std::to_string(need) + " epsilons");
    }
    for (size_t k = 0; k < epsilons.size(); ++k) {
        if (!(epsilons[k] > 0.0) || !std::isfinite(epsilons[k])) {
            throw InvalidArgument("regulator epsilons must be finite and > 0");
        }
        if (k > 0 && !(epsilons[k] < epsilons[k - 1])) {
            throw InvalidArgument("regulator epsilons must be strictly decreasing");
        }
    }
}

RegulatorSchedule RegulatorSchedule::resolved(double time_scale) const {
    validate();
    if (!epsilons.empty()) return *this;
    return standard(time_scale, extrapolation);
}

ExtrapolationResult epsilon_extrapolate(const std::vector<EpsilonEstimate>& est, Extrapolation mode) {
    ExtrapolationResult out;
    if (est.empty()) throw InvalidArgument("no estimates to extrapolate");
    for (size_t k = 1; k < est.size(); ++k) {
        if (!(est[k].first < est[k - 1].first)) {
            throw InvalidArgument("epsilon estimates must have strictly decreasing epsilon");
        }
    }
    if (est.size() >= 3) {
        const size_t n = est.size();
        const double d1 = est[n - 2].second - est[n - 3].second;
        const double d2 = est[n - 1].second - est[n - 2].second;
        if (d1 * d2 < 0.0) out.warnings.push_back("non-monotone convergence over the last three epsilons");
    }

    if (mode == Extrapolation::None) {
        out.limit = est.back().second;
        out.error_estimate = est.size() > 1 ? std::abs(est.back().second - est[est.size() - 2].second) : 0.0;
        return out;
    }

    const size_t order = mode == Extrapolation::RichardsonLinear ? 2 : 3;
    if (est.size() < order) {
        throw InvalidArgument("extrapolation needs at least " + std::to_string(order) + " points");
    }
    // Lagrange polynomial through `order` consecutive points, evaluated at 0.
    std::vector<double> extrapolants;
    for (size_t start = 0; start + order <= est.size(); ++start) {
        double value = 0.0;
        for (size_t k = start; k < start + order; ++k) {
            double w = 1.0;
            for (size_t m = start; m < start + order; ++m) {
                if (m != k) w *= est[m].first / (est[m].first - est[k].first);
            }
            value += w * est[k].second;
        }
        extrapolants.push_back(value);
    }
    out.limit = extrapolants.back();
    out.error_estimate = extrapolants.size() > 1
                             ? std::abs(extrapolants.back() - extrapolants[extrapolants.size() - 2])
                             : std::abs(extrapolants.back() - est.back().second);
    return out;
}

double default_s_max(const TrajectoryScenario& sc) {
    double s = 40.0 / sc.kappa_min();
    // Reach past the light-cone features at s = |L|. Beyond kappa |L| ~ 400
    // the cross term is a flat O(kappa / L) background and the local term
    // would overflow, so the window stops growing.
    if (sc.family == Family::ThermalInertialPair) s += std::min(std::abs(sc.L), 400.0 / sc.kappa_min());
    return s;
}

RateResult transition_rate(const TrajectoryScenario& sc, const DetectorParams& dp, double tau,
                           const RegulatorSchedule& schedule, const QuadratureConfig& q) {
    return rate_impl(sc, dp, tau, schedule, q, false);
}

RateResult transition_rate_finite_switching(const TrajectoryScenario& sc, const DetectorParams& dp,
                                            double tau, const RegulatorSchedule& schedule,
                                            const QuadratureConfig& q) {
    return rate_impl(sc, dp, tau, schedule, q, true);
}

double planck_rate(double kappa, double omega) {
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
    const double x = 2.0 * pi * omega / kappa;
    if (std::abs(omega) / kappa < 1e-6) {
        return kappa / (4.0 * pi * pi) * (1.0 - 0.5 * x + x * x / 12.0);
    }
    return omega / (2.0 * pi * std::expm1(x));
}

KmsReport kms_check(const std::function<RateResult(double)>& rate_at, double omega, double kappa,
                    double tol) {
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
    const RateResult up = rate_at(omega);
    const RateResult down = rate_at(-omega);
    if (!std::isfinite(up.value) || !std::isfinite(down.value)) {
        throw InvalidArgument("rate_at returned a non-finite value");
    }
    if (std::abs(down.value) <= down.error_estimate) {
        std::ostringstream m;
        m << "rate at -omega (" << down.value << ") is zero within its error " << down.error_estimate;
        throw IndeterminateRatio(m.str());
    }
    KmsReport r;
    r.ratio = up.value / down.value;
    r.expected = std::exp(-2.0 * pi * omega / kappa);
    r.deviation = std::abs(r.ratio / r.expected - 1.0);
    r.satisfied = r.deviation <= tol;
    return r;
}

PairIntegral full_pair_integral(const TrajectoryScenario& sc, int a, int b, const DetectorParams& dp,
                                Regulator reg, const QuadratureConfig& q) {
    sc.validate();
    dp.validate();
    const double sigma = dp.sigma;
    const double omega = dp.omega;
    const double U = kWindowHalfWidth * sigma;

    // Shift s -> u - i delta; the Gaussian becomes real at delta = 2 sigma^2 omega.
    // No singularity lies between the contours while kappa delta < 2 pi.
    PairIntegral out;
    const double delta = omega > 0.0 ? std::min(2.0 * sigma * sigma * omega, pi / kappa_scale_max(sc)) : 0.0;
    out.shift = delta;
    out.contour = delta > 0.0 ? ContourKind::Shifted : ContourKind::RealAxis;
    const double log_factor = delta * delta / (4.0 * sigma * sigma) - omega * delta;
    const double freq = delta / (2.0 * sigma * sigma) - omega;
    const double width = delta + 2.0 * reg.epsilon;

    auto inner = [&](double p, double abs_tol) -> QuadResult<ComplexValue> {
        std::vector<double> pts;
        add_graded_points(pts, 0.0, 0.5 * width, U);
        if (a != b && delta < 2.0 * sigma) {
            auto g = [&](double u) {
                return minkowski_interval(worldline_event(sc, a, 0.5 * (p + u)),
                                          worldline_event(sc, b, 0.5 * (p - u)));
            };
            for (double root : sign_change_roots(g, -U, U, 240)) {
                add_graded_points(pts, root, width, std::min(U, 4.0 * sigma), 2.0);
            }
        }
        add_oscillation_mesh(pts, -U, U, freq, q.oscillation_resolution);
        auto f = [&](double u) {
            const ComplexValue s{u, -delta};
            return std::exp(ComplexValue{-u * u / (4.0 * sigma * sigma), u * freq}) *
                   wightman_ps(sc, a, b, p, s, reg);
        };
        return integrate_adaptive<ComplexValue>(f, normalize_breakpoints(pts, -U, U), abs_tol, q.rel_tol,
                                                q.max_subdivisions);
    };

    const auto centre = inner(0.0, q.abs_tol);
    const double scale = std::max(std::abs(centre.value), std::numeric_limits<double>::min());
    const double factor = std::exp(log_factor);

    if (stationary_pair(sc, a, b)) {
        out.value = factor * sigma * std::sqrt(pi) * centre.value;
        out.error = factor * sigma * std::sqrt(pi) * centre.error;
        return out;
    }

    const double inner_abs = 1e-3 * q.rel_tol * scale;
    double inner_err = 0.0;
    auto outer_f = [&](double p) {
        const auto r = inner(p, inner_abs);
        inner_err = std::max(inner_err, r.error);
        return std::exp(-p * p / (4.0 * sigma * sigma)) * r.value;
    };
    std::vector<double> pts{0.0};
    for (int k = -4; k <= 4; ++k) pts.push_back(k * U / 4.0);
    const auto outer = integrate_adaptive<ComplexValue>(outer_f, normalize_breakpoints(pts, -U, U),
                                                        1e-3 * q.rel_tol * scale * sigma, q.rel_tol,
                                                        q.max_subdivisions);
    out.value = 0.5 * factor * outer.value;
    out.error = 0.5 * factor * (outer.error + 2.0 * U * inner_err);
    return out;
}

PairIntegral time_ordered_integral(const TrajectoryScenario& sc, int a, const DetectorParams& dp,
                                   Regulator reg, const QuadratureConfig& q) {
    sc.validate();
    dp.validate();
    const double sigma = dp.sigma;
    const double omega = dp.omega;
    const double U = kWindowHalfWidth * sigma;
    std::vector<double> pts;
    add_graded_points(pts, 0.0, reg.epsilon, U);
    add_oscillation_mesh(pts, 0.0, U, omega, q.oscillation_resolution);
    auto f = [&](double s) {
        return std::exp(ComplexValue{-s * s / (4.0 * sigma * sigma), -omega * s}) *
               wightman_ps(sc, a, a, 0.0, s, reg);
    };
    const auto r = integrate_adaptive<ComplexValue>(f, normalize_breakpoints(pts, 0.0, U), q.abs_tol,
                                                    q.rel_tol, q.max_subdivisions);
    PairIntegral out;
    out.contour = ContourKind::RealAxis;
    out.value = sigma * std::sqrt(pi) * r.value;
    out.error = sigma * std::sqrt(pi) * r.error;
    return out;
}

ProbabilityResult excitation_probability_quadrature(const TrajectoryScenario& sc,
                                                    const DetectorParams& dp,
                                                    const RegulatorSchedule& schedule,
                                                    const QuadratureConfig& q) {
    sc.validate();
    dp.validate();
    q.validate();
    const RegulatorSchedule sch = schedule.resolved(std::min(1.0 / sc.kappa_max(), dp.sigma));
    const double n = sc.branch_count();
    const double pre = dp.lambda_coupling * dp.lambda_coupling / (n * n);

    ProbabilityResult out;
    out.shift = dp.omega > 0.0 ? std::min(2.0 * dp.sigma * dp.sigma * dp.omega, pi / sc.kappa_max()) : 0.0;
    out.contour = out.shift > 0.0 ? ContourKind::Shifted : ContourKind::RealAxis;
    if (pre == 0.0) {
        for (double e : sch.epsilons) out.epsilon_estimates.emplace_back(e, 0.0);
        return out;
    }

    double quad_err = 0.0;
    for (double eps : sch.epsilons) {
        double total = 0.0;
        double err = 0.0;
        for (int a = 1; a <= sc.branch_count(); ++a) {
            for (int b = a; b <= sc.branch_count(); ++b) {
                const auto r = full_pair_integral(sc, a, b, dp, Regulator{eps}, q);
                const double weight = a == b ? 1.0 : 2.0;  // (b, a) is the conjugate
                total += weight * r.value.real();
                err += weight * r.error;
            }
        }
        out.epsilon_estimates.emplace_back(eps, pre * total);
        quad_err = std::max(quad_err, pre * err);
    }
    const auto ex = epsilon_extrapolate(out.epsilon_estimates, sch.extrapolation);
    out.value = ex.limit;
    out.error_estimate = ex.error_estimate + quad_err;
    out.warnings = ex.warnings;
    return out;
}

}  // namespace udw
