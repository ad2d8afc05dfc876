#include "udw/superposition_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "udw/errors.hpp"

namespace udw {

ControlState ControlState::make(std::vector<double> phases) {
    if (phases.empty()) throw InvalidArgument("control state needs at least one branch");
    for (double p : phases) {
        if (!std::isfinite(p)) throw InvalidArgument("control phases must be finite");
    }
    const double ref = phases.front();
    for (double& p : phases) p -= ref;
    ControlState c;
    c.branch_count = static_cast<int>(phases.size());
    c.phases = std::move(phases);
    return c;
}

ControlState ControlState::two_branch(double delta_phi) { return make({delta_phi, 0.0}); }

WightmanIntegrals compute_wightman_integrals(const TrajectoryScenario& sc, const DetectorParams& params,
                                             const RegulatorSchedule& schedule,
                                             const QuadratureConfig& quad) {
    sc.validate();
    params.validate();
    quad.validate();
    const RegulatorSchedule sch = schedule.resolved(std::min(1.0 / sc.kappa_max(), params.sigma));
    const int n = sc.branch_count();

    std::map<std::pair<int, int>, std::vector<EpsilonEstimate>> re, im;
    std::map<int, std::vector<EpsilonEstimate>> t_re;
    std::map<int, ComplexValue> t_last;
    double quad_err = 0.0;

    for (double eps : sch.epsilons) {
        const Regulator reg{eps};
        for (int a = 1; a <= n; ++a) {
            for (int b = a; b <= n; ++b) {
                const auto r = full_pair_integral(sc, a, b, params, reg, quad);
                re[{a, b}].emplace_back(eps, r.value.real());
                im[{a, b}].emplace_back(eps, r.value.imag());
                quad_err = std::max(quad_err, r.error);
            }
            const auto t = time_ordered_integral(sc, a, params, reg, quad);
            t_re[a].emplace_back(eps, t.value.real());
            t_last[a] = t.value;
            quad_err = std::max(quad_err, t.error);
        }
    }

    WightmanIntegrals out;
    out.branch_count = n;
    double ex_err = 0.0;
    for (const auto& [key, est] : re) {
        const auto r = epsilon_extrapolate(est, sch.extrapolation);
        const auto i = epsilon_extrapolate(im.at(key), sch.extrapolation);
        const ComplexValue v{r.limit, i.limit};
        out.full_grid[key] = v;
        out.full_grid[{key.second, key.first}] = std::conj(v);
        ex_err = std::max({ex_err, r.error_estimate, i.error_estimate});
    }
    for (const auto& [a, est] : t_re) {
        const auto r = epsilon_extrapolate(est, sch.extrapolation);
        out.time_ordered[a] = {r.limit, t_last[a].imag()};
        ex_err = std::max(ex_err, r.error_estimate);
    }
    out.error_estimate = ex_err + quad_err;
    return out;
}

DetectorDensityMatrix conditional_density_matrix(const WightmanIntegrals& w, const ControlState& control,
                                                 const DetectorParams& params) {
    const int n = w.branch_count;
    if (control.branch_count != n || static_cast<int>(control.phases.size()) != n) {
        throw InvalidArgument("control state has " + std::to_string(control.branch_count) +
                              " branches, integrals have " + std::to_string(n));
    }
    const double l2 = params.lambda_coupling * params.lambda_coupling;
    const double n2 = static_cast<double>(n) * n;
    const auto& phi = control.phases;

    // Orders kept apart: at dphi = pi both cancel exactly, which fails once
    // the lambda^2 part has been absorbed into the O(1) sum.
    double zeroth = n;
    double first = 0.0;
    for (int i = 1; i <= n; ++i) first += w.time_ordered.at(i).real();
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const double c = std::cos(phi[i - 1] - phi[j - 1]);
            zeroth += 2.0 * c;
            first += c * (w.time_ordered.at(i).real() + w.time_ordered.at(j).real());
        }
    }
    const double ground = zeroth - 2.0 * l2 * first;

    ComplexValue excited = 0.0;
    for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
            excited += std::polar(1.0, -(phi[a - 1] - phi[b - 1])) * w.full_grid.at({a, b});
        }
    }

    DetectorDensityMatrix dm;
    dm.p_ground_unnormalized = ground / n2;
    dm.p_excited_unnormalized = l2 * excited.real() / n2;
    dm.norm = dm.p_ground_unnormalized + dm.p_excited_unnormalized;
    dm.p_excited_conditional = dm.norm > 0.0 ? dm.p_excited_unnormalized / dm.norm
                                             : std::numeric_limits<double>::quiet_NaN();
    return dm;
}

VisibilityScan visibility_scan(const WightmanIntegrals& w, const DetectorParams& params,
                               const std::vector<double>& phase_grid) {
    if (w.branch_count != 2) throw InvalidArgument("visibility scan needs two branches");
    if (phase_grid.empty()) throw InvalidArgument("empty phase grid");
    VisibilityScan out;
    double sum = 0.0;
    for (double dphi : phase_grid) {
        const auto dm = conditional_density_matrix(w, ControlState::two_branch(dphi), params);
        out.norms.push_back(dm.norm);
        out.field_terms.push_back(dm.norm - 0.5 * (1.0 + std::cos(dphi)));
        sum += dm.norm;
    }
    out.mean = sum / static_cast<double>(phase_grid.size());
    const auto [lo, hi] = std::minmax_element(out.field_terms.begin(), out.field_terms.end());
    out.amplitude = 0.5 * (*hi - *lo);
    return out;
}

}  // namespace udw
