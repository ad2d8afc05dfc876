#include "udw/validity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "udw/errors.hpp"

namespace udw {

using std::numbers::pi;

void DetectorParams::validate() const {
    if (!std::isfinite(omega)) throw InvalidArgument("omega must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be finite and > 0");
    if (!(lambda_coupling >= 0.0) || !std::isfinite(lambda_coupling)) {
        throw InvalidArgument("lambda_coupling must be finite and >= 0");
    }
}

void ValidityReport::add(std::string name, std::string detail) {
    violated_constraints.push_back({std::move(name), std::move(detail)});
    ok = false;
}

std::string ValidityReport::summary() const {
    if (ok) return "ok";
    std::ostringstream out;
    for (size_t k = 0; k < violated_constraints.size(); ++k) {
        if (k) out << "; ";
        out << violated_constraints[k].name << ": " << violated_constraints[k].detail;
    }
    return out.str();
}

ValidityReport check_beta_bound(const DetectorParams& params, double kappa) {
    ValidityReport report;
    report.beta = kappa * params.sigma * params.sigma * params.omega;
    std::ostringstream detail;
    detail << "beta = " << report.beta;
    if (report.beta <= 0.0) {
        report.add("negative_gap_closed_form", detail.str() + " (closed forms cover absorption only)");
    } else if (report.beta >= pi) {
        report.add("beta_bound", detail.str() + " >= pi, shifted contour crosses poles");
    }
    return report;
}

double antiparallel_pole_lhs(double kappa_L) {
    const double h = 0.5 * kappa_L;
    const double den = (h - 1.0) * (h + 1.0) * (h + 1.0);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 / 16.0) / den;
}

ValidityReport check_antiparallel_pole(const DetectorParams& params, double kappa, double L) {
    ValidityReport report = check_beta_bound(params, kappa);
    const double kl = kappa * L;
    const double beta = report.beta;

    if (beta > 0.0) {
        // 1/(1 - cos x) on x in (0, 2 beta] covers [1/(1 - cos min(2 beta, pi)), inf)
        const double lhs = antiparallel_pole_lhs(kl);
        const double bound = 1.0 / (1.0 - std::cos(std::min(2.0 * beta, pi)));
        if (lhs > 0.0 && lhs >= bound) {
            std::ostringstream d;
            d << "kappa*L = " << kl << ": pole term " << lhs << " >= " << bound;
            report.add("antiparallel_pole", d.str());
        }
    }
    if (std::abs(kl - 2.0) < kAntiParallelSuspectWidth) {
        std::ostringstream d;
        d << "kappa*L = " << kl << " within " << kAntiParallelSuspectWidth
          << " of 2, closed form suspect, use quadrature";
        report.add("antiparallel_pole_neighbourhood", d.str());
    }
    return report;
}

}  // namespace udw
