#include "udw/response_closed.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "udw/errors.hpp"
#include "udw/validity.hpp"

namespace udw {

namespace {

using std::numbers::pi;

void require(const ValidityReport& report) {
    if (!report.ok) throw ValidityError(report.summary());
}

// Validates params/kappa, checks beta, returns sin^2(beta).
double checked_sin2(const DetectorParams& params, double kappa, ClosedFormResult& out) {
    params.validate();
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be finite and > 0");
    const double beta = kappa * params.sigma * params.sigma * params.omega;
    if (beta == 0.0) throw SingularParameter("beta = 0: sin(beta) vanishes");
    require(check_beta_bound(params, kappa));
    const double s = std::sin(beta);
    if (s == 0.0) throw SingularParameter("sin(beta) = 0");
    out.beta_values.push_back(beta);
    if (beta > kBetaWarning) {
        std::ostringstream w;
        w << "beta = " << beta << " close to pi, closed form unreliable";
        out.warnings.push_back(w.str());
    }
    return s * s;
}

void coupling_warning(const DetectorParams& params, ClosedFormResult& out) {
    if (params.lambda_coupling > kLambdaWarning) {
        out.warnings.push_back("lambda > 0.1, perturbative result questionable");
    }
}

}  // namespace

double zeta_prefactor(const DetectorParams& p, double kappa) {
    const double a = kappa * p.sigma * p.lambda_coupling;
    return a * a * std::exp(-p.sigma * p.sigma * p.omega * p.omega) / (16.0 * pi);
}

double xi_prefactor(const DetectorParams& p) {
    return p.lambda_coupling * p.lambda_coupling / 8.0 * std::exp(-p.sigma * p.sigma * p.omega * p.omega);
}

ClosedFormResult p_local(const DetectorParams& params, double kappa) {
    ClosedFormResult r;
    const double s2 = checked_sin2(params, kappa, r);
    coupling_warning(params, r);
    const double a = 0.5 * kappa * params.sigma * params.lambda_coupling;
    r.probability = a * a * std::exp(-params.sigma * params.sigma * params.omega * params.omega) / (2.0 * pi * s2);
    return r;
}

ClosedFormResult p_parallel(const DetectorParams& params, double kappa, double L) {
    if (!std::isfinite(L)) throw InvalidArgument("L must be finite");
    ClosedFormResult r = p_local(params, kappa);
    const double s2 = std::pow(std::sin(r.beta_values.front()), 2);
    const double h = 0.5 * kappa * L;
    r.probability = 0.5 * r.probability + zeta_prefactor(params, kappa) / (h * h + s2);
    return r;
}

ClosedFormResult p_antiparallel_formula(const DetectorParams& params, double kappa, double L) {
    if (!std::isfinite(L)) throw InvalidArgument("L must be finite");
    ClosedFormResult r = p_local(params, kappa);
    const double beta = r.beta_values.front();
    const double s = std::sin(beta);
    // cos(beta) + kL/2 - 1 = kL/2 - 2 sin^2(beta/2)
    const double sh = std::sin(0.5 * beta);
    const double shift = 0.5 * kappa * L - 2.0 * sh * sh;
    r.probability = 0.5 * r.probability + zeta_prefactor(params, kappa) / (s * s + shift * shift);
    return r;
}

ClosedFormResult p_antiparallel(const DetectorParams& params, double kappa, double L) {
    if (!std::isfinite(L)) throw InvalidArgument("L must be finite");
    p_local(params, kappa);
    require(check_antiparallel_pole(params, kappa, L));
    return p_antiparallel_formula(params, kappa, L);
}

ClosedFormResult p_differing(const DetectorParams& params, double kappa1, double kappa2) {
    ClosedFormResult r;
    checked_sin2(params, kappa1, r);
    checked_sin2(params, kappa2, r);
    coupling_warning(params, r);
    r.residues_omitted = true;

    const double sig2om = params.sigma * params.sigma * params.omega;
    // kappa^2 / sin^2(kappa sigma^2 omega), by series once kappa sigma is tiny
    auto ratio = [&](double kappa) {
        const double x = kappa * sig2om;
        if (kappa * params.sigma < 1e-4) {
            return (1.0 + x * x / 3.0) / (sig2om * sig2om);
        }
        const double s = std::sin(x);
        return kappa * kappa / (s * s);
    };

    const double b1 = kappa1 * sig2om;
    const double b2 = kappa2 * sig2om;
    // k1^2 + k2^2 - 2 k1 k2 cos(b1 + b2) = (k1 - k2)^2 + 4 k1 k2 sin^2((b1 + b2)/2)
    const double sh = std::sin(0.5 * (b1 + b2));
    const double den = (kappa1 - kappa2) * (kappa1 - kappa2) + 4.0 * kappa1 * kappa2 * sh * sh;
    const double cross = 8.0 * kappa1 * kappa1 * kappa2 * kappa2 / den;

    const double a = 0.5 * params.sigma * params.lambda_coupling;
    const double pre = a * a * std::exp(-params.sigma * params.sigma * params.omega * params.omega) / (8.0 * pi);
    r.probability = pre * (ratio(kappa1) + ratio(kappa2) + cross);
    return r;
}

}  // namespace udw
