#include "udw/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "udw/errors.hpp"
#include "udw/response_closed.hpp"
#include "udw/superposition_state.hpp"

namespace udw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Row = std::vector<double>;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string list(const std::vector<double>& v) {
    std::string s;
    for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + fmt(v[k]);
    return s;
}

std::vector<std::string> common_header(const ScenarioConfig& cfg, const OutputSpec& out,
                                       const RunOptions& opt) {
    const auto& sc = out.scenario;
    const auto& p = out.params;
    const auto& q = cfg.quadrature;
    std::vector<std::string> h;
    h.push_back(" udw " + std::string(to_string(out.kind)));
    h.push_back(" config_sha1 " + cfg.hash);
    h.push_back(" generated " + (opt.timestamp.empty() ? utc_timestamp() : opt.timestamp));
    h.push_back(" scenario family=" + std::string(to_string(sc.family)) + " kappa1=" + fmt(sc.kappa1) +
                " kappa2=" + fmt(sc.kappa2) + " L=" + fmt(sc.L));
    h.push_back(" params omega=" + fmt(p.omega) + " lambda_coupling=" + fmt(p.lambda_coupling) +
                " sigma=" + fmt(p.sigma));
    h.push_back(" regulator epsilons=" +
                (cfg.regulator.epsilons.empty() ? std::string("default(1e-2,5e-3,2.5e-3 times the time scale)")
                                                : list(cfg.regulator.epsilons)) +
                " extrapolation=" + std::string(to_string(cfg.regulator.extrapolation)));
    h.push_back(" quadrature s_max=" + (q.s_max > 0.0 ? fmt(q.s_max) : std::string("default")) +
                " abs_tol=" + fmt(q.abs_tol) + " rel_tol=" + fmt(q.rel_tol) +
                " max_subdivisions=" + std::to_string(q.max_subdivisions) +
                " oscillation_resolution=" + fmt(q.oscillation_resolution));
    h.push_back(" branches N=" + std::to_string(sc.branch_count()) +
                ", control (1/sqrt N) sum_i |c_i>, response carries 1/N^2");
    return h;
}

Table rate_map(const ScenarioConfig& cfg, const OutputSpec& out, const RunOptions& opt) {
    Table t;
    t.header = common_header(cfg, out, opt);
    t.header.push_back(" units omega/kappa1, kappa1 tau; rate divided by lambda^2 (sigma unused)");
    t.columns = {"omega_over_kappa", "kappa_tau", "rate_over_lambda2", "error_estimate", "valid"};
    const auto& g = out.grids;
    const double k = out.scenario.kappa1;
    const size_t nt = g.kappa_tau.size();
    t.rows = parallel_map<Row>(g.omega_over_kappa.size() * nt, opt.workers, [&](size_t idx) {
        const double w = g.omega_over_kappa[idx / nt];
        const double kt = g.kappa_tau[idx % nt];
        DetectorParams p = out.params;
        p.omega = w * k;
        p.lambda_coupling = 1.0;
        try {
            const auto r = transition_rate(out.scenario, p, kt / k, cfg.regulator, cfg.quadrature);
            if (std::isfinite(r.value)) return Row{w, kt, r.value, r.error_estimate, 1.0};
        } catch (const std::exception&) {
        }
        return Row{w, kt, kNaN, kNaN, 0.0};
    });
    return t;
}

Table kms_report(const ScenarioConfig& cfg, const OutputSpec& out, const RunOptions& opt) {
    Table t;
    t.header = common_header(cfg, out, opt);
    t.header.push_back(" ratio rate(omega)/rate(-omega) against exp(-2 pi omega/kappa1), tolerance " +
                       fmt(out.kms_tolerance));
    t.columns = {"omega_over_kappa", "kappa_tau", "ratio", "expected", "deviation", "satisfied", "valid"};
    const auto& g = out.grids;
    const double k = out.scenario.kappa1;
    const size_t nt = g.kappa_tau.size();
    t.rows = parallel_map<Row>(g.omega_over_kappa.size() * nt, opt.workers, [&](size_t idx) {
        const double w = g.omega_over_kappa[idx / nt];
        const double kt = g.kappa_tau[idx % nt];
        try {
            if (w == 0.0) throw IndeterminateRatio("omega = 0");
            auto rate_at = [&](double omega) {
                DetectorParams p = out.params;
                p.omega = omega;
                p.lambda_coupling = 1.0;
                return transition_rate(out.scenario, p, kt / k, cfg.regulator, cfg.quadrature);
            };
            const auto r = kms_check(rate_at, w * k, k, out.kms_tolerance);
            if (std::isfinite(r.ratio)) {
                return Row{w, kt, r.ratio, r.expected, r.deviation, r.satisfied ? 1.0 : 0.0, 1.0};
            }
        } catch (const std::exception&) {
        }
        return Row{w, kt, kNaN, kNaN, kNaN, 0.0, 0.0};
    });
    return t;
}

// Scenario with kappa fixed by beta = kappa sigma^2 omega; Differing keeps
// its kappa2/kappa1 ratio.
TrajectoryScenario scaled_scenario(const TrajectoryScenario& base, double kappa, double L) {
    TrajectoryScenario sc = base;
    sc.kappa2 = base.kappa2 / base.kappa1 * kappa;
    sc.kappa1 = kappa;
    sc.L = L;
    return sc;
}

double closed_form(const TrajectoryScenario& sc, const DetectorParams& p) {
    switch (sc.family) {
        case Family::SingleAccel: return p_local(p, sc.kappa1).probability;
        case Family::Parallel: return p_parallel(p, sc.kappa1, sc.L).probability;
        case Family::AntiParallel: return p_antiparallel(p, sc.kappa1, sc.L).probability;
        case Family::Differing: return p_differing(p, sc.kappa1, sc.kappa2).probability;
        case Family::ThermalInertialPair: break;
    }
    throw InvalidArgument("no closed form for thermal_pair");
}

Table probability_map(const ScenarioConfig& cfg, const OutputSpec& out, const RunOptions& opt) {
    Table t;
    t.header = common_header(cfg, out, opt);
    t.header.push_back(" backend " + std::string(to_string(out.backend)) +
                       (out.scenario.family == Family::Differing ? " (residue terms not included)" : ""));
    t.header.push_back(" units L/sigma, kappa1 sigma^2 omega (kappa1 follows from it at fixed sigma, omega);"
                       " probability divided by lambda^2");
    t.columns = {"L_over_sigma", "kappa_sigma2_omega", "P_over_lambda2", "valid"};
    const auto& g = out.grids;
    const size_t nb = g.kappa_sigma2_omega.size();
    t.rows = parallel_map<Row>(g.L_over_sigma.size() * nb, opt.workers, [&](size_t idx) {
        const double l = g.L_over_sigma[idx / nb];
        const double beta = g.kappa_sigma2_omega[idx % nb];
        DetectorParams p = out.params;
        p.lambda_coupling = 1.0;
        const double kappa = beta / (p.sigma * p.sigma * p.omega);
        try {
            if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa <= 0");
            const auto sc = scaled_scenario(out.scenario, kappa, l * p.sigma);
            const double v = out.backend == Backend::ClosedForm
                                 ? closed_form(sc, p)
                                 : excitation_probability_quadrature(sc, p, cfg.regulator, cfg.quadrature).value;
            if (std::isfinite(v) && v >= 0.0) return Row{l, beta, v, 1.0};
        } catch (const std::exception&) {
        }
        return Row{l, beta, kNaN, 0.0};
    });
    return t;
}

Table visibility(const ScenarioConfig& cfg, const OutputSpec& out, const RunOptions& opt) {
    Table t;
    t.header = common_header(cfg, out, opt);
    t.columns = {"delta_phi", "norm", "field_term", "p_excited_conditional", "valid"};
    const auto& phases = out.grids.delta_phi;
    try {
        const auto w = compute_wightman_integrals(out.scenario, out.params, cfg.regulator, cfg.quadrature);
        const auto scan = visibility_scan(w, out.params, phases);
        t.header.push_back(" mean_norm " + fmt(scan.mean) + " visibility_amplitude " + fmt(scan.amplitude) +
                           " (half peak-to-peak of norm - (1 + cos dphi)/2)");
        for (size_t k = 0; k < phases.size(); ++k) {
            const auto dm = conditional_density_matrix(w, ControlState::two_branch(phases[k]), out.params);
            const bool ok = std::isfinite(dm.p_excited_conditional);
            t.rows.push_back({phases[k], scan.norms[k], scan.field_terms[k], dm.p_excited_conditional,
                              ok ? 1.0 : 0.0});
        }
    } catch (const std::exception& e) {
        t.header.push_back(" failed: " + std::string(e.what()));
        for (double ph : phases) t.rows.push_back({ph, kNaN, kNaN, kNaN, 0.0});
    }
    return t;
}

}  // namespace

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Table compute_output(const ScenarioConfig& cfg, const OutputSpec& out, const RunOptions& opt) {
    Table t;
    switch (out.kind) {
        case OutputKind::RateMap: t = rate_map(cfg, out, opt); break;
        case OutputKind::KmsReport: t = kms_report(cfg, out, opt); break;
        case OutputKind::ProbabilityMap: t = probability_map(cfg, out, opt); break;
        case OutputKind::VisibilityScan: t = visibility(cfg, out, opt); break;
    }
    for (const auto& r : t.rows) {
        if (r.back() == 0.0) ++t.invalid_points;
    }
    return t;
}

void write_csv(const Table& t, std::ostream& os) {
    for (const auto& h : t.header) os << '#' << h << '\n';
    for (size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
    os << '\n';
    for (const auto& r : t.rows) {
        for (size_t k = 0; k < r.size(); ++k) {
            // valid and satisfied are flags
            const bool flag = t.columns[k] == "valid" || t.columns[k] == "satisfied";
            os << (k ? "," : "") << (flag ? std::to_string(static_cast<int>(r[k])) : fmt(r[k]));
        }
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::json j;
    j["header"] = t.header;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : t.rows) {
        auto row = nlohmann::json::array();
        for (double v : r) row.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
        j["rows"].push_back(row);
    }
    os << j.dump(1) << '\n';
}

RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& opt, std::ostream& log) {
    RunSummary s;
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + opt.out_dir.string() + ": " + ec.message());

    for (const auto& out : cfg.outputs) {
        const auto start = std::chrono::steady_clock::now();
        const Table t = compute_output(cfg, out, opt);
        const std::filesystem::path path = opt.out_dir / out.path;
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        write_csv(t, f);
        if (!f) throw std::runtime_error("write failed for " + path.string());
        s.written.push_back(path);
        if (out.json_mirror) {
            auto jpath = path;
            jpath.replace_extension(".json");
            std::ofstream jf(jpath);
            if (!jf) throw std::runtime_error("cannot write " + jpath.string());
            write_json(t, jf);
            s.written.push_back(jpath);
        }
        s.invalid_points += t.invalid_points;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        log << to_string(out.kind) << " -> " << path.string() << ": " << t.rows.size() << " points, "
            << t.invalid_points << " invalid, " << fmt(secs) << " s\n";
    }
    return s;
}

}  // namespace udw
