// udw: sweeps detector response grids from a JSON config and writes CSV.
//
//   udw run config.json --workers 8 --out-dir out
//   udw check config.json
//   udw oracle planck --omega 1 --kappa 1
//   udw limits parallel

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "udw/config.hpp"
#include "udw/errors.hpp"
#include "udw/response_closed.hpp"
#include "udw/response_numeric.hpp"
#include "udw/sweep.hpp"

using namespace udw;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_issues(const ConfigValidation& v) {
    for (const auto& e : v.errors) std::cerr << "error: " << e.str() << '\n';
    for (const auto& w : v.warnings) std::cerr << "warning: " << w.str() << '\n';
}

struct LimitRow {
    std::string name;
    double value;
    double reference;
};

void print_limits(const std::vector<LimitRow>& rows) {
    std::cout << "limit,value,reference,relative_difference\n";
    for (const auto& r : rows) {
        const double rel = r.reference != 0.0 ? std::abs(r.value / r.reference - 1.0) : std::abs(r.value);
        std::cout << r.name << ',' << r.value << ',' << r.reference << ',' << rel << '\n';
    }
}

std::vector<LimitRow> family_limits(Family family, const DetectorParams& p, double kappa) {
    constexpr double kFar = 1e6;
    const double local = p_local(p, kappa).probability;
    DetectorParams unit = p;
    unit.lambda_coupling = 1.0;
    auto half_planck_rate = [&](const TrajectoryScenario& sc) {
        return LimitRow{"rate(L=1e6/kappa, tau=0)/lambda^2 vs half Planck",
                        transition_rate(sc, unit, 0.0).value, 0.5 * planck_rate(kappa, p.omega)};
    };
    switch (family) {
        case Family::SingleAccel:
            return {{"rate(tau=0)/lambda^2 vs Planck", transition_rate(TrajectoryScenario::single(kappa), unit, 0.0).value,
                     planck_rate(kappa, p.omega)}};
        case Family::Parallel:
            return {{"p_parallel(L=0) vs p_local", p_parallel(p, kappa, 0.0).probability, local},
                    {"p_parallel(L=1e6/kappa) vs p_local/2", p_parallel(p, kappa, kFar / kappa).probability, 0.5 * local},
                    half_planck_rate(TrajectoryScenario::parallel(kappa, kFar / kappa))};
        case Family::AntiParallel: {
            const double beta = kappa * p.sigma * p.sigma * p.omega;
            const double sh = std::sin(0.5 * beta);
            return {{"p_antiparallel(L=0) vs p_local/2 + zeta/(4 sin^2(beta/2))",
                     p_antiparallel(p, kappa, 0.0).probability, 0.5 * local + zeta_prefactor(p, kappa) / (4.0 * sh * sh)},
                    {"p_antiparallel(L=1e6/kappa) vs p_local/2", p_antiparallel(p, kappa, kFar / kappa).probability,
                     0.5 * local},
                    half_planck_rate(TrajectoryScenario::anti_parallel(kappa, kFar / kappa))};
        }
        case Family::Differing:
            return {{"p_differing(kappa, kappa) vs p_local", p_differing(p, kappa, kappa).probability, local}};
        case Family::ThermalInertialPair:
            return {half_planck_rate(TrajectoryScenario::thermal_pair(kappa, kFar / kappa))};
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detector response sweeps for superposed accelerated trajectories"};
    app.require_subcommand(1);

    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string out_dir = ".";
    double quad_tol = 0.0;
    std::vector<double> eps_ladder;
    std::string config_path;

    auto* run = app.add_subcommand("run", "sweep every output of a config and write CSV files");
    run->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
    run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--out-dir", out_dir, "directory for output files");
    run->add_option("--quad-tol", quad_tol, "relative quadrature tolerance (overrides config)")
        ->check(CLI::PositiveNumber);
    run->add_option("--eps-ladder", eps_ladder, "comma separated, strictly decreasing regulator values")
        ->delimiter(',');

    auto* check = app.add_subcommand("check", "validate a config and report all problems");
    check->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);

    auto* oracle = app.add_subcommand("oracle", "analytic reference values");
    auto* planck = oracle->add_subcommand("planck", "omega / (2 pi (exp(2 pi omega/kappa) - 1))");
    double omega = 1.0, kappa = 1.0;
    planck->add_option("--omega", omega, "energy gap")->required();
    planck->add_option("--kappa", kappa, "proper acceleration")->required()->check(CLI::PositiveNumber);
    oracle->require_subcommand(1);

    auto* limits = app.add_subcommand("limits", "closed-form and rate limits for a family");
    std::string family_name;
    DetectorParams lp;
    double lkappa = 1.0;
    limits->add_option("family", family_name, "single, parallel, antiparallel, differing, thermal_pair")
        ->required();
    limits->add_option("--omega", lp.omega, "energy gap");
    limits->add_option("--sigma", lp.sigma, "switching width");
    limits->add_option("--lambda", lp.lambda_coupling, "coupling");
    limits->add_option("--kappa", lkappa, "proper acceleration")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run || *check) {
            const std::string raw = read_file(config_path);
            auto v = validate_config(raw);
            print_issues(v);
            if (!v.config) return kExitConfig;
            auto cfg = std::move(*v.config);
            if (*check) {
                std::cout << "ok: " << cfg.outputs.size() << " outputs, config_sha1 " << cfg.hash << '\n';
                return 0;
            }
            if (quad_tol > 0.0) cfg.quadrature.rel_tol = quad_tol;
            if (!eps_ladder.empty()) cfg.regulator.epsilons = eps_ladder;
            try {
                cfg.quadrature.validate();
                cfg.regulator.validate();
            } catch (const InvalidArgument& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kExitConfig;
            }
            RunOptions opt;
            opt.workers = workers;
            opt.out_dir = out_dir;
            const auto summary = run_scenario(cfg, opt, std::cerr);
            if (summary.invalid_points > 0) {
                std::cerr << summary.invalid_points << " grid points flagged invalid (valid=0)\n";
            }
            return 0;
        }
        if (*planck) {
            std::cout.precision(17);
            std::cout << planck_rate(kappa, omega) << '\n';
            return 0;
        }
        if (*limits) {
            const Family family = family_from_string(family_name);
            std::cout.precision(12);
            print_limits(family_limits(family, lp, lkappa));
            return 0;
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
