#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "udw/detector.hpp"
#include "udw/kinematics.hpp"
#include "udw/quadrature.hpp"
#include "udw/response_numeric.hpp"

namespace udw {

enum class OutputKind { ProbabilityMap, RateMap, KmsReport, VisibilityScan };
enum class Backend { ClosedForm, Quadrature };

std::string_view to_string(OutputKind kind);
std::string_view to_string(Backend backend);

// Figure axes, all dimensionless. A grid may be written as a list or as
// {"start", "stop", "count"} (inclusive linspace).
struct Grids {
    std::vector<double> omega_over_kappa;
    std::vector<double> kappa_tau;
    std::vector<double> L_over_sigma;
    std::vector<double> kappa_sigma2_omega;
    std::vector<double> delta_phi;

    static Grids defaults();
};

// One output with the top-level sections already merged with its overrides.
struct OutputSpec {
    OutputKind kind = OutputKind::RateMap;
    std::string path;
    Backend backend = Backend::ClosedForm;  // probability_map only
    double kms_tolerance = 0.01;            // kms_report only
    bool json_mirror = false;
    TrajectoryScenario scenario;
    DetectorParams params;
    Grids grids;
};

struct ScenarioConfig {
    TrajectoryScenario scenario;
    DetectorParams params;
    Grids grids;
    QuadratureConfig quadrature;
    RegulatorSchedule regulator;
    std::vector<OutputSpec> outputs;
    std::string raw;   // config text as read
    std::string hash;  // git blob SHA-1 of raw
};

struct ConfigIssue {
    std::string path;  // e.g. "grids.omega_over_kappa", "outputs[1].kind"
    std::string reason;

    std::string str() const { return path + ": " + reason; }
};

struct ConfigValidation {
    std::optional<ScenarioConfig> config;  // set when there are no errors
    std::vector<ConfigIssue> errors;
    std::vector<ConfigIssue> warnings;
};

// Parses and checks everything, collecting every problem instead of stopping
// at the first.
ConfigValidation validate_config(std::string_view raw);

// SHA-1 over "blob <size>\0<content>", hex encoded (same as git hash-object).
std::string git_blob_hash(std::string_view content);

}  // namespace udw
