#include "udw/config.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <numbers>
#include <set>

#include "json.hpp"
#include "udw/errors.hpp"
#include "udw/validity.hpp"

namespace udw {

namespace {

using nlohmann::json;

// Typed field access that records problems instead of throwing.
class Reader {
public:
    explicit Reader(std::vector<ConfigIssue>& errors) : errors_(errors) {}

    void error(const std::string& path, const std::string& reason) { errors_.push_back({path, reason}); }

    // Rejects keys outside the allowed set; typos otherwise go unnoticed.
    void known_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : obj.items()) {
            if (!allowed.count(k)) error(join(path, k), "unknown key");
        }
    }

    void number(const json& obj, const std::string& path, const char* key, double& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_number()) {
            error(join(path, key), "expected a number");
            return;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            error(join(path, key), "not finite");
            return;
        }
        out = d;
    }

    void integer(const json& obj, const std::string& path, const char* key, int& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            error(join(path, key), "expected an integer");
            return;
        }
        out = v.get<int>();
    }

    bool string(const json& obj, const std::string& path, const char* key, std::string& out) {
        if (!obj.contains(key)) return false;
        const json& v = obj.at(key);
        if (!v.is_string()) {
            error(join(path, key), "expected a string");
            return false;
        }
        out = v.get<std::string>();
        return true;
    }

    void boolean(const json& obj, const std::string& path, const char* key, bool& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_boolean()) {
            error(join(path, key), "expected true or false");
            return;
        }
        out = v.get<bool>();
    }

    const json* object(const json& obj, const std::string& path, const char* key) {
        if (!obj.contains(key)) return nullptr;
        const json& v = obj.at(key);
        if (!v.is_object()) {
            error(join(path, key), "expected an object");
            return nullptr;
        }
        return &v;
    }

    void grid(const json& obj, const std::string& path, const char* key, std::vector<double>& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        const std::string p = join(path, key);
        std::vector<double> values;
        if (v.is_array()) {
            for (const auto& e : v) {
                if (!e.is_number() || !std::isfinite(e.get<double>())) {
                    error(p, "entries must be finite numbers");
                    return;
                }
                values.push_back(e.get<double>());
            }
        } else if (v.is_object()) {
            double start = NAN, stop = NAN;
            int count = 0;
            known_keys(v, p, {"start", "stop", "count"});
            if (!v.contains("start") || !v.contains("stop") || !v.contains("count")) {
                error(p, "range needs start, stop and count");
                return;
            }
            number(v, p, "start", start);
            number(v, p, "stop", stop);
            integer(v, p, "count", count);
            if (!std::isfinite(start) || !std::isfinite(stop)) return;
            if (count < 1) {
                error(p, "empty");
                return;
            }
            for (int k = 0; k < count; ++k) {
                values.push_back(count == 1 ? start : start + (stop - start) * k / (count - 1));
            }
        } else {
            error(p, "expected a list or {start, stop, count}");
            return;
        }
        if (values.empty()) {
            error(p, "empty");
            return;
        }
        out = std::move(values);
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    std::vector<ConfigIssue>& errors_;
};

void read_scenario(Reader& r, const json& j, const std::string& path, TrajectoryScenario& sc) {
    r.known_keys(j, path, {"family", "kappa1", "kappa2", "L"});
    std::string family;
    if (r.string(j, path, "family", family)) {
        try {
            sc.family = family_from_string(family);
        } catch (const InvalidArgument& e) {
            r.error(Reader::join(path, "family"), e.what());
        }
    }
    r.number(j, path, "kappa1", sc.kappa1);
    r.number(j, path, "kappa2", sc.kappa2);
    r.number(j, path, "L", sc.L);
    try {
        sc.validate();
    } catch (const InvalidArgument& e) {
        r.error(path, e.what());
    }
}

void read_params(Reader& r, const json& j, const std::string& path, DetectorParams& p) {
    r.known_keys(j, path, {"omega", "lambda_coupling", "sigma"});
    r.number(j, path, "omega", p.omega);
    r.number(j, path, "lambda_coupling", p.lambda_coupling);
    r.number(j, path, "sigma", p.sigma);
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        r.error(path, e.what());
    }
}

void read_grids(Reader& r, const json& j, const std::string& path, Grids& g) {
    r.known_keys(j, path, {"omega_over_kappa", "kappa_tau", "L_over_sigma", "kappa_sigma2_omega", "delta_phi"});
    r.grid(j, path, "omega_over_kappa", g.omega_over_kappa);
    r.grid(j, path, "kappa_tau", g.kappa_tau);
    r.grid(j, path, "L_over_sigma", g.L_over_sigma);
    r.grid(j, path, "kappa_sigma2_omega", g.kappa_sigma2_omega);
    r.grid(j, path, "delta_phi", g.delta_phi);
}

std::optional<OutputKind> kind_from_string(std::string_view s) {
    for (auto k : {OutputKind::ProbabilityMap, OutputKind::RateMap, OutputKind::KmsReport,
                   OutputKind::VisibilityScan}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

// Semantic checks that need the merged output, e.g. closed forms outside
// the pole-free regime.
void check_output(const OutputSpec& out, const std::string& path, std::vector<ConfigIssue>& errors,
                  std::vector<ConfigIssue>& warnings) {
    const auto& sc = out.scenario;
    const auto& p = out.params;
    switch (out.kind) {
        case OutputKind::RateMap:
        case OutputKind::KmsReport:
            for (double w : out.grids.omega_over_kappa) {
                if (out.kind == OutputKind::KmsReport && w == 0.0) {
                    warnings.push_back({path + ".grids.omega_over_kappa",
                                        "omega = 0 has no detailed-balance ratio, point will be invalid"});
                    break;
                }
            }
            break;
        case OutputKind::ProbabilityMap: {
            if (p.omega == 0.0) {
                errors.push_back({path + ".params.omega", "probability_map needs omega != 0 to map kappa sigma^2 omega to kappa"});
                break;
            }
            if (out.backend == Backend::ClosedForm && sc.family == Family::ThermalInertialPair) {
                errors.push_back({path + ".backend", "no closed form for thermal_pair, use \"quadrature\""});
                break;
            }
            if (out.backend != Backend::ClosedForm) break;
            bool flagged_beta = false, flagged_pole = false;
            for (double beta : out.grids.kappa_sigma2_omega) {
                const double kappa = beta / (p.sigma * p.sigma * p.omega);
                if (!(kappa > 0.0)) {
                    if (!flagged_beta) {
                        warnings.push_back({path + ".grids.kappa_sigma2_omega",
                                            "kappa sigma^2 omega <= 0 has no closed form, points will be invalid"});
                        flagged_beta = true;
                    }
                    continue;
                }
                const auto report = check_beta_bound(p, kappa);
                if (!report.ok && !flagged_beta) {
                    warnings.push_back({path + ".grids.kappa_sigma2_omega",
                                        report.summary() + "; use backend \"quadrature\" there"});
                    flagged_beta = true;
                }
                if (report.ok && sc.family == Family::AntiParallel && !flagged_pole) {
                    for (double l : out.grids.L_over_sigma) {
                        const auto pole = check_antiparallel_pole(p, kappa, l * p.sigma);
                        if (!pole.ok) {
                            warnings.push_back({path + ".grids",
                                                pole.summary() + "; affected points will be invalid, use backend \"quadrature\""});
                            flagged_pole = true;
                            break;
                        }
                    }
                }
            }
            break;
        }
        case OutputKind::VisibilityScan:
            if (sc.family == Family::SingleAccel) {
                errors.push_back({path + ".scenario.family", "visibility_scan needs a two-branch family"});
            }
            break;
    }
}

}  // namespace

std::string_view to_string(OutputKind kind) {
    switch (kind) {
        case OutputKind::ProbabilityMap: return "probability_map";
        case OutputKind::RateMap: return "rate_map";
        case OutputKind::KmsReport: return "kms_report";
        case OutputKind::VisibilityScan: return "visibility_scan";
    }
    return "unknown";
}

std::string_view to_string(Backend backend) {
    return backend == Backend::ClosedForm ? "closed_form" : "quadrature";
}

Grids Grids::defaults() {
    auto linspace = [](double a, double b, int n) {
        std::vector<double> v;
        for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / (n - 1));
        return v;
    };
    Grids g;
    g.omega_over_kappa = linspace(-2.0, 2.0, 20);
    g.kappa_tau = linspace(-4.0, 4.0, 20);
    g.L_over_sigma = linspace(0.0, 10.0, 20);
    g.kappa_sigma2_omega = linspace(0.1, 2.5, 20);
    g.delta_phi = linspace(0.0, 2.0 * std::numbers::pi, 20);
    return g;
}

std::string git_blob_hash(std::string_view content) {
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
    const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                    EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                    EVP_DigestFinal_ex(ctx, md, &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("SHA-1 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[md[k] >> 4];
        out += hex[md[k] & 15];
    }
    return out;
}

ConfigValidation validate_config(std::string_view raw) {
    ConfigValidation v;
    json root;
    try {
        root = json::parse(raw);
    } catch (const json::parse_error& e) {
        v.errors.push_back({"<root>", std::string("parse error: ") + e.what()});
        return v;
    }
    if (!root.is_object()) {
        v.errors.push_back({"<root>", "expected an object"});
        return v;
    }

    Reader r(v.errors);
    r.known_keys(root, "", {"scenario", "params", "grids", "quadrature", "regulator", "outputs"});

    ScenarioConfig cfg;
    cfg.raw = std::string(raw);
    cfg.hash = git_blob_hash(raw);
    cfg.grids = Grids::defaults();

    const json* js = r.object(root, "", "scenario");
    const json* jp = r.object(root, "", "params");
    const json* jg = r.object(root, "", "grids");
    if (js) read_scenario(r, *js, "scenario", cfg.scenario);
    if (jp) read_params(r, *jp, "params", cfg.params);
    if (jg) read_grids(r, *jg, "grids", cfg.grids);

    if (const json* jq = r.object(root, "", "quadrature")) {
        r.known_keys(*jq, "quadrature", {"s_max", "abs_tol", "rel_tol", "max_subdivisions", "oscillation_resolution"});
        auto& q = cfg.quadrature;
        r.number(*jq, "quadrature", "s_max", q.s_max);
        r.number(*jq, "quadrature", "abs_tol", q.abs_tol);
        r.number(*jq, "quadrature", "rel_tol", q.rel_tol);
        r.integer(*jq, "quadrature", "max_subdivisions", q.max_subdivisions);
        r.number(*jq, "quadrature", "oscillation_resolution", q.oscillation_resolution);
        try {
            q.validate();
        } catch (const InvalidArgument& e) {
            r.error("quadrature", e.what());
        }
    }

    if (const json* jr = r.object(root, "", "regulator")) {
        r.known_keys(*jr, "regulator", {"epsilons", "extrapolation"});
        auto& reg = cfg.regulator;
        if (jr->contains("epsilons")) {
            const json& e = jr->at("epsilons");
            if (!e.is_array()) {
                r.error("regulator.epsilons", "expected a list");
            } else {
                for (const auto& x : e) {
                    if (!x.is_number()) {
                        r.error("regulator.epsilons", "entries must be numbers");
                        reg.epsilons.clear();
                        break;
                    }
                    reg.epsilons.push_back(x.get<double>());
                }
            }
        }
        std::string mode;
        if (r.string(*jr, "regulator", "extrapolation", mode)) {
            try {
                reg.extrapolation = extrapolation_from_string(mode);
            } catch (const InvalidArgument& e) {
                r.error("regulator.extrapolation", e.what());
            }
        }
        try {
            reg.validate();
        } catch (const InvalidArgument& e) {
            r.error("regulator", e.what());
        }
    }

    if (!root.contains("outputs") || !root.at("outputs").is_array() || root.at("outputs").empty()) {
        r.error("outputs", "expected a nonempty list");
    } else {
        std::set<std::string> paths;
        const auto& outs = root.at("outputs");
        for (size_t k = 0; k < outs.size(); ++k) {
            const std::string path = "outputs[" + std::to_string(k) + "]";
            const json& jo = outs[k];
            if (!jo.is_object()) {
                r.error(path, "expected an object");
                continue;
            }
            r.known_keys(jo, path, {"kind", "path", "backend", "kms_tolerance", "json", "scenario", "params", "grids"});
            OutputSpec out;
            std::string kind;
            if (!r.string(jo, path, "kind", kind)) {
                if (!jo.contains("kind")) r.error(path + ".kind", "missing");
            } else if (auto parsed = kind_from_string(kind)) {
                out.kind = *parsed;
            } else {
                r.error(path + ".kind", "unknown output kind '" + kind + "'");
            }
            if (!r.string(jo, path, "path", out.path) || out.path.empty()) {
                r.error(path + ".path", "missing or empty");
            } else if (!paths.insert(out.path).second) {
                r.error(path + ".path", "duplicate output path '" + out.path + "'");
            }
            std::string backend;
            if (r.string(jo, path, "backend", backend)) {
                if (backend == "closed_form") {
                    out.backend = Backend::ClosedForm;
                } else if (backend == "quadrature") {
                    out.backend = Backend::Quadrature;
                } else {
                    r.error(path + ".backend", "expected \"closed_form\" or \"quadrature\"");
                }
            }
            r.number(jo, path, "kms_tolerance", out.kms_tolerance);
            if (!(out.kms_tolerance > 0.0)) r.error(path + ".kms_tolerance", "must be > 0");
            r.boolean(jo, path, "json", out.json_mirror);

            // Overrides are merge patches onto the top-level sections.
            auto merged = [&](const char* key) {
                json base = root.contains(key) && root.at(key).is_object() ? root.at(key) : json::object();
                if (jo.contains(key)) {
                    if (!jo.at(key).is_object()) {
                        r.error(path + "." + key, "expected an object");
                    } else {
                        base.merge_patch(jo.at(key));
                    }
                }
                return base;
            };
            const size_t before = v.errors.size();
            read_scenario(r, merged("scenario"), path + ".scenario", out.scenario);
            read_params(r, merged("params"), path + ".params", out.params);
            out.grids = Grids::defaults();
            read_grids(r, merged("grids"), path + ".grids", out.grids);
            const bool broken = v.errors.size() != before;
            // Errors in shared sections were already reported once.
            if (!jo.contains("scenario") && !jo.contains("params") && !jo.contains("grids")) {
                v.errors.resize(before);
            }
            if (!broken) check_output(out, path, v.errors, v.warnings);
            cfg.outputs.push_back(std::move(out));
        }
    }

    if (v.errors.empty()) v.config = std::move(cfg);
    return v;
}

}  // namespace udw
