#include "udw/quadrature.hpp"

#include <numbers>

namespace udw {

void QuadratureConfig::validate() const {
    if (!(s_max >= 0.0) || !std::isfinite(s_max)) throw InvalidArgument("quadrature.s_max must be >= 0");
    if (!(abs_tol > 0.0)) throw InvalidArgument("quadrature.abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw InvalidArgument("quadrature.rel_tol must be > 0");
    if (max_subdivisions < 1) throw InvalidArgument("quadrature.max_subdivisions must be >= 1");
    if (!(oscillation_resolution >= 8.0)) {
        throw InvalidArgument("quadrature.oscillation_resolution must be >= 8");
    }
}

std::vector<double> normalize_breakpoints(std::vector<double> points, double a, double b) {
    std::vector<double> out;
    out.reserve(points.size() + 2);
    out.push_back(a);
    for (double x : points) {
        if (std::isfinite(x) && x > a && x < b) out.push_back(x);
    }
    out.push_back(b);
    std::sort(out.begin(), out.end());
    const double tiny = 1e-14 * std::max(1.0, b - a);
    std::vector<double> merged;
    merged.reserve(out.size());
    for (double x : out) {
        if (merged.empty() || x - merged.back() > tiny) merged.push_back(x);
    }
    merged.back() = b;
    return merged;
}

void add_graded_points(std::vector<double>& points, double centre, double h, double reach,
                       double ratio) {
    if (!(h > 0.0)) return;
    points.push_back(centre);
    for (double d = h; d < reach; d *= ratio) {
        points.push_back(centre - d);
        points.push_back(centre + d);
    }
}

void add_oscillation_mesh(std::vector<double>& points, double a, double b, double omega,
                          double resolution) {
    if (omega == 0.0 || !(b > a)) return;
    const double width = 2.0 * std::numbers::pi / std::abs(omega) / resolution;
    const auto n = static_cast<long>(std::ceil((b - a) / width));
    for (long k = 1; k < n; ++k) points.push_back(a + (b - a) * static_cast<double>(k) / n);
}

}  // namespace udw
