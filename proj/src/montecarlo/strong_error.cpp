#include <cmath>
#include <stdexcept>

#include "stochsym/montecarlo/montecarlo.hpp"

namespace stochsym::montecarlo {

namespace {

std::size_t dyadic_stride(std::size_t fine, std::size_t coarse) {
    if (coarse == 0 || fine % coarse != 0) throw std::invalid_argument("grid mismatch between reference and approximation");
    std::size_t r = fine / coarse;
    if ((r & (r - 1)) != 0) throw std::invalid_argument("grids are not dyadic refinements of each other");
    return r;
}

}  // namespace

StrongError strong_error(const std::vector<std::vector<double>>& reference,
                         const std::vector<std::vector<double>>& approx) {
    if (reference.size() != approx.size()) throw std::invalid_argument("path counts differ");
    // full length = longest path; truncated paths are excluded
    std::size_t ref_len = 0, app_len = 0;
    for (const auto& r : reference) ref_len = std::max(ref_len, r.size());
    for (const auto& a : approx) app_len = std::max(app_len, a.size());
    if (ref_len < 2 || app_len < 2) throw std::invalid_argument("paths need at least two grid points");
    bool ref_fine = ref_len >= app_len;
    std::size_t stride = ref_fine ? dyadic_stride(ref_len - 1, app_len - 1) : dyadic_stride(app_len - 1, ref_len - 1);

    StrongError out;
    std::vector<double> per_path;
    for (std::size_t p = 0; p < reference.size(); ++p) {
        const auto& r = reference[p];
        const auto& a = approx[p];
        if (r.size() != ref_len || a.size() != app_len) {
            ++out.paths_excluded;
            continue;
        }
        double m = 0;
        std::size_t n = ref_fine ? app_len : ref_len;
        for (std::size_t i = 0; i < n; ++i) {
            double rv = ref_fine ? r[i * stride] : r[i];
            double av = ref_fine ? a[i] : a[i * stride];
            m = std::max(m, std::fabs(rv - av));
        }
        per_path.push_back(m);
    }
    out.paths_used = static_cast<int>(per_path.size());
    if (per_path.empty()) return out;
    double sum = 0;
    for (double v : per_path) sum += v;
    out.mean_max_error = sum / per_path.size();
    double ss = 0;
    for (double v : per_path) ss += (v - out.mean_max_error) * (v - out.mean_max_error);
    if (per_path.size() > 1) out.std_error = std::sqrt(ss / (per_path.size() - 1) / per_path.size());
    return out;
}

double order_estimate(const std::vector<double>& h, const std::vector<double>& errors) {
    if (h.size() != errors.size() || h.size() < 2) throw std::invalid_argument("need at least two levels");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    auto n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        double lx = std::log2(h[i]);
        double ly = std::log2(errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

nlohmann::json to_json(const ConvergenceTable& t) {
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t i = 0; i < t.h.size(); ++i) levels.push_back({{"h", t.h[i]}, {"strong_error", t.errors[i]}});
    return {{"n_paths", t.n_paths}, {"levels", levels}, {"order_estimate", t.order_estimate}};
}

}  // namespace stochsym::montecarlo
