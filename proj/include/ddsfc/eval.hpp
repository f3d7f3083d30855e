#ifndef DDSFC_EVAL_HPP
#define DDSFC_EVAL_HPP

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddsfc/tree.hpp"

namespace ddsfc {

/// Values read along a curve, u(i) = s(P(i)), and the distance of each step
/// to the origin, t(i). `radial` is empty for multiscale curves.
struct LinearizedSeries {
    std::vector<double> values;
    std::vector<double> radial;
    bool has_radial = true;
    std::string method;
    std::string dataset;
};

/// Reads `field` along `curve`. Multiscale steps take the mean of the
/// finest cells under their leaf box.
inline LinearizedSeries linearize(const ScalarField& field, const Curve& curve, std::string method = {},
                                  std::string dataset = {})
{
    if (curve.domain() != field.extent())
        throw DataError("curve domain " + curve.domain().str() + " does not match field " + field.extent().str());
    LinearizedSeries s;
    s.method = std::move(method);
    s.dataset = std::move(dataset);
    s.has_radial = !curve.multiscale();
    s.values.reserve(curve.size());
    std::size_t covered = 0;
    for (const auto& step : curve.steps()) {
        if (!field.extent().contains(step.coord)) throw DataError("curve step " + to_string(step.coord) + " outside field");
        if (!curve.multiscale()) {
            s.values.push_back(field.at(step.coord));
            const double x = step.coord[0], y = step.coord[1], z = step.coord[2];
            s.radial.push_back(std::sqrt(x * x + y * y + z * z));
            ++covered;
            continue;
        }
        const int scale = 1 << (step.level - 1);
        Coord cell = step.coord;
        for (int a = 0; a < field.rank(); ++a) cell[a] /= scale;
        const Box box = level_cell_box(field.extent(), step.level, cell);
        s.values.push_back(box_stats(field, box).mean);
        covered += box.volume();
    }
    if (covered != field.size())
        throw DataError("curve covers " + std::to_string(covered) + " of " + std::to_string(field.size()) + " cells");
    return s;
}

/// r(k) = sum_i (x_i - m)(x_{i+k} - m) / sum_i (x_i - m)^2 for k = 0..max_lag.
/// A negative `max_lag` selects length / 2.
inline std::vector<double> normalized_autocorrelation(const std::vector<double>& x, int max_lag = -1)
{
    const std::size_t n = x.size();
    if (n < 2) throw DataError("autocorrelation needs at least 2 samples");
    if (max_lag < 0) max_lag = static_cast<int>(n / 2);
    if (static_cast<std::size_t>(max_lag) >= n)
        throw UsageError("max lag " + std::to_string(max_lag) + " must be below series length " + std::to_string(n));
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> d(n);
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = x[i] - mean;
        denom += d[i] * d[i];
    }
    if (!(denom > 0.0)) throw DataError("autocorrelation undefined for a zero-variance series");
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1);
    for (std::size_t k = 0; k < r.size(); ++k) {
        double num = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) num += d[i] * d[i + k];
        r[k] = k == 0 ? 1.0 : num / denom;
    }
    return r;
}

/// Mean of r(k) over lags first..last inclusive.
inline double mean_over_lags(const std::vector<double>& r, std::size_t first, std::size_t last)
{
    if (first > last || last >= r.size()) throw UsageError("lag window outside autocorrelation range");
    double s = 0.0;
    for (std::size_t k = first; k <= last; ++k) s += r[k];
    return s / static_cast<double>(last - first + 1);
}

} // namespace ddsfc

#endif // DDSFC_EVAL_HPP
