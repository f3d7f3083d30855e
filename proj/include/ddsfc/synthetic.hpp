#ifndef DDSFC_SYNTHETIC_HPP
#define DDSFC_SYNTHETIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ddsfc/field.hpp"

namespace ddsfc::synthetic {

namespace detail {

/// Uniform double in [0,1) with a bit-exact mapping from the engine output,
/// so generated data does not depend on the standard library's distributions.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace detail

/// Randomly placed disks on a zero background; each disk's value falls off
/// quadratically from a random peak at its center.
inline ScalarField disks2d(int side = 64, int count = 5, std::uint64_t seed = 5)
{
    std::mt19937_64 rng(seed);
    const Extent e(side, side);
    std::vector<double> v(e.size(), 0.0);
    for (int k = 0; k < count; ++k) {
        const double r = side * (0.08 + 0.10 * detail::unit(rng));
        const double cx = r + (side - 2 * r) * detail::unit(rng);
        const double cy = r + (side - 2 * r) * detail::unit(rng);
        const double peak = 0.5 + 0.5 * detail::unit(rng);
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x) {
                const double d = std::hypot(x - cx, y - cy) / r;
                if (d < 1.0) {
                    auto& cell = v[e.index({x, y, 0})];
                    cell = std::max(cell, peak * (1.0 - d * d));
                }
            }
    }
    return ScalarField(e, std::move(v));
}

/// Centered sphere whose value rises linearly from its surface to its center.
inline ScalarField sphere3d(int side = 16, double radius_fraction = 0.4)
{
    const Extent e(side, side, side);
    const double c = 0.5 * (side - 1);
    const double r = radius_fraction * side;
    std::vector<double> v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Coord p = e.coord(i);
        const double d = std::sqrt((p[0] - c) * (p[0] - c) + (p[1] - c) * (p[1] - c) + (p[2] - c) * (p[2] - c));
        v[i] = std::max(0.0, 1.0 - d / r);
    }
    return ScalarField(e, std::move(v));
}

/// Two Gaussian bumps of different height in opposite corners.
inline ScalarField two_blob(int side = 8)
{
    const Extent e(side, side);
    std::vector<double> v(e.size());
    const double s = 0.18 * side;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Coord p = e.coord(i);
        const double a0 = 0.25 * side - 0.5, a1 = 0.75 * side - 0.5;
        const double g1 = std::exp(-((p[0] - a0) * (p[0] - a0) + (p[1] - a0) * (p[1] - a0)) / (2 * s * s));
        const double g2 = std::exp(-((p[0] - a1) * (p[0] - a1) + (p[1] - a1) * (p[1] - a1)) / (2 * s * s));
        v[i] = g1 + 0.6 * g2;
    }
    return ScalarField(e, std::move(v));
}

/// Tangle cube x^4 - 5x^2 + y^4 - 5y^2 + z^4 - 5z^2 + 11.8 sampled on [-2.5, 2.5]^3.
inline ScalarField tangle3d(int side = 32)
{
    const Extent e(side, side, side);
    std::vector<double> v(e.size());
    auto q = [](double t) { return t * t * t * t - 5.0 * t * t; };
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Coord p = e.coord(i);
        auto m = [&](int c) { return side == 1 ? 0.0 : -2.5 + 5.0 * c / (side - 1); };
        v[i] = q(m(p[0])) + q(m(p[1])) + q(m(p[2])) + 11.8;
    }
    return ScalarField(e, std::move(v));
}

/// Independent uniform samples in [0,1).
inline ScalarField uniform_noise(const Extent& e, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<double> v(e.size());
    for (auto& x : v) x = detail::unit(rng);
    return ScalarField(e, std::move(v));
}

/// Builds a named dataset: disks2d, sphere3d, two_blob, tangle3d.
inline ScalarField by_name(const std::string& name, int side, std::uint64_t seed)
{
    if (name == "disks2d") return disks2d(side, 5, seed);
    if (name == "sphere3d") return sphere3d(side);
    if (name == "two_blob") return two_blob(side);
    if (name == "tangle3d") return tangle3d(side);
    throw UsageError("unknown synthetic dataset '" + name + "' (valid: disks2d, sphere3d, two_blob, tangle3d)");
}

} // namespace ddsfc::synthetic

#endif // DDSFC_SYNTHETIC_HPP
