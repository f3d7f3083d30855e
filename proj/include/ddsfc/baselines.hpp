#ifndef DDSFC_BASELINES_HPP
#define DDSFC_BASELINES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ddsfc/field.hpp"

namespace ddsfc {

namespace detail {

/// Skilling's transpose-to-axes step: turns the transposed Hilbert index
/// held in `x` into axis coordinates, in place.
template <std::size_t N>
void hilbert_transpose_to_axes(std::array<std::uint32_t, N>& x, int bits)
{
    const std::uint32_t top = 2u << (bits - 1);
    std::uint32_t t = x[N - 1] >> 1;
    for (std::size_t i = N - 1; i > 0; --i) x[i] ^= x[i - 1];
    x[0] ^= t;
    for (std::uint32_t q = 2; q != top; q <<= 1) {
        const std::uint32_t p = q - 1;
        for (std::size_t i = N; i-- > 0;) {
            if (x[i] & q) {
                x[0] ^= p;
            } else {
                t = (x[0] ^ x[i]) & p;
                x[0] ^= t;
                x[i] ^= t;
            }
        }
    }
}

template <std::size_t N>
std::array<std::uint32_t, N> hilbert_point(std::uint64_t index, int bits)
{
    std::array<std::uint32_t, N> x{};
    // Index bits from most significant: x[0] bit b-1, x[1] bit b-1, ...
    for (int j = bits - 1; j >= 0; --j)
        for (std::size_t i = 0; i < N; ++i) {
            const auto bit = static_cast<unsigned>(j) * N + (N - 1 - i);
            x[i] |= static_cast<std::uint32_t>((index >> bit) & 1u) << j;
        }
    if (bits > 0) hilbert_transpose_to_axes(x, bits);
    return x;
}

template <std::size_t N>
std::vector<Coord> hilbert_coords(int side)
{
    int bits = 0;
    while ((1 << bits) < side) ++bits;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < N; ++i) count *= static_cast<std::uint64_t>(side);
    std::vector<Coord> raw;
    raw.reserve(count);
    for (std::uint64_t d = 0; d < count; ++d) {
        const auto p = hilbert_point<N>(d, bits);
        Coord c{0, 0, 0};
        // Skilling's x[0] is the most significant axis; store it last.
        for (std::size_t i = 0; i < N; ++i) c[N - 1 - i] = static_cast<int>(p[i]);
        raw.push_back(c);
    }
    if (raw.size() < 2) return raw;
    // Frozen orientation: the curve ends at the far corner of the x axis;
    // in 3D the first step's axis, if different, becomes y.
    auto axis_of = [](const Coord& c) {
        for (int a = 0; a < 3; ++a)
            if (c[a] != 0) return a;
        return 0;
    };
    const int end_axis = axis_of(raw.back());
    const int first_axis = axis_of(raw[1]);
    std::vector<int> order{end_axis};
    if (first_axis != end_axis) order.push_back(first_axis);
    for (int a = 0; a < 3; ++a)
        if (std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
    for (auto& c : raw) c = {c[order[0]], c[order[1]], c[order[2]]};
    return raw;
}

inline std::uint64_t spread_bits(std::uint32_t v, int stride)
{
    std::uint64_t out = 0;
    for (int b = 0; b < 21; ++b) out |= static_cast<std::uint64_t>((v >> b) & 1u) << (b * stride);
    return out;
}

} // namespace detail

/// Peano-Hilbert curve on a square/cube with power-of-two side, running from
/// the origin to (side-1, 0[, 0]). Order-1 curves step toward +y first.
inline Curve hilbert_curve(const Extent& dims)
{
    const int side = dims.n[0];
    for (int a = 0; a < dims.rank; ++a)
        if (dims.n[a] != side) throw DataError("hilbert needs equal dims, got " + dims.str());
    if (!is_power_of_two(side)) throw DataError("hilbert needs power-of-two dims, got " + dims.str());
    const auto coords = dims.rank == 2 ? detail::hilbert_coords<2>(side) : detail::hilbert_coords<3>(side);
    return Curve::from_coords(dims, coords);
}

inline std::uint64_t morton_code(const Coord& c, int rank)
{
    std::uint64_t code = 0;
    for (int a = 0; a < rank; ++a) code |= detail::spread_bits(static_cast<std::uint32_t>(c[a]), rank) << a;
    return code;
}

/// Bit-interleaved (Z-order) curve, x in the least significant position.
inline Curve morton_curve(const Extent& dims)
{
    for (int a = 0; a < dims.rank; ++a)
        if (!is_power_of_two(dims.n[a])) throw DataError("morton needs power-of-two dims, got " + dims.str());
    std::vector<std::pair<std::uint64_t, Coord>> keyed;
    keyed.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const Coord c = dims.coord(i);
        keyed.emplace_back(morton_code(c, dims.rank), c);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Coord> coords;
    coords.reserve(keyed.size());
    for (const auto& kc : keyed) coords.push_back(kc.second);
    return Curve::from_coords(dims, coords);
}

/// Row-major order: x fastest, then y, then z.
inline Curve scanline_curve(const Extent& dims)
{
    std::vector<Coord> coords;
    coords.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) coords.push_back(dims.coord(i));
    return Curve::from_coords(dims, coords);
}

} // namespace ddsfc

#endif // DDSFC_BASELINES_HPP
