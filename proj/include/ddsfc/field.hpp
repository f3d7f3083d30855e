#ifndef DDSFC_FIELD_HPP
#define DDSFC_FIELD_HPP

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "ddsfc/types.hpp"

namespace ddsfc {

/// Dense 2D/3D array of samples, row-major (x fastest).
class ScalarField {
public:
    ScalarField() = default;

    ScalarField(Extent extent, std::vector<double> values) : extent_(extent), values_(std::move(values))
    {
        for (int a = 0; a < 3; ++a)
            if (extent_.n[a] < 1) throw DataError("dims entries must be >= 1");
        if (values_.size() != extent_.size())
            throw DataError("size mismatch: dims " + extent_.str() + " need " + std::to_string(extent_.size()) +
                            " values, got " + std::to_string(values_.size()));
        update_range();
    }

    static ScalarField filled(Extent extent, double v) { return ScalarField(extent, std::vector<double>(extent.size(), v)); }

    const Extent& extent() const { return extent_; }
    int rank() const { return extent_.rank; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    double at(const Coord& c) const { return values_[extent_.index(c)]; }
    double operator[](std::size_t i) const { return values_[i]; }

    std::pair<double, double> value_range() const { return range_; }

private:
    void update_range()
    {
        range_ = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (double v : values_) {
            range_.first = std::min(range_.first, v);
            range_.second = std::max(range_.second, v);
        }
        if (values_.empty()) range_ = {0.0, 0.0};
    }

    Extent extent_;
    std::vector<double> values_;
    std::pair<double, double> range_{0.0, 0.0};
};

/// Affinely maps values onto [0,1]; a constant field maps to all zeros.
inline ScalarField normalize_values(const ScalarField& field)
{
    for (double v : field.values())
        if (!std::isfinite(v)) throw DataError("non-finite sample in field");
    auto [lo, hi] = field.value_range();
    std::vector<double> out(field.size(), 0.0);
    if (hi > lo) {
        const double span = hi - lo;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (field[i] - lo) / span;
    }
    return ScalarField(field.extent(), std::move(out));
}

inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline int next_power_of_two(int v)
{
    int p = 1;
    while (p < v) p <<= 1;
    return p;
}

/// Zero-pads `field` to the smallest cube (square in 2D) with power-of-two
/// side containing it. Existing samples keep their coordinates.
inline ScalarField pad_to_pow2_cube(const ScalarField& field)
{
    const Extent& e = field.extent();
    int side = 1;
    for (int a = 0; a < e.rank; ++a) side = std::max(side, next_power_of_two(e.n[a]));
    Extent padded = e.rank == 2 ? Extent(side, side) : Extent(side, side, side);
    if (padded == e) return field;
    std::vector<double> out(padded.size(), 0.0);
    for (std::size_t i = 0; i < field.size(); ++i) out[padded.index(e.coord(i))] = field[i];
    return ScalarField(padded, std::move(out));
}

} // namespace ddsfc

#endif // DDSFC_FIELD_HPP
