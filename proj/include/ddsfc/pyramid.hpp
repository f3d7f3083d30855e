#ifndef DDSFC_PYRAMID_HPP
#define DDSFC_PYRAMID_HPP

#include <vector>

#include "ddsfc/field.hpp"

namespace ddsfc {

/// Image/volume pyramid. `level(1)` is the input field, `level(coarsest())`
/// the coarsest; every coarser level halves each active axis, rounding up.
class ValuePyramid {
public:
    ValuePyramid() = default;
    explicit ValuePyramid(std::vector<ScalarField> levels) : levels_(std::move(levels)) {}

    int coarsest() const { return static_cast<int>(levels_.size()); }
    const ScalarField& level(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }
    const ScalarField& finest() const { return levels_.front(); }
    const Extent& domain() const { return levels_.front().extent(); }

private:
    std::vector<ScalarField> levels_;
};

/// Number of levels a field of this extent supports (halving stops once any
/// active axis reaches 1).
inline int max_pyramid_levels(const Extent& e)
{
    int levels = 1;
    Extent cur = e;
    for (;;) {
        for (int a = 0; a < cur.rank; ++a)
            if (cur.n[a] < 2) return levels;
        for (int a = 0; a < cur.rank; ++a) cur.n[a] = (cur.n[a] + 1) / 2;
        ++levels;
    }
}

/// Halves each active axis, averaging the 2^rank children of each cell.
/// Odd extents are padded by replicating the last row/column/slab.
inline ScalarField downsample_mean(const ScalarField& fine)
{
    const Extent& fe = fine.extent();
    Extent ce = fe;
    for (int a = 0; a < fe.rank; ++a) ce.n[a] = (fe.n[a] + 1) / 2;
    const int kz = fe.rank == 3 ? 2 : 1;
    const double inv = 1.0 / static_cast<double>(4 * kz);
    std::vector<double> out(ce.size(), 0.0);
    for (std::size_t i = 0; i < ce.size(); ++i) {
        const Coord c = ce.coord(i);
        double sum = 0.0;
        for (int dz = 0; dz < kz; ++dz)
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) {
                    Coord f{std::min(2 * c[0] + dx, fe.n[0] - 1), std::min(2 * c[1] + dy, fe.n[1] - 1),
                            std::min(2 * c[2] + dz, fe.n[2] - 1)};
                    sum += fine.at(f);
                }
        out[i] = sum * inv;
    }
    return ScalarField(ce, std::move(out));
}

inline ValuePyramid build_pyramid(const ScalarField& field, int levels)
{
    if (levels < 1) throw DataError("pyramid needs at least one level");
    const int available = max_pyramid_levels(field.extent());
    if (levels > available)
        throw DataError("L_c=" + std::to_string(levels) + " too large for dims " + field.extent().str() + " (max " +
                        std::to_string(available) + ")");
    std::vector<ScalarField> out;
    out.reserve(static_cast<std::size_t>(levels));
    out.push_back(field);
    for (int k = 2; k <= levels; ++k) out.push_back(downsample_mean(out.back()));
    return ValuePyramid(std::move(out));
}

} // namespace ddsfc

#endif // DDSFC_PYRAMID_HPP
