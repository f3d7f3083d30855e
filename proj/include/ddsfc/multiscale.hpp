#ifndef DDSFC_MULTISCALE_HPP
#define DDSFC_MULTISCALE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ddsfc/hampath.hpp"
#include "ddsfc/regular3d.hpp"

namespace ddsfc {

inline constexpr int kNoLeaf = -1;

struct MultiscaleOptions {
    double alpha = kDefaultAlpha;
    std::array<int, 2> block2d = kDefaultBlock2d;
    std::array<int, 3> block3d = kDefaultBlock3d;
    std::uint64_t seed = 0;
    HamPathOptions hampath{};
};

/// Counters for the robustness fallbacks taken while refining.
struct MultiscaleStats {
    std::size_t face_fallbacks = 0;  // solved with an exit face other than the requested one
    std::size_t entry_fallbacks = 0; // solved from an entry other than the best one
    std::size_t detached_entries = 0; // no child touched the previous leaf
};

/// Number of pyramid levels for which every level-k cell is a full
/// 2^(k-1) block, i.e. the largest L with 2^(L-1) dividing every dim.
inline int aligned_pyramid_levels(const Extent& e)
{
    int levels = 1;
    for (;;) {
        const int s = 1 << levels;
        for (int a = 0; a < e.rank; ++a)
            if (e.n[a] % s != 0) return levels;
        ++levels;
    }
}

/// Curve over the coarsest pyramid level: the regular-grid data-driven
/// method when every dim is even, otherwise the minimum-cost Hamiltonian
/// path from the origin over all exit faces. Steps carry the coarsest level.
inline Curve find_top_level_sfc(const ValuePyramid& pyramid, const MultiscaleOptions& opt = {})
{
    const int top = pyramid.coarsest();
    const ScalarField& f = pyramid.level(top);
    const Extent& e = f.extent();
    std::vector<Coord> coords;
    if (e.size() == 1) {
        coords.push_back({0, 0, 0});
    } else {
        bool even = true;
        for (int a = 0; a < e.rank; ++a) even = even && e.n[a] >= 2 && e.n[a] % 2 == 0;
        if (even) {
            coords = e.rank == 2 ? dd_sfc_2d(f, opt.alpha, opt.block2d).coords()
                                 : dd_sfc_3d(f, opt.alpha, opt.block3d, opt.seed).coords();
        } else {
            const ScalarField norm = normalize_values(f);
            std::optional<HamPathResult> best;
            for (Face face : faces_for_rank(e.rank)) {
                try {
                    auto r = partitioned_hampath({e, norm.values(), {0, 0, 0}, face}, opt.hampath);
                    if (!best || r.cost < best->cost) best = std::move(r);
                } catch (const DataError&) {
                }
            }
            if (!best) throw DataError("no Hamiltonian path over the coarsest level " + e.str());
            coords = best->curve.coords();
        }
    }
    std::vector<Step> steps;
    for (const auto& c : coords) steps.push_back({c, top});
    return Curve(e, std::move(steps));
}

namespace detail {

/// Gap between two boxes (sum over axes of the separation), 0 if touching.
inline int box_gap(const Box& a, const Box& b)
{
    int g = 0;
    for (int ax = 0; ax < 3; ++ax) g += std::max({0, a.lo[ax] - b.hi[ax], b.lo[ax] - a.hi[ax]});
    return g;
}

/// Entry candidates among a block's children (or the block itself when it
/// is a leaf), best first. With `relaxed`, children not touching the last
/// leaf are ranked after touching ones by distance.
inline std::vector<int> entry_candidates(const MultiscaleTree& tree, int block, int last_leaf, bool relaxed)
{
    const TreeNode& b = tree.node(block);
    std::vector<int> pool = b.is_leaf() ? std::vector<int>{block} : b.children;
    auto lex = [&](int x, int y) { return tree.node(x).box.lo < tree.node(y).box.lo; };
    if (last_leaf == kNoLeaf) {
        std::sort(pool.begin(), pool.end(), lex);
        return pool;
    }
    const TreeNode& last = tree.node(last_leaf);
    struct Key {
        int gap;
        double diff;
        Coord lo;
        int id;
    };
    std::vector<Key> keys;
    for (int c : pool) {
        const TreeNode& n = tree.node(c);
        const bool touching = box_face_contact(last.box, n.box).has_value();
        if (!touching && !relaxed) continue;
        keys.push_back({touching ? 0 : 1 + box_gap(last.box, n.box), std::abs(n.value - last.value), n.box.lo, c});
    }
    std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
        if (x.gap != y.gap) return x.gap < y.gap;
        if (x.diff != y.diff) return x.diff < y.diff;
        return x.lo < y.lo;
    });
    std::vector<int> out;
    for (const auto& k : keys) out.push_back(k.id);
    return out;
}

} // namespace detail

/// Child of `block` (the block itself for a leaf) that touches the last
/// visited leaf through a face and has the closest value to it; ties go to
/// the lexicographically smallest box. With no previous leaf, the
/// lexicographically smallest child is returned.
inline int find_best_entry(const MultiscaleTree& tree, int block, int last_leaf)
{
    const auto c = detail::entry_candidates(tree, block, last_leaf, false);
    if (c.empty()) throw DataError("block " + std::to_string(block) + " not adjacent to leaf " + std::to_string(last_leaf));
    return c.front();
}

class MultiscaleRefiner {
public:
    MultiscaleRefiner(const MultiscaleTree& tree, const MultiscaleOptions& opt, MultiscaleStats* stats)
        : tree_(tree), opt_(opt), stats_(stats ? stats : &local_)
    {
    }

    int last_leaf() const { return last_; }
    void set_last_leaf(int id) { last_ = id; }

    /// Appends the leaves under `block` in curve order. `exit` is the face
    /// toward the block's successor; nullopt leaves it free.
    void refine(int block, std::optional<Face> exit, std::vector<Step>& out)
    {
        const TreeNode& b = tree_.node(block);
        if (b.is_leaf()) {
            out.push_back({b.box.lo, b.level});
            last_ = block;
            return;
        }
        const auto order = order_children(block, exit);
        for (std::size_t k = 0; k < order.size(); ++k) {
            std::optional<Face> child_exit = exit;
            if (k + 1 < order.size()) child_exit = face_toward(tree_.node(order[k]), tree_.node(order[k + 1]));
            refine(order[k], child_exit, out);
        }
    }

private:
    static Face face_toward(const TreeNode& a, const TreeNode& b)
    {
        for (int ax = 0; ax < 3; ++ax)
            if (a.cell[ax] != b.cell[ax]) return make_face(ax, b.cell[ax] > a.cell[ax]);
        throw DataError("consecutive blocks coincide");
    }

    /// Hamiltonian path over the child grid of `block`.
    std::vector<int> order_children(int block, std::optional<Face> exit)
    {
        const TreeNode& b = tree_.node(block);
        const Extent grid = tree_.child_grid(block);
        std::vector<int> at(grid.size(), -1);
        std::vector<double> values(grid.size(), 0.0);
        for (int c : b.children) {
            const auto i = grid.index(tree_.local_child_pos(b, tree_.node(c)));
            at[i] = c;
            values[i] = tree_.node(c).value;
        }
        if (std::find(at.begin(), at.end(), -1) != at.end()) throw DataError("children of node " + std::to_string(block) + " do not fill their grid");

        auto entries = detail::entry_candidates(tree_, block, last_, false);
        if (entries.empty()) {
            ++stats_->detached_entries;
            entries = detail::entry_candidates(tree_, block, last_, true);
        }
        std::vector<Face> faces;
        if (exit) faces.push_back(*exit);
        for (Face f : faces_for_rank(grid.rank))
            if (!exit || f != *exit) faces.push_back(f);

        for (std::size_t ei = 0; ei < entries.size(); ++ei) {
            const Coord entry = tree_.local_child_pos(b, tree_.node(entries[ei]));
            std::optional<HamPathResult> best;
            std::size_t best_face = 0;
            for (std::size_t fi = 0; fi < faces.size(); ++fi) {
                std::optional<HamPathResult> r;
                try {
                    r = partitioned_hampath({grid, values, entry, faces[fi]}, opt_.hampath);
                } catch (const DataError&) {
                    continue;
                }
                if (!best || r->cost < best->cost) {
                    best = std::move(r);
                    best_face = fi;
                }
                if (exit) break; // requested face first, fallbacks in order
            }
            if (!best) continue;
            if (ei > 0) ++stats_->entry_fallbacks;
            if (exit && best_face > 0) ++stats_->face_fallbacks;
            std::vector<int> order;
            for (const auto& s : best->curve.steps()) order.push_back(at[grid.index(s.coord)]);
            return order;
        }
        throw DataError("no Hamiltonian path through the children of node " + std::to_string(block));
    }

    const MultiscaleTree& tree_;
    MultiscaleOptions opt_;
    MultiscaleStats local_;
    MultiscaleStats* stats_;
    int last_ = kNoLeaf;
};

/// Leaves under `block` in curve order, entering next to `last_leaf`
/// (kNoLeaf at the start) and leaving through `exit` when possible.
inline std::vector<Step> refine(const MultiscaleTree& tree, int block, int last_leaf, std::optional<Face> exit = std::nullopt,
                                const MultiscaleOptions& opt = {})
{
    MultiscaleRefiner r(tree, opt, nullptr);
    r.set_last_leaf(last_leaf);
    std::vector<Step> out;
    r.refine(block, exit, out);
    return out;
}

/// Data-driven curve over the leaves of a multiscale tree: a curve over the
/// coarsest level, each top block refined in order with the last visited
/// leaf threaded between blocks. Steps are (leaf box anchor, leaf level).
inline Curve sfc_multiscale(const ValuePyramid& pyramid, const MultiscaleTree& tree, const MultiscaleOptions& opt = {},
                            MultiscaleStats* stats = nullptr)
{
    if (pyramid.domain() != tree.domain()) throw DataError("tree domain does not match pyramid");
    if (pyramid.coarsest() != tree.coarsest_level()) throw DataError("tree and pyramid disagree on the coarsest level");
    const Curve top = find_top_level_sfc(pyramid, opt);
    const Extent top_extent = tree.level_extent(tree.coarsest_level());
    if (top_extent.size() != tree.roots().size()) throw DataError("tree roots do not cover the coarsest level");
    std::vector<int> root_at(top_extent.size(), -1);
    for (int r : tree.roots()) root_at[top_extent.index(tree.node(r).cell)] = r;

    MultiscaleRefiner refiner(tree, opt, stats);
    std::vector<Step> steps;
    steps.reserve(tree.leaf_count());
    for (std::size_t i = 0; i < top.size(); ++i) {
        const int block = root_at[top_extent.index(top[i].coord)];
        std::optional<Face> exit;
        if (i + 1 < top.size()) {
            const Coord d = top[i + 1].coord - top[i].coord;
            for (int a = 0; a < 3; ++a)
                if (d[a] != 0) exit = make_face(a, d[a] > 0);
        }
        refiner.refine(block, exit, steps);
    }
    return Curve(tree.domain(), std::move(steps), true);
}

/// Finest-resolution box of the leaf behind a multiscale step.
inline Box step_box(const Extent& domain, const Step& s)
{
    const int scale = 1 << (s.level - 1);
    Coord cell = s.coord;
    for (int a = 0; a < domain.rank; ++a) cell[a] /= scale;
    return level_cell_box(domain, s.level, cell);
}

/// Paints each step's rank over the finest cells its leaf covers.
inline std::vector<std::int64_t> reconstruct_to_grid(const Curve& curve, const MultiscaleTree& tree)
{
    const Extent& d = tree.domain();
    if (curve.domain() != d) throw DataError("curve domain does not match tree");
    std::vector<std::int64_t> rank(d.size(), -1);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Box b = step_box(d, curve[i]);
        for (int z = b.lo[2]; z < b.hi[2]; ++z)
            for (int y = b.lo[1]; y < b.hi[1]; ++y)
                for (int x = b.lo[0]; x < b.hi[0]; ++x) {
                    auto& slot = rank[d.index({x, y, z})];
                    if (slot != -1) throw DataError("cell " + to_string({x, y, z}) + " covered twice");
                    slot = static_cast<std::int64_t>(i);
                }
    }
    for (std::size_t i = 0; i < rank.size(); ++i)
        if (rank[i] == -1) throw DataError("uncovered cell " + to_string(d.coord(i)));
    return rank;
}

} // namespace ddsfc

#endif // DDSFC_MULTISCALE_HPP
