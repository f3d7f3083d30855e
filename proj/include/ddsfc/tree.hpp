#ifndef DDSFC_TREE_HPP
#define DDSFC_TREE_HPP

#include <map>
#include <vector>

#include "ddsfc/pyramid.hpp"

namespace ddsfc {

/// Half-open box [lo, hi) in finest-resolution cell coordinates.
struct Box {
    Coord lo{0, 0, 0};
    Coord hi{1, 1, 1};

    std::size_t volume() const
    {
        std::size_t v = 1;
        for (int a = 0; a < 3; ++a) v *= static_cast<std::size_t>(hi[a] - lo[a]);
        return v;
    }
    bool contains(const Coord& c) const
    {
        for (int a = 0; a < 3; ++a)
            if (c[a] < lo[a] || c[a] >= hi[a]) return false;
        return true;
    }
    friend bool operator==(const Box&, const Box&) = default;
};

/// If the boxes share a face patch of positive area, returns the axis and
/// whether `b` lies on the max side of `a`.
inline std::optional<std::pair<int, bool>> box_face_contact(const Box& a, const Box& b)
{
    std::optional<std::pair<int, bool>> contact;
    for (int ax = 0; ax < 3; ++ax) {
        if (a.hi[ax] == b.lo[ax] || b.hi[ax] == a.lo[ax]) {
            if (contact) return std::nullopt;
            contact = std::make_pair(ax, a.hi[ax] == b.lo[ax]);
        } else if (std::min(a.hi[ax], b.hi[ax]) <= std::max(a.lo[ax], b.lo[ax])) {
            return std::nullopt;
        }
    }
    return contact;
}

struct TreeNode {
    int id = 0;
    int parent = -1;
    int level = 1;
    Coord cell{0, 0, 0}; // index within the level's grid
    Box box;
    double value = 0.0;
    std::vector<int> children;

    bool is_leaf() const { return children.empty(); }
};

/// Quadtree/octree forest whose top nodes are the cells of the coarsest
/// pyramid level. Leaves tile the domain.
class MultiscaleTree {
public:
    MultiscaleTree() = default;
    MultiscaleTree(Extent domain, int coarsest_level, std::vector<TreeNode> nodes, std::vector<int> roots)
        : domain_(domain), coarsest_(coarsest_level), nodes_(std::move(nodes)), roots_(std::move(roots))
    {
    }

    const Extent& domain() const { return domain_; }
    int coarsest_level() const { return coarsest_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    const std::vector<int>& roots() const { return roots_; }

    /// Extent of the level-k grid.
    Extent level_extent(int k) const
    {
        Extent e = domain_;
        for (int i = 1; i < k; ++i)
            for (int a = 0; a < e.rank; ++a) e.n[a] = (e.n[a] + 1) / 2;
        return e;
    }

    std::vector<int> leaves() const
    {
        std::vector<int> out;
        for (const auto& n : nodes_)
            if (n.is_leaf()) out.push_back(n.id);
        return out;
    }

    std::size_t leaf_count() const
    {
        std::size_t c = 0;
        for (const auto& n : nodes_) c += n.is_leaf() ? 1 : 0;
        return c;
    }

    /// Extent of the child grid of `id` (each axis 1 or 2).
    Extent child_grid(int id) const
    {
        const TreeNode& p = node(id);
        Extent e = domain_;
        e.n = {1, 1, 1};
        for (int c : p.children) {
            const Coord local = local_child_pos(p, node(c));
            for (int a = 0; a < 3; ++a) e.n[a] = std::max(e.n[a], local[a] + 1);
        }
        return e;
    }

    Coord local_child_pos(const TreeNode& parent, const TreeNode& child) const
    {
        return {child.cell[0] - 2 * parent.cell[0], child.cell[1] - 2 * parent.cell[1], child.cell[2] - 2 * parent.cell[2]};
    }

    /// Checks the structural invariants; throws DataError on violation.
    void validate() const
    {
        std::vector<char> covered(domain_.size(), 0);
        for (const auto& n : nodes_) {
            if (n.is_leaf()) {
                for (int z = n.box.lo[2]; z < n.box.hi[2]; ++z)
                    for (int y = n.box.lo[1]; y < n.box.hi[1]; ++y)
                        for (int x = n.box.lo[0]; x < n.box.hi[0]; ++x) {
                            const Coord c{x, y, z};
                            if (!domain_.contains(c)) throw DataError("leaf " + std::to_string(n.id) + " outside domain");
                            auto& slot = covered[domain_.index(c)];
                            if (slot) throw DataError("leaves overlap at " + to_string(c));
                            slot = 1;
                        }
            } else {
                std::size_t vol = 0;
                for (int c : n.children) {
                    const TreeNode& ch = node(c);
                    if (ch.parent != n.id || ch.level != n.level - 1)
                        throw DataError("inconsistent child " + std::to_string(c) + " of node " + std::to_string(n.id));
                    for (int a = 0; a < 3; ++a)
                        if (ch.box.lo[a] < n.box.lo[a] || ch.box.hi[a] > n.box.hi[a])
                            throw DataError("child box escapes parent " + std::to_string(n.id));
                    vol += ch.box.volume();
                }
                if (vol != n.box.volume()) throw DataError("children do not partition node " + std::to_string(n.id));
            }
        }
        for (char c : covered)
            if (!c) throw DataError("leaves do not tile the domain");
    }

private:
    Extent domain_;
    int coarsest_ = 1;
    std::vector<TreeNode> nodes_;
    std::vector<int> roots_;
};

/// Finest-resolution box of cell `cell` at level `level`, clipped to the domain.
inline Box level_cell_box(const Extent& domain, int level, const Coord& cell)
{
    const int s = 1 << (level - 1);
    Box b;
    for (int a = 0; a < 3; ++a) {
        if (a < domain.rank) {
            b.lo[a] = cell[a] * s;
            b.hi[a] = std::min((cell[a] + 1) * s, domain.n[a]);
        } else {
            b.lo[a] = 0;
            b.hi[a] = 1;
        }
    }
    return b;
}

struct BoxStats {
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and population variance of the field over a box (two-pass).
inline BoxStats box_stats(const ScalarField& f, const Box& b)
{
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const auto n = static_cast<double>(b.volume());
    for (int z = b.lo[2]; z < b.hi[2]; ++z)
        for (int y = b.lo[1]; y < b.hi[1]; ++y)
            for (int x = b.lo[0]; x < b.hi[0]; ++x) {
                const double v = f.at({x, y, z});
                sum += v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    BoxStats st;
    st.mean = sum / n;
    if (hi == lo) {
        st.mean = lo;
        return st;
    }
    double ss = 0.0;
    for (int z = b.lo[2]; z < b.hi[2]; ++z)
        for (int y = b.lo[1]; y < b.hi[1]; ++y)
            for (int x = b.lo[0]; x < b.hi[0]; ++x) {
                const double d = f.at({x, y, z}) - st.mean;
                ss += d * d;
            }
    st.variance = ss / n;
    return st;
}

namespace detail {

inline MultiscaleTree build_tree(const ValuePyramid& pyramid, double split_threshold, bool split_all)
{
    const ScalarField& fine = pyramid.finest();
    const Extent domain = fine.extent();
    const int top = pyramid.coarsest();
    std::vector<TreeNode> nodes;
    std::vector<int> roots;

    auto make = [&](int level, const Coord& cell, int parent) {
        TreeNode n;
        n.id = static_cast<int>(nodes.size());
        n.parent = parent;
        n.level = level;
        n.cell = cell;
        n.box = level_cell_box(domain, level, cell);
        nodes.push_back(n);
        return n.id;
    };

    std::vector<int> stack;
    const Extent top_extent = pyramid.level(top).extent();
    for (std::size_t i = 0; i < top_extent.size(); ++i) roots.push_back(make(top, top_extent.coord(i), -1));
    stack.assign(roots.rbegin(), roots.rend());

    while (!stack.empty()) {
        const int id = stack.back();
        stack.pop_back();
        const BoxStats st = box_stats(fine, nodes[static_cast<std::size_t>(id)].box);
        nodes[static_cast<std::size_t>(id)].value = st.mean;
        const int level = nodes[static_cast<std::size_t>(id)].level;
        if (level <= 1 || (!split_all && !(st.variance > split_threshold))) continue;

        const Extent child_extent = pyramid.level(level - 1).extent();
        const Coord cell = nodes[static_cast<std::size_t>(id)].cell;
        std::vector<int> kids;
        const int kz = domain.rank == 3 ? 2 : 1;
        for (int dz = 0; dz < kz; ++dz)
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) {
                    const Coord cc{2 * cell[0] + dx, 2 * cell[1] + dy, 2 * cell[2] + dz};
                    if (child_extent.contains(cc)) kids.push_back(make(level - 1, cc, id));
                }
        nodes[static_cast<std::size_t>(id)].children = kids;
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return MultiscaleTree(domain, top, std::move(nodes), std::move(roots));
}

} // namespace detail

/// Top-down split: a node splits iff the variance of its finest cells
/// exceeds `split_threshold` and its level is above 1.
inline MultiscaleTree build_multiscale_tree(const ValuePyramid& pyramid, double split_threshold)
{
    if (!(split_threshold >= 0.0)) throw DataError("split threshold must be >= 0");
    return detail::build_tree(pyramid, split_threshold, false);
}

/// Tree refined down to level 1 everywhere.
inline MultiscaleTree full_multiscale_tree(const ValuePyramid& pyramid) { return detail::build_tree(pyramid, 0.0, true); }

} // namespace ddsfc

#endif // DDSFC_TREE_HPP
