// Independent reference implementations used by the unit tests and the
// acceptance runner. None of these call into the solver code they check.

#ifndef DDSFC_TESTS_ORACLES_HPP
#define DDSFC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <tuple>
#include <vector>

#include "ddsfc/ddsfc.hpp"

namespace oracle {

using namespace ddsfc;

inline double canonical_sum(std::vector<double> w)
{
    std::sort(w.begin(), w.end());
    double s = 0.0;
    for (double x : w) s += x;
    return s;
}

/// Minimum over all spanning trees of the sum of arc weights oriented away
/// from `root`, by enumerating every (n-1)-edge subset. Weights are summed
/// in sorted order so equal multisets give equal totals.
inline double brute_force_spanning_tree(const WeightedGraph& g, std::size_t root)
{
    struct E {
        std::size_t a, b;
        double ab, ba;
    };
    std::vector<E> edges;
    for (std::size_t a = 0; a < g.size(); ++a)
        for (const auto& arc : g.arcs[a])
            if (arc.to > a) {
                double back = std::numeric_limits<double>::quiet_NaN();
                for (const auto& r : g.arcs[arc.to])
                    if (r.to == a) back = r.weight;
                edges.push_back({a, arc.to, arc.weight, back});
            }
    const std::size_t n = g.size(), m = edges.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick;
    auto evaluate = [&] {
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
        for (std::size_t k : pick) {
            adj[edges[k].a].push_back({edges[k].b, k});
            adj[edges[k].b].push_back({edges[k].a, k});
        }
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{root};
        seen[root] = 1;
        std::vector<double> w;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (auto [v, k] : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                    w.push_back(edges[k].a == u ? edges[k].ab : edges[k].ba);
                }
        }
        if (w.size() + 1 == n) best = std::min(best, canonical_sum(w));
    };
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (pick.size() + 1 == n) {
            evaluate();
            return;
        }
        for (std::size_t k = from; k < m; ++k) {
            pick.push_back(k);
            self(self, k + 1);
            pick.pop_back();
        }
    };
    if (n == 1) return 0.0;
    rec(rec, 0);
    return best;
}

inline double tree_weight(const SpanningTree& t)
{
    std::vector<double> w;
    for (const auto& e : t.edges) w.push_back(e.weight);
    return canonical_sum(w);
}

/// Minimum cost over every Hamiltonian path of the box from `entry` whose
/// last vertex lies on face `exit`, by plain DFS enumeration. Infinity when
/// no such path exists.
inline double brute_force_min_hampath(const Extent& box, const std::vector<double>& v, const Coord& entry, Face exit)
{
    const std::size_t n = box.size();
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> path{box.index(entry)};
    seen[path[0]] = 1;
    double best = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self) -> void {
        const Coord c = box.coord(path.back());
        if (path.size() == n) {
            const int axis = face_axis(exit);
            const int want = face_is_max(exit) ? box.n[axis] - 1 : 0;
            if (c[axis] != want) return;
            double s = 0.0;
            for (std::size_t i = 1; i < n; ++i) s += std::abs(v[path[i]] - v[path[i - 1]]);
            best = std::min(best, s);
            return;
        }
        for (int a = 0; a < 3; ++a)
            for (int d : {-1, 1}) {
                Coord nb = c;
                nb[a] += d;
                if (!box.contains(nb)) continue;
                const std::size_t j = box.index(nb);
                if (seen[j]) continue;
                seen[j] = 1;
                path.push_back(j);
                self(self);
                path.pop_back();
                seen[j] = 0;
            }
    };
    rec(rec);
    return best;
}

/// Textbook recursive 2D Hilbert index-to-point conversion (quadrant
/// rotation form): starts at the origin and ends at (n-1, 0).
inline Coord hilbert_d2xy(int n, std::int64_t d)
{
    int x = 0, y = 0;
    std::int64_t t = d;
    for (int s = 1; s < n; s *= 2) {
        const int rx = static_cast<int>(1 & (t / 2));
        const int ry = static_cast<int>(1 & (t ^ rx));
        if (ry == 0) {
            if (rx == 1) {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::swap(x, y);
        }
        x += s * rx;
        y += s * ry;
        t /= 4;
    }
    return {x, y, 0};
}

/// Every aligned power-of-two sub-square/sub-cube is visited as one
/// contiguous run of ranks.
inline bool aligned_blocks_contiguous(const Curve& c)
{
    const Extent& e = c.domain();
    for (int s = 2; s <= e.n[0]; s *= 2) {
        std::size_t block = 1;
        for (int a = 0; a < e.rank; ++a) block *= static_cast<std::size_t>(s);
        for (std::size_t start = 0; start < c.size(); start += block) {
            Coord lo = c[start].coord;
            for (int a = 0; a < 3; ++a) lo[a] = lo[a] / s * s;
            for (std::size_t i = start; i < start + block; ++i)
                for (int a = 0; a < e.rank; ++a)
                    if (c[i].coord[a] / s * s != lo[a]) return false;
        }
    }
    return true;
}

/// Path cost |s(P(i+1)) - s(P(i))| summed over consecutive steps.
inline double curve_cost(const Curve& c, const ScalarField& f)
{
    double s = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) s += std::abs(f.at(c[i].coord) - f.at(c[i - 1].coord));
    return s;
}

/// Biased sample autocorrelation straight from the definition.
inline std::vector<double> autocorrelation(const std::vector<double>& x, int max_lag)
{
    const double n = static_cast<double>(x.size());
    double m = 0.0;
    for (double v : x) m += v;
    m /= n;
    double den = 0.0;
    for (double v : x) den += (v - m) * (v - m);
    std::vector<double> r;
    for (int k = 0; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t i = 0; i + static_cast<std::size_t>(k) < x.size(); ++i) num += (x[i] - m) * (x[i + k] - m);
        r.push_back(num / den);
    }
    return r;
}

inline ScalarField random_field(const Extent& e, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(e.size());
    for (auto& x : v) x = u(rng);
    return ScalarField(e, std::move(v));
}

/// Noise whose amplitude drops in one random half-space, so variance-based
/// trees come out adaptive rather than uniformly refined.
inline ScalarField patchy_field(const Extent& e, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int axis = static_cast<int>(rng() % static_cast<std::uint64_t>(e.rank));
    const int cut = static_cast<int>(rng() % static_cast<std::uint64_t>(e.n[axis] + 1));
    const double quiet = 0.02 + 0.1 * u(rng);
    std::vector<double> v(e.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = u(rng) * (e.coord(i)[axis] < cut ? quiet : 1.0);
    return ScalarField(e, std::move(v));
}

} // namespace oracle

#endif // DDSFC_TESTS_ORACLES_HPP
