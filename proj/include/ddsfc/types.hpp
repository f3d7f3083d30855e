#ifndef DDSFC_TYPES_HPP
#define DDSFC_TYPES_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ddsfc {

// Errors -------------------------------------------------------------------

/// Base class for everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or flag combinations (CLI exit code 1).
class UsageError : public Error {
public:
    using Error::Error;
};

/// Malformed input data, violated preconditions on data (CLI exit code 2).
class DataError : public Error {
public:
    using Error::Error;
};

// Coordinates --------------------------------------------------------------

/// Integer cell coordinate. 2D data keeps z == 0.
using Coord = std::array<int, 3>;

inline Coord operator+(const Coord& a, const Coord& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Coord operator-(const Coord& a, const Coord& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline int manhattan(const Coord& a, const Coord& b)
{
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
}

/// True if a and b differ by exactly one unit along exactly one axis.
inline bool grid_adjacent(const Coord& a, const Coord& b) { return manhattan(a, b) == 1; }

inline std::string to_string(const Coord& c)
{
    return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")";
}

/// Cell counts per axis. Unused axes are 1; `rank` is 2 or 3.
struct Extent {
    std::array<int, 3> n{1, 1, 1};
    int rank = 2;

    Extent() = default;
    Extent(int nx, int ny) : n{nx, ny, 1}, rank(2) {}
    Extent(int nx, int ny, int nz) : n{nx, ny, nz}, rank(3) {}

    static Extent from_dims(const std::vector<int>& dims)
    {
        if (dims.size() == 2) return Extent(dims[0], dims[1]);
        if (dims.size() == 3) return Extent(dims[0], dims[1], dims[2]);
        throw DataError("dims must have 2 or 3 entries, got " + std::to_string(dims.size()));
    }

    std::vector<int> dims() const
    {
        return rank == 2 ? std::vector<int>{n[0], n[1]} : std::vector<int>{n[0], n[1], n[2]};
    }

    std::size_t size() const
    {
        return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(n[2]);
    }

    /// Row-major: x fastest, then y, then z.
    std::size_t index(const Coord& c) const
    {
        return static_cast<std::size_t>(c[0]) +
               static_cast<std::size_t>(n[0]) * (static_cast<std::size_t>(c[1]) + static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(c[2]));
    }

    Coord coord(std::size_t idx) const
    {
        const auto nx = static_cast<std::size_t>(n[0]);
        const auto ny = static_cast<std::size_t>(n[1]);
        return {static_cast<int>(idx % nx), static_cast<int>((idx / nx) % ny), static_cast<int>(idx / (nx * ny))};
    }

    bool contains(const Coord& c) const
    {
        for (int a = 0; a < 3; ++a)
            if (c[a] < 0 || c[a] >= n[a]) return false;
        return true;
    }

    std::string str() const
    {
        std::string s = std::to_string(n[0]) + "x" + std::to_string(n[1]);
        if (rank == 3) s += "x" + std::to_string(n[2]);
        return s;
    }

    friend bool operator==(const Extent&, const Extent&) = default;
};

// Faces ----------------------------------------------------------------------

/// A side of a bounding rectangle (4 in 2D) or box (6 in 3D).
enum class Face : int { XMin = 0, XMax = 1, YMin = 2, YMax = 3, ZMin = 4, ZMax = 5 };

inline int face_axis(Face f) { return static_cast<int>(f) / 2; }
inline bool face_is_max(Face f) { return static_cast<int>(f) % 2 == 1; }
inline Face make_face(int axis, bool is_max) { return static_cast<Face>(axis * 2 + (is_max ? 1 : 0)); }

inline std::vector<Face> faces_for_rank(int rank)
{
    std::vector<Face> out;
    for (int i = 0; i < 2 * rank; ++i) out.push_back(static_cast<Face>(i));
    return out;
}

inline const char* face_name(Face f)
{
    static constexpr const char* names[] = {"x-", "x+", "y-", "y+", "z-", "z+"};
    return names[static_cast<int>(f)];
}

// Curves ---------------------------------------------------------------------

/// One visited element: a grid cell (level 1) or the anchor (minimum corner,
/// finest-resolution coordinates) of a multiscale leaf at `level`.
struct Step {
    Coord coord{0, 0, 0};
    int level = 1;

    friend bool operator==(const Step&, const Step&) = default;
};

inline std::uint64_t pack_coord(const Coord& c)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c[0])) << 42) ^
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c[1])) << 21) ^
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(c[2]));
}

/// An ordered traversal plus the inverse map coordinate -> rank.
class Curve {
public:
    Curve() = default;
    Curve(Extent domain, std::vector<Step> steps, bool multiscale = false)
        : domain_(domain), steps_(std::move(steps)), multiscale_(multiscale)
    {
        rebuild_index();
    }

    static Curve from_coords(Extent domain, const std::vector<Coord>& coords)
    {
        std::vector<Step> steps;
        steps.reserve(coords.size());
        for (const auto& c : coords) steps.push_back({c, 1});
        return Curve(domain, std::move(steps));
    }

    const Extent& domain() const { return domain_; }
    const std::vector<Step>& steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }
    bool multiscale() const { return multiscale_; }
    const Step& operator[](std::size_t i) const { return steps_[i]; }

    std::vector<Coord> coords() const
    {
        std::vector<Coord> out;
        out.reserve(steps_.size());
        for (const auto& s : steps_) out.push_back(s.coord);
        return out;
    }

    std::optional<std::size_t> rank_of(const Coord& c) const
    {
        auto it = rank_.find(pack_coord(c));
        if (it == rank_.end()) return std::nullopt;
        return it->second;
    }

    /// Each step's coordinate occurs once.
    bool has_unique_steps() const { return rank_.size() == steps_.size(); }

    friend bool operator==(const Curve& a, const Curve& b)
    {
        return a.domain_ == b.domain_ && a.steps_ == b.steps_ && a.multiscale_ == b.multiscale_;
    }

private:
    void rebuild_index()
    {
        rank_.clear();
        rank_.reserve(steps_.size());
        for (std::size_t i = 0; i < steps_.size(); ++i) rank_.emplace(pack_coord(steps_[i].coord), i);
    }

    Extent domain_;
    std::vector<Step> steps_;
    bool multiscale_ = false;
    std::unordered_map<std::uint64_t, std::size_t> rank_;
};

/// True if `curve` visits every cell of its domain exactly once and
/// consecutive steps are grid-adjacent.
inline bool is_hamiltonian_on_grid(const Curve& curve)
{
    const Extent& d = curve.domain();
    if (curve.size() != d.size()) return false;
    std::vector<char> seen(d.size(), 0);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Coord& c = curve[i].coord;
        if (!d.contains(c)) return false;
        auto idx = d.index(c);
        if (seen[idx]) return false;
        seen[idx] = 1;
        if (i > 0 && !grid_adjacent(curve[i - 1].coord, c)) return false;
    }
    return true;
}

/// True if `curve` is a permutation of all cells of its domain.
inline bool is_permutation_of_grid(const Curve& curve)
{
    const Extent& d = curve.domain();
    if (curve.size() != d.size()) return false;
    std::vector<char> seen(d.size(), 0);
    for (const auto& s : curve.steps()) {
        if (!d.contains(s.coord)) return false;
        auto idx = d.index(s.coord);
        if (seen[idx]) return false;
        seen[idx] = 1;
    }
    return true;
}

} // namespace ddsfc

#endif // DDSFC_TYPES_HPP
