/// @file grid.hpp
/// @brief Uniform staggered grid on an axis-aligned box.
///
/// Vertices live at the box corners and regular subdivisions; edges and faces
/// are the axis-aligned cells between them. All axes share one spacing h.
/// Cell positions are identified by the lattice coordinate of their lower
/// corner plus the set of axes the cell extends along (a bitmask): a vertex
/// has mask 0, an edge along axis a has mask (1<<a), a face spanning axes a,b
/// has mask (1<<a)|(1<<b).

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gaugelift {

constexpr int kMaxDim = 3;

using Coord = std::array<int, kMaxDim>;

struct Grid {
    int n = 0;           // spatial dimension (2 or 3)
    int shape = 0;       // vertices per axis (>= 3)
    double lo = 0.0;     // box lower corner, all axes
    double hi = 1.0;     // box upper corner, all axes
    double h = 0.0;      // spacing, (hi - lo) / (shape - 1)

    Grid() = default;
    Grid(int n_, int shape_, double lo_ = 0.0, double hi_ = 1.0);

    bool operator==(const Grid&) const = default;

    /// Same box, spacing halved exactly: shape' = 2*(shape-1)+1.
    Grid refine() const;

    // ---- vertex indexing -------------------------------------------------
    std::size_t vertex_count() const;
    std::size_t vindex(const Coord& c) const;
    Coord vcoord(std::size_t idx) const;
    bool in_range(const Coord& c) const;
    bool is_boundary_vertex(const Coord& c) const;
    /// 1 for vertices on the box faces, 0 otherwise.
    std::vector<std::uint8_t> boundary_mask() const;

    /// Physical position of a lattice coordinate.
    std::array<double, kMaxDim> position(const Coord& c) const;

    // ---- general cells (mask = set of axes the cell extends along) ------
    /// Vertex extent of the cell lattice for a given axis mask.
    Coord cell_shape(int mask) const;
    std::size_t cell_count(int mask) const;
    std::size_t cindex(int mask, const Coord& c) const;
    Coord ccoord(int mask, std::size_t idx) const;
    /// True if every lattice coordinate of the cell lies >= margin layers
    /// away from the box faces.
    bool cell_interior(int mask, const Coord& c, int margin) const;
    /// Midpoint of the cell (sampling point for analytic fields).
    std::array<double, kMaxDim> cell_center(int mask, const Coord& c) const;
};

/// Interior restriction of a grid: cells whose closures stay `margin` vertex
/// layers away from the boundary. Constructing one with 2*margin >= shape
/// is an error.
struct Subdomain {
    Grid grid;
    int margin = 0;

    Subdomain(const Grid& g, int m);
    bool contains_vertex(const Coord& c) const;
};

}  // namespace gaugelift
