#include "gaugelift/grid.hpp"

#include <stdexcept>
#include <string>

namespace gaugelift {

Grid::Grid(int n_, int shape_, double lo_, double hi_) : n(n_), shape(shape_), lo(lo_), hi(hi_) {
    if (n < 2 || n > kMaxDim) throw std::invalid_argument("grid: dimension must be 2 or 3");
    if (shape < 3) throw std::invalid_argument("grid: need at least 3 vertices per axis");
    if (!(hi > lo)) throw std::invalid_argument("grid: degenerate box");
    h = (hi - lo) / static_cast<double>(shape - 1);
}

Grid Grid::refine() const {
    return Grid(n, 2 * (shape - 1) + 1, lo, hi);
}

std::size_t Grid::vertex_count() const {
    std::size_t c = 1;
    for (int a = 0; a < n; ++a) c *= static_cast<std::size_t>(shape);
    return c;
}

std::size_t Grid::vindex(const Coord& c) const {
    // x fastest: idx = c0 + shape*(c1 + shape*c2)
    std::size_t idx = 0;
    for (int a = n - 1; a >= 0; --a) idx = idx * static_cast<std::size_t>(shape) + static_cast<std::size_t>(c[a]);
    return idx;
}

Coord Grid::vcoord(std::size_t idx) const {
    Coord c{0, 0, 0};
    for (int a = 0; a < n; ++a) {
        c[a] = static_cast<int>(idx % static_cast<std::size_t>(shape));
        idx /= static_cast<std::size_t>(shape);
    }
    return c;
}

bool Grid::in_range(const Coord& c) const {
    for (int a = 0; a < n; ++a)
        if (c[a] < 0 || c[a] >= shape) return false;
    return true;
}

bool Grid::is_boundary_vertex(const Coord& c) const {
    for (int a = 0; a < n; ++a)
        if (c[a] == 0 || c[a] == shape - 1) return true;
    return false;
}

std::vector<std::uint8_t> Grid::boundary_mask() const {
    std::vector<std::uint8_t> mask(vertex_count(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (is_boundary_vertex(vcoord(i))) mask[i] = 1;
    return mask;
}

std::array<double, kMaxDim> Grid::position(const Coord& c) const {
    std::array<double, kMaxDim> x{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) x[a] = lo + h * static_cast<double>(c[a]);
    return x;
}

Coord Grid::cell_shape(int mask) const {
    Coord s{1, 1, 1};
    for (int a = 0; a < n; ++a) s[a] = (mask >> a) & 1 ? shape - 1 : shape;
    return s;
}

std::size_t Grid::cell_count(int mask) const {
    Coord s = cell_shape(mask);
    std::size_t c = 1;
    for (int a = 0; a < n; ++a) c *= static_cast<std::size_t>(s[a]);
    return c;
}

std::size_t Grid::cindex(int mask, const Coord& c) const {
    Coord s = cell_shape(mask);
    std::size_t idx = 0;
    for (int a = n - 1; a >= 0; --a) idx = idx * static_cast<std::size_t>(s[a]) + static_cast<std::size_t>(c[a]);
    return idx;
}

Coord Grid::ccoord(int mask, std::size_t idx) const {
    Coord s = cell_shape(mask);
    Coord c{0, 0, 0};
    for (int a = 0; a < n; ++a) {
        c[a] = static_cast<int>(idx % static_cast<std::size_t>(s[a]));
        idx /= static_cast<std::size_t>(s[a]);
    }
    return c;
}

bool Grid::cell_interior(int mask, const Coord& c, int margin) const {
    for (int a = 0; a < n; ++a) {
        int extent = (mask >> a) & 1 ? 1 : 0;
        if (c[a] < margin || c[a] + extent > shape - 1 - margin) return false;
    }
    return true;
}

std::array<double, kMaxDim> Grid::cell_center(int mask, const Coord& c) const {
    std::array<double, kMaxDim> x = position(c);
    for (int a = 0; a < n; ++a)
        if ((mask >> a) & 1) x[a] += 0.5 * h;
    return x;
}

Subdomain::Subdomain(const Grid& g, int m) : grid(g), margin(m) {
    if (m < 0) throw std::invalid_argument("subdomain: negative margin");
    if (2 * m >= g.shape) throw std::invalid_argument("subdomain: margin " + std::to_string(m) + " leaves no vertices on shape " + std::to_string(g.shape));
}

bool Subdomain::contains_vertex(const Coord& c) const {
    return grid.cell_interior(0, c, margin);
}

}  // namespace gaugelift
