#ifndef BURGERS_GRID_HPP
#define BURGERS_GRID_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

/// Uniform grid of the unit interval with homogeneous Dirichlet endpoints.
/// Only the M interior nodes x_i = i/(M+1), i = 1..M, are stored; the
/// endpoint values are implicitly zero.
struct GridSpec {
    int points = 0;  // number of interior nodes M

    explicit GridSpec(int interior_points) : points(interior_points) {
        if (points < 8)
            throw std::invalid_argument("GridSpec: need at least 8 interior points");
    }

    double spacing() const { return 1.0 / (points + 1); }
    /// Coordinate of interior node i, i in [0, points).
    double node(int i) const { return (i + 1) * spacing(); }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.points == b.points;
    }
};

/// Sampled function on a GridSpec (interior values; endpoints are zero).
struct GridField {
    GridSpec grid;
    std::vector<double> values;

    explicit GridField(GridSpec g) : grid(g), values(g.points, 0.0) {}
    GridField(GridSpec g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != grid.points)
            throw std::invalid_argument("GridField: value count does not match grid");
    }

    int size() const { return grid.points; }
    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

inline void require_same_grid(const GridField& a, const GridField& b, const char* what) {
    if (!(a.grid == b.grid))
        throw ShapeError(std::string(what) + ": fields live on different grids (" +
                         std::to_string(a.grid.points) + " vs " +
                         std::to_string(b.grid.points) + " interior points)");
}

}  // namespace burgers

#endif
