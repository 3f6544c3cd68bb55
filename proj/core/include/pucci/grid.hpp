#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "pucci/geometry.hpp"
#include "pucci/stencil.hpp"

namespace pucci {

/// Lattice mask of a domain: interior nodes of the uniform grid with spacing
/// h (node (i, j) sits at (i h, j h)), plus, per node and stencil ray, either
/// the interior neighbor or the fractional distance to the boundary crossing
/// (Shortley-Weller data). Immutable after construction.
class GridMask {
public:
    GridMask(DomainSpec domain, double h, int k_d, bool strict = true);

    const DomainSpec& domain() const { return domain_; }
    double h() const { return h_; }
    int extent() const { return n_; } // lattice indices run -extent..extent
    const DirectionSet& dirs() const { return *dirs_; }
    std::shared_ptr<const DirectionSet> dirs_ptr() const { return dirs_; }

    int node_count() const { return int(coords_.size()); }
    Point coord(int node) const { return coords_[node]; }
    /// Interior node index at lattice (i, j), or -1.
    int node_at(int i, int j) const;
    std::array<int, 2> lattice(int node) const { return ij_[node]; }

    int rays() const { return dirs_->rays(); }
    /// Neighbor node for (node, ray), or -1 when the arm crosses the boundary.
    int arm_neighbor(int node, int ray) const { return arm_nbr_[size_t(node) * rays() + ray]; }
    /// Fractional arm length in (0, 1]; 1 for full arms.
    double arm_fraction(int node, int ray) const { return arm_s_[size_t(node) * rays() + ray]; }
    /// Crossing slot for (node, ray), or -1 for full arms.
    int arm_crossing(int node, int ray) const { return arm_cross_[size_t(node) * rays() + ray]; }

    int crossing_count() const { return int(cross_pt_.size()); }
    Point crossing_point(int c) const { return cross_pt_[c]; }

    /// Nodes whose nearest crossing is closer than the stabilization floor;
    /// the solver pins them to their boundary value.
    bool pinned(int node) const { return pinned_[node]; }

private:
    DomainSpec domain_;
    double h_;
    int n_;
    std::shared_ptr<const DirectionSet> dirs_;
    std::vector<int32_t> grid_;
    std::vector<Point> coords_;
    std::vector<std::array<int, 2>> ij_;
    std::vector<int32_t> arm_nbr_;
    std::vector<double> arm_s_;
    std::vector<int32_t> arm_cross_;
    std::vector<Point> cross_pt_;
    std::vector<uint8_t> pinned_;
};

/// Builds the mask; ConfigError when no interior node lies within 4h of the
/// origin for domains whose distinguished boundary point is the origin.
std::shared_ptr<const GridMask> grid_mask(const DomainSpec& d, double h, int k_d = 16,
                                          bool strict = true);

} // namespace pucci
