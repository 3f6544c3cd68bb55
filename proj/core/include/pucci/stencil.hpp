#pragma once

#include <memory>
#include <vector>

#include "pucci/errors.hpp"
#include "pucci/point.hpp"

namespace pucci {

/// One orthogonal stencil pair: a primitive lattice vector v and its
/// perpendicular (-v.y, v.x). Arms step one lattice cell of the vector, so
/// second differences along them are exact on quadratics.
struct StencilPair {
    int vx, vy;          // primitive lattice vector of the first leg
    double len;          // |v|
    double angle;        // angle of v in [0, pi/2)
};

/// Direction set for K_d stencil angles (multiple of 4): K_d/2 orthogonal
/// pairs whose angles approximate the uniform grid j*pi/K_d with primitive
/// lattice vectors of the smallest sufficient width.
class DirectionSet {
public:
    explicit DirectionSet(int k_d);

    int k_d() const { return k_d_; }
    int pairs() const { return k_d_ / 2; }
    int rays() const { return 2 * k_d_; }
    const std::vector<StencilPair>& pair_list() const { return pairs_; }

    /// Lattice offset of ray r (r = 4*pair + leg; legs: +v, -v, +v_perp, -v_perp).
    void ray_offset(int ray, int& dx, int& dy) const;
    double ray_len(int ray) const { return pairs_[ray / 4].len; }

    /// Index of the pair whose angle is nearest to `ang` modulo pi/2.
    int nearest_pair(double ang) const;

private:
    int k_d_;
    std::vector<StencilPair> pairs_;
};

std::shared_ptr<const DirectionSet> direction_set(int k_d);

} // namespace pucci
