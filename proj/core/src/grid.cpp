#include "pucci/grid.hpp"

#include <cmath>

namespace pucci {

namespace {

constexpr double kPinFloor = 1e-4;

// First boundary crossing along x0 + t * step, t in (0, 1]; the node itself is
// interior. Returns the fraction, bisected on the defining function to well
// below the 1e-10 contract.
double crossing_fraction(const DomainSpec& d, Point x0, Point step) {
    const int scan = 32;
    double t_in = 0.0;
    double t_out = -1.0;
    for (int i = 1; i <= scan; ++i) {
        const double t = double(i) / scan;
        if (d.phi(x0 + step * t) <= 0.0) {
            t_out = t;
            break;
        }
        t_in = t;
    }
    if (t_out < 0.0) return 1.0; // endpoint sits in the closed boundary band
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (t_in + t_out);
        (d.phi(x0 + step * mid) > 0.0 ? t_in : t_out) = mid;
    }
    return 0.5 * (t_in + t_out);
}

} // namespace

GridMask::GridMask(DomainSpec domain, double h, int k_d, bool strict)
    : domain_(std::move(domain)), h_(h), dirs_(direction_set(k_d)) {
    if (!(h > 0.0)) throw InputError("GridMask: h must be positive");
    if (strict && h > domain_.radius() / 8.0 + 1e-15)
        throw InputError("GridMask: require h <= radius/8");
    double ext = domain_.radius();
    if (domain_.kind() == DomainSpec::Kind::polygon) {
        for (const Point& v : domain_.vertices()) ext = std::max({ext, std::abs(v.x), std::abs(v.y)});
    }
    n_ = int(std::floor(ext / h + 1e-9));
    const int w = 2 * n_ + 1;
    grid_.assign(size_t(w) * w, -1);

    auto cell = [&](int i, int j) -> int32_t& { return grid_[size_t(j + n_) * w + (i + n_)]; };

    for (int j = -n_; j <= n_; ++j)
        for (int i = -n_; i <= n_; ++i) {
            const Point p{i * h, j * h};
            if (domain_.kind() != DomainSpec::Kind::polygon && p.norm() > domain_.radius() + 1e-12)
                continue;
            if (domain_.phi(p) > 1e-12) {
                cell(i, j) = int32_t(coords_.size());
                coords_.push_back(p);
                ij_.push_back({i, j});
            }
        }
    if (coords_.empty()) throw ConfigError("GridMask: no interior nodes");

    if (strict && domain_.origin_on_boundary()) {
        bool near = false;
        for (const Point& p : coords_)
            if (p.norm() <= 4.0 * h + 1e-12) {
                near = true;
                break;
            }
        if (!near)
            throw ConfigError("GridMask: h too coarse, no interior node within 4h of the origin");
    }

    const int R = rays();
    arm_nbr_.assign(size_t(coords_.size()) * R, -1);
    arm_s_.assign(size_t(coords_.size()) * R, 1.0);
    arm_cross_.assign(size_t(coords_.size()) * R, -1);
    pinned_.assign(coords_.size(), 0);

    for (int node = 0; node < node_count(); ++node) {
        const auto [i, j] = ij_[node];
        for (int r = 0; r < R; ++r) {
            int dx, dy;
            dirs_->ray_offset(r, dx, dy);
            const int ii = i + dx, jj = j + dy;
            int nbr = -1;
            if (std::abs(ii) <= n_ && std::abs(jj) <= n_) nbr = cell(ii, jj);
            const size_t slot = size_t(node) * R + r;
            if (nbr >= 0) {
                arm_nbr_[slot] = nbr;
                continue;
            }
            const Point step{dx * h, dy * h};
            const double s = crossing_fraction(domain_, coords_[node], step);
            arm_s_[slot] = s;
            arm_cross_[slot] = int32_t(cross_pt_.size());
            cross_pt_.push_back(coords_[node] + step * s);
            if (s < kPinFloor) pinned_[node] = 1;
        }
    }
}

int GridMask::node_at(int i, int j) const {
    if (std::abs(i) > n_ || std::abs(j) > n_) return -1;
    return grid_[size_t(j + n_) * (2 * n_ + 1) + (i + n_)];
}

std::shared_ptr<const GridMask> grid_mask(const DomainSpec& d, double h, int k_d, bool strict) {
    return std::make_shared<const GridMask>(d, h, k_d, strict);
}

} // namespace pucci
