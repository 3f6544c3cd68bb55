#include "pucci/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace pucci {

namespace {

// Candidate pair representatives (p, q) with angle in [0, pi/2), gcd = 1,
// max-norm <= width, sorted by angle.
std::vector<StencilPair> candidates(int width) {
    std::vector<StencilPair> out;
    for (int p = 1; p <= width; ++p)
        for (int q = 0; q <= width; ++q) {
            if (q == 0 && p != 1) continue;
            if (std::gcd(p, q) != 1) continue;
            StencilPair s;
            s.vx = p;
            s.vy = q;
            s.len = std::hypot(double(p), double(q));
            s.angle = std::atan2(double(q), double(p));
            out.push_back(s);
        }
    std::sort(out.begin(), out.end(),
              [](const StencilPair& a, const StencilPair& b) { return a.angle < b.angle; });
    return out;
}

// Order-preserving assignment of sorted targets to sorted candidates
// minimizing the total angular deviation.
std::vector<int> assign(const std::vector<double>& targets, const std::vector<StencilPair>& cand) {
    const size_t n = targets.size(), m = cand.size();
    const double INF = 1e300;
    std::vector<std::vector<double>> dp(n + 1, std::vector<double>(m + 1, INF));
    std::vector<std::vector<int>> take(n + 1, std::vector<int>(m + 1, 0));
    for (size_t j = 0; j <= m; ++j) dp[n][j] = 0.0;
    for (size_t i = n; i-- > 0;) {
        for (size_t j = m; j-- > 0;) {
            if (m - j < n - i) continue; // not enough candidates left
            if (dp[i][j + 1] < INF) {
                dp[i][j] = dp[i][j + 1];
                take[i][j] = 0;
            }
            if (dp[i + 1][j + 1] < INF) {
                const double c = std::abs(cand[j].angle - targets[i]) + dp[i + 1][j + 1];
                if (c < dp[i][j]) {
                    dp[i][j] = c;
                    take[i][j] = 1;
                }
            }
        }
    }
    std::vector<int> chosen;
    size_t i = 0, j = 0;
    while (i < n && j < m) {
        if (take[i][j]) {
            chosen.push_back(int(j));
            ++i;
        }
        ++j;
    }
    return chosen;
}

} // namespace

DirectionSet::DirectionSet(int k_d) : k_d_(k_d) {
    if (k_d < 4 || k_d % 4 != 0) throw InputError("DirectionSet: K_d must be a positive multiple of 4");
    const int need = k_d / 2;
    int width = 1;
    std::vector<StencilPair> cand = candidates(width);
    while (int(cand.size()) < need) {
        if (++width > 12) throw InputError("DirectionSet: K_d too large (max 136 angles)");
        cand = candidates(width);
    }
    std::vector<double> targets(need);
    for (int j = 0; j < need; ++j) targets[j] = j * M_PI / k_d;
    for (int idx : assign(targets, cand)) pairs_.push_back(cand[idx]);
}

void DirectionSet::ray_offset(int ray, int& dx, int& dy) const {
    const StencilPair& p = pairs_[ray / 4];
    switch (ray % 4) {
        case 0: dx = p.vx; dy = p.vy; break;
        case 1: dx = -p.vx; dy = -p.vy; break;
        case 2: dx = -p.vy; dy = p.vx; break;
        default: dx = p.vy; dy = -p.vx; break;
    }
}

int DirectionSet::nearest_pair(double ang) const {
    const double half = M_PI / 2;
    double a = std::fmod(ang, half);
    if (a < 0) a += half;
    int best = 0;
    double bd = 1e300;
    for (size_t j = 0; j < pairs_.size(); ++j) {
        double d = std::abs(pairs_[j].angle - a);
        d = std::min(d, half - d);
        if (d < bd) {
            bd = d;
            best = int(j);
        }
    }
    return best;
}

std::shared_ptr<const DirectionSet> direction_set(int k_d) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const DirectionSet>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k_d);
    if (it != cache.end()) return it->second;
    auto ds = std::make_shared<const DirectionSet>(k_d);
    cache[k_d] = ds;
    return ds;
}

} // namespace pucci
