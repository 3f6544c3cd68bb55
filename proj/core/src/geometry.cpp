#include "pucci/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pucci {

namespace {

constexpr double kBand = 1e-12;

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

bool ConeSpec::contains(Point p) const {
    const double r = p.norm();
    if (r <= 0.0) return false;
    const double c = p.dot(axis) / r;
    return c > std::cos(half_angle);
}

DomainSpec DomainSpec::half_ball(double radius) {
    DomainSpec d;
    d.kind_ = Kind::half_ball;
    d.radius_ = radius;
    return d;
}

DomainSpec DomainSpec::ball(double radius) {
    DomainSpec d;
    d.kind_ = Kind::ball;
    d.radius_ = radius;
    return d;
}

DomainSpec DomainSpec::graph(std::optional<Modulus> lower, std::optional<Modulus> upper,
                             double radius) {
    if (!lower && !upper) throw InputError("DomainSpec::graph: need at least one modulus");
    if (radius > 1.0 + 1e-12)
        throw InputError("DomainSpec::graph: radius must not exceed the modulus domain (1)");
    DomainSpec d;
    d.kind_ = Kind::graph;
    d.radius_ = radius;
    d.lower_ = std::move(lower);
    d.upper_ = std::move(upper);
    return d;
}

DomainSpec DomainSpec::sector(double beta, double bisector, double radius) {
    if (!(beta > 0.0) || beta >= 2.0 * M_PI)
        throw InputError("DomainSpec::sector: opening must lie in (0, 2*pi)");
    DomainSpec d;
    d.kind_ = Kind::sector;
    d.radius_ = radius;
    d.beta_ = beta;
    d.bisector_ = bisector;
    return d;
}

DomainSpec DomainSpec::ball_minus_cone(ConeSpec cone, double radius) {
    const double an = cone.axis.norm();
    if (!(an > 0)) throw InputError("DomainSpec::ball_minus_cone: zero axis");
    cone.axis = cone.axis * (1.0 / an);
    if (!(cone.half_angle > 0.0) || !(cone.half_angle < M_PI / 2))
        throw InputError("DomainSpec::ball_minus_cone: half_angle must lie in (0, pi/2)");
    DomainSpec d;
    d.kind_ = Kind::ball_minus_cone;
    d.radius_ = radius;
    d.cone_ = cone;
    return d;
}

DomainSpec DomainSpec::polygon(std::vector<Point> vertices) {
    if (vertices.size() < 3) throw InputError("DomainSpec::polygon: need >= 3 vertices");
    // convexity + counter-clockwise orientation
    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Point a = vertices[i], b = vertices[(i + 1) % n], c = vertices[(i + 2) % n];
        const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
        if (cross < -1e-14)
            throw InputError("DomainSpec::polygon: vertices must be convex, counter-clockwise");
    }
    DomainSpec d;
    d.kind_ = Kind::polygon;
    d.vertices_ = std::move(vertices);
    double r = 0.0;
    for (const Point& v : d.vertices_) r = std::max(r, v.norm());
    d.radius_ = r;
    return d;
}

double DomainSpec::graph_curve(double t) const {
    if (t <= 0.0) return 0.0;
    const double lo = lower_ ? -t * lower_->eval(std::min(t, lower_->r0())) : 0.0;
    const double hi = upper_ ? t * upper_->eval(std::min(t, upper_->r0())) : 0.0;
    if (lower_ && upper_) return 0.5 * (lo + hi);
    return lower_ ? lo : hi;
}

double DomainSpec::phi(Point p) const {
    const double r = p.norm();
    const double ball = radius_ - r;
    switch (kind_) {
        case Kind::ball:
            return ball;
        case Kind::half_ball:
            return std::min(ball, p.y);
        case Kind::graph: {
            if (ball < -kBand) return ball;
            return std::min(ball, p.y - graph_curve(std::abs(p.x)));
        }
        case Kind::sector: {
            const double da = std::abs(wrap_angle(p.angle() - bisector_));
            return std::min(ball, r * (0.5 * beta_ - da));
        }
        case Kind::ball_minus_cone: {
            const double da = std::abs(wrap_angle(p.angle() - cone_->axis.angle()));
            return std::min(ball, r * (da - cone_->half_angle));
        }
        case Kind::polygon: {
            double m = 1e300;
            const size_t n = vertices_.size();
            for (size_t i = 0; i < n; ++i) {
                const Point a = vertices_[i], b = vertices_[(i + 1) % n];
                const Point e = b - a;
                const double len = e.norm();
                const double s = (e.x * (p.y - a.y) - e.y * (p.x - a.x)) / len;
                m = std::min(m, s);
            }
            return m;
        }
    }
    return -1.0;
}

PointClass DomainSpec::classify(Point p) const {
    if (kind_ != Kind::polygon && p.norm() > radius_ * (1.0 + 1e-9) + kBand)
        throw InputError("DomainSpec::classify: point outside the ball of the domain");
    const double v = phi(p);
    if (v > kBand) return PointClass::interior;
    if (v < -kBand) return PointClass::exterior;
    return PointClass::boundary;
}

bool DomainSpec::origin_on_boundary() const {
    if (kind_ == Kind::ball) return false;
    if (kind_ == Kind::polygon) return std::abs(phi(Point{0, 0})) <= kBand;
    return true;
}

std::string DomainSpec::to_string() const {
    switch (kind_) {
        case Kind::half_ball:
            return "halfball";
        case Kind::ball:
            return "ball";
        case Kind::sector:
            return "sector:beta=" + fmt_num(beta_) + ":bisector=" + fmt_num(bisector_);
        case Kind::graph: {
            std::string s = "graph:";
            if (lower_) s += "lower=" + lower_->to_string();
            if (lower_ && upper_) s += ":";
            if (upper_) s += "upper=" + upper_->to_string();
            return s;
        }
        case Kind::ball_minus_cone:
            return "ballminuscone:axis=" + fmt_num(cone_->axis.x) + "," + fmt_num(cone_->axis.y)
                 + ":halfangle=" + fmt_num(cone_->half_angle);
        case Kind::polygon: {
            std::string s = "polygon:";
            for (size_t i = 0; i < vertices_.size(); ++i) {
                if (i) s += ";";
                s += fmt_num(vertices_[i].x) + "," + fmt_num(vertices_[i].y);
            }
            return s;
        }
    }
    return "halfball";
}

namespace {

double parse_num(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw InputError("");
        return v;
    } catch (...) {
        throw InputError(std::string("domain literal: bad number for ") + what + ": '" + s + "'");
    }
}

// splits "key=value" fields separated by ':' but never inside '[...]'
std::vector<std::string> split_fields(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ':' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

DomainSpec parse_domain(const std::string& literal) {
    const std::vector<std::string> f = split_fields(literal);
    const std::string& head = f[0];
    auto field = [&](const std::string& key) -> std::optional<std::string> {
        for (size_t i = 1; i < f.size(); ++i)
            if (f[i].rfind(key + "=", 0) == 0) return f[i].substr(key.size() + 1);
        return std::nullopt;
    };
    if (head == "halfball") return DomainSpec::half_ball();
    if (head == "ball") return DomainSpec::ball();
    if (head == "sector") {
        auto b = field("beta"), t = field("bisector");
        if (!b) throw InputError("domain literal: sector needs beta=");
        return DomainSpec::sector(parse_num(*b, "beta"),
                                  t ? parse_num(*t, "bisector") : parse_num(*b, "beta") / 2.0);
    }
    if (head == "graph") {
        auto lo = field("lower"), hi = field("upper");
        std::optional<Modulus> l, u;
        if (lo) l = parse_modulus(*lo);
        if (hi) u = parse_modulus(*hi);
        return DomainSpec::graph(std::move(l), std::move(u));
    }
    if (head == "ballminuscone") {
        auto ax = field("axis"), ha = field("halfangle");
        if (!ax || !ha) throw InputError("domain literal: ballminuscone needs axis= and halfangle=");
        const size_t comma = ax->find(',');
        if (comma == std::string::npos) throw InputError("domain literal: axis=ax,ay expected");
        ConeSpec cone{{parse_num(ax->substr(0, comma), "axis.x"),
                       parse_num(ax->substr(comma + 1), "axis.y")},
                      parse_num(*ha, "halfangle")};
        return DomainSpec::ball_minus_cone(cone);
    }
    if (head == "polygon") {
        if (f.size() < 2) throw InputError("domain literal: polygon needs vertices");
        std::vector<Point> vs;
        std::string cur;
        std::vector<std::string> pts;
        for (char c : literal.substr(8)) {
            if (c == ';') {
                pts.push_back(cur);
                cur.clear();
            } else cur += c;
        }
        pts.push_back(cur);
        for (const std::string& p : pts) {
            const size_t comma = p.find(',');
            if (comma == std::string::npos) throw InputError("domain literal: polygon vertex x,y expected");
            vs.push_back({parse_num(p.substr(0, comma), "vertex x"),
                          parse_num(p.substr(comma + 1), "vertex y")});
        }
        return DomainSpec::polygon(std::move(vs));
    }
    throw InputError("unrecognized domain literal: '" + literal + "'");
}

namespace {

// Uncovered sub-intervals of (0, pi) after removing the sector span, as
// candidate cone windows in the upper half plane.
std::vector<std::pair<double, double>> uncovered_upper(double lo, double hi) {
    // spans are given with lo < hi, possibly extending outside [0, 2pi)
    std::vector<std::pair<double, double>> covered;
    auto add = [&](double a, double b) {
        a = std::max(a, 0.0);
        b = std::min(b, M_PI);
        if (b > a) covered.push_back({a, b});
    };
    for (int shift = -1; shift <= 1; ++shift)
        add(lo + 2.0 * M_PI * shift, hi + 2.0 * M_PI * shift);
    std::sort(covered.begin(), covered.end());
    std::vector<std::pair<double, double>> out;
    double t = 0.0;
    for (auto [a, b] : covered) {
        if (a > t) out.push_back({t, a});
        t = std::max(t, b);
    }
    if (t < M_PI) out.push_back({t, M_PI});
    return out;
}

std::optional<ConeSpec> widest_upper_cone(const std::vector<std::pair<double, double>>& windows) {
    double best = 0.0, mid = 0.0;
    for (auto [a, b] : windows) {
        if (b - a > best) {
            best = b - a;
            mid = 0.5 * (a + b);
        }
    }
    if (best <= 1e-9) return std::nullopt;
    const double half = 0.5 * best * (1.0 - 1e-6);
    return ConeSpec{{std::cos(mid), std::sin(mid)}, std::min(half, M_PI / 2 * (1 - 1e-9))};
}

ConditionReport conditions_sampled(const DomainSpec& d); // below

} // namespace

ConditionReport check_conditions(const DomainSpec& d) {
    ConditionReport rep;
    const Modulus zero = Modulus::zero();
    switch (d.kind()) {
        case DomainSpec::Kind::ball:
            // no distinguished boundary point: nothing to certify
            return rep;
        case DomainSpec::Kind::half_ball:
            rep.exterior_c1 = true;
            rep.exterior_modulus = zero;
            rep.interior_c1 = true;
            rep.interior_modulus = zero;
            rep.exterior_dini = dini_classify(zero);
            return rep;
        case DomainSpec::Kind::graph: {
            rep.exterior_c1 = true;
            rep.exterior_modulus = d.lower() ? *d.lower() : zero;
            rep.exterior_dini = dini_classify(*rep.exterior_modulus);
            rep.interior_c1 = true;
            rep.interior_modulus = d.upper() ? *d.upper() : zero;
            rep.cone_in_complement = false; // the complement pinches to zero opening at 0
            return rep;
        }
        case DomainSpec::Kind::sector: {
            const double lo = d.bisector() - 0.5 * d.beta();
            const double hi = d.bisector() + 0.5 * d.beta();
            // exterior condition in the global frame: the sector must stay in
            // the closed upper half plane
            const double lo_w = wrap_angle(lo), hi_w = lo_w + d.beta();
            rep.exterior_c1 = lo_w >= -1e-12 && hi_w <= M_PI + 1e-12;
            if (rep.exterior_c1) {
                rep.exterior_modulus = zero;
                rep.exterior_dini = dini_classify(zero);
            }
            // interior condition: the sector must cover the open upper half plane
            rep.interior_c1 = lo_w <= 1e-12 && hi_w >= M_PI - 1e-12;
            if (rep.interior_c1) rep.interior_modulus = zero;
            rep.cone_witness = widest_upper_cone(uncovered_upper(lo_w, hi_w));
            rep.cone_in_complement = rep.cone_witness.has_value();
            return rep;
        }
        case DomainSpec::Kind::ball_minus_cone: {
            const ConeSpec& k = *d.cone();
            rep.exterior_c1 = false; // the complement near 0 is the cone itself
            // interior condition: the closed cone must avoid the closed upper
            // half plane, i.e. sit strictly inside the lower one
            const double a0 = wrap_angle(k.axis.angle());
            rep.interior_c1 = a0 + k.half_angle < -1e-12 && a0 - k.half_angle > -M_PI + 1e-12;
            if (rep.interior_c1) rep.interior_modulus = zero;
            // the removed cone is the witness when it sits strictly in the
            // upper half plane
            if (a0 - k.half_angle > 1e-12 && a0 + k.half_angle < M_PI - 1e-12) {
                rep.cone_in_complement = true;
                rep.cone_witness = ConeSpec{k.axis, k.half_angle * (1.0 - 1e-6)};
            }
            return rep;
        }
        case DomainSpec::Kind::polygon:
            return conditions_sampled(d);
    }
    return rep;
}

namespace {

ConditionReport conditions_sampled(const DomainSpec& d) {
    ConditionReport rep;
    rep.sampled = true;
    if (!d.origin_on_boundary()) return rep;
    const int n_ang = 512, n_rad = 18;
    const double R = std::max(d.radius(), 1e-6);
    // per-radius extremes of -y/|x| over interior points (exterior condition)
    // and +y/|x| over non-interior points (interior condition)
    std::vector<std::pair<double, double>> ext_tab, int_tab;
    std::vector<bool> dir_all_noninterior(n_ang, true);
    double ext_ok = true, int_ok = true;
    for (int i = 1; i <= n_rad; ++i) {
        const double r = R * std::pow(0.5, i);
        double ext_need = 0.0, int_need = 0.0;
        for (int j = 0; j < n_ang; ++j) {
            const double th = (j + 0.5) * 2.0 * M_PI / n_ang;
            const Point p{r * std::cos(th), r * std::sin(th)};
            PointClass c;
            try {
                c = d.classify(p);
            } catch (const InputError&) {
                continue;
            }
            const double ax = std::max(std::abs(p.x), 1e-14);
            if (c == PointClass::interior) {
                if (p.y < 0) ext_need = std::max(ext_need, -p.y / ax);
                if (th < M_PI) dir_all_noninterior[j] = false;
            } else {
                if (p.y > 0) int_need = std::max(int_need, p.y / ax);
            }
        }
        ext_tab.push_back({r, ext_need});
        int_tab.push_back({r, int_need});
    }
    std::sort(ext_tab.begin(), ext_tab.end());
    std::sort(int_tab.begin(), int_tab.end());
    // enforce the nondecreasing closure and test the vanishing trend
    auto finish = [](std::vector<std::pair<double, double>>& tab) {
        double run = 0.0;
        for (auto& [r, v] : tab) {
            run = std::max(run, v);
            v = run;
        }
        return tab.front().second <= 0.25 * std::max(tab.back().second, 1e-12) ||
               tab.back().second <= 1e-9;
    };
    ext_ok = finish(ext_tab);
    int_ok = finish(int_tab);
    auto to_mod = [](const std::vector<std::pair<double, double>>& tab) -> std::optional<Modulus> {
        bool allz = true;
        for (auto& [r, v] : tab) allz = allz && v <= 1e-12;
        if (allz) return Modulus::zero();
        std::vector<std::pair<double, double>> t;
        double prev = -1;
        for (auto& [r, v] : tab)
            if (v > prev) {
                t.push_back({r, v * (1 + 1e-9) + 1e-15});
                prev = v;
            }
        try {
            return Modulus::tabulated(t);
        } catch (const InputError&) {
            return std::nullopt;
        }
    };
    rep.exterior_c1 = ext_ok;
    if (ext_ok) {
        rep.exterior_modulus = to_mod(ext_tab);
        if (rep.exterior_modulus) rep.exterior_dini = dini_classify(*rep.exterior_modulus);
    }
    rep.interior_c1 = int_ok;
    if (int_ok) rep.interior_modulus = to_mod(int_tab);
    // widest angular window in (0, pi) that stayed non-interior at all radii
    int best_len = 0, best_start = -1, cur_len = 0, cur_start = 0;
    const int j_pi = n_ang / 2;
    for (int j = 0; j < j_pi; ++j) {
        if (dir_all_noninterior[j]) {
            if (cur_len == 0) cur_start = j;
            if (++cur_len > best_len) {
                best_len = cur_len;
                best_start = cur_start;
            }
        } else cur_len = 0;
    }
    if (best_len >= 4) {
        const double a = best_start * 2.0 * M_PI / n_ang;
        const double b = (best_start + best_len) * 2.0 * M_PI / n_ang;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a) * (1.0 - 1e-6);
        rep.cone_in_complement = true;
        rep.cone_witness = ConeSpec{{std::cos(mid), std::sin(mid)}, std::min(half, M_PI / 2 * (1 - 1e-9))};
    }
    return rep;
}

} // namespace

double shared_exterior_condition_violation(const DomainSpec& d, const Modulus& omega,
                                           int boundary_samples, int probe_samples) {
    // walk the boundary by sampling rays from the centroid and bisecting phi
    Point c{0, 0};
    if (d.kind() == DomainSpec::Kind::polygon) {
        for (const Point& v : d.vertices()) c = c + v;
        c = c * (1.0 / double(d.vertices().size()));
    } else {
        c = {0.0, d.radius() / 2};
    }
    double worst = -1e300;
    for (int i = 0; i < boundary_samples; ++i) {
        const double th = (i + 0.25) * 2.0 * M_PI / boundary_samples;
        const Point dir{std::cos(th), std::sin(th)};
        double lo = 0.0, hi = 4.0 * d.radius();
        if (d.phi(c) <= 0) continue;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (d.phi(c + dir * mid) > 0 ? lo : hi) = mid;
        }
        const Point b = c + dir * (0.5 * (lo + hi));
        // inward normal from the gradient of phi
        const double eps = 1e-7;
        Point g{(d.phi({b.x + eps, b.y}) - d.phi({b.x - eps, b.y})) / (2 * eps),
                (d.phi({b.x, b.y + eps}) - d.phi({b.x, b.y - eps})) / (2 * eps)};
        const double gn = g.norm();
        if (gn < 1e-9) continue;
        g = g * (1.0 / gn);
        const Point t{-g.y, g.x};
        // points below the graph x_n < -|x'| w(|x'|) in the frame (t, g) must
        // not be interior
        for (int j = 0; j < probe_samples; ++j) {
            const double tt = (j % 2 ? -1 : 1) * d.radius() * 0.2 * std::pow(0.7, j / 2);
            const double s_min = std::abs(tt) * omega.eval(std::min(std::abs(tt), omega.r0()));
            for (double f : {1.5, 3.0, 8.0}) {
                const double s = s_min * f + 1e-9;
                const Point p = b + t * tt - g * s;
                if (p.norm() > d.radius() && d.kind() != DomainSpec::Kind::polygon) continue;
                double viol = -1e300;
                try {
                    if (d.classify(p) == PointClass::interior) viol = s - s_min;
                } catch (const InputError&) {
                    continue;
                }
                worst = std::max(worst, viol);
            }
        }
    }
    return worst == -1e300 ? 0.0 : std::max(worst, -1.0);
}

} // namespace pucci
