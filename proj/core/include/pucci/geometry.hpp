#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pucci/modulus.hpp"
#include "pucci/point.hpp"

namespace pucci {

/// Open convex planar cone with vertex 0: all x whose direction lies within
/// half_angle of the axis. Scale invariant by construction.
struct ConeSpec {
    Point axis;        // unit vector
    double half_angle; // in (0, pi/2)

    bool contains(Point p) const;
};

enum class PointClass { interior, exterior, boundary };

/// Parametric 2D domain with the distinguished boundary point at the origin
/// (except for the full-ball kind, used by solver-only scenarios).
///
/// Config literals: `halfball`, `ball`, `sector:beta=B:bisector=T`,
/// `graph:lower=<modulus>[:upper=<modulus>]`,
/// `ballminuscone:axis=ax,ay:halfangle=G`, `polygon:x1,y1;x2,y2;...`.
class DomainSpec {
public:
    enum class Kind { half_ball, ball, graph, sector, ball_minus_cone, polygon };

    static DomainSpec half_ball(double radius = 1.0);
    static DomainSpec ball(double radius = 1.0);
    /// Region of the ball above a graph curve built from the given moduli:
    /// lower only -> curve -|x'| w(|x'|); upper only -> +|x'| s(|x'|);
    /// both -> the midpoint curve |x'| (s - w)/2.
    static DomainSpec graph(std::optional<Modulus> lower, std::optional<Modulus> upper,
                            double radius = 1.0);
    /// Sector of opening `beta` around direction `bisector` (angles, radians).
    static DomainSpec sector(double beta, double bisector, double radius = 1.0);
    static DomainSpec ball_minus_cone(ConeSpec cone, double radius = 1.0);
    /// Convex polygon, vertices in counter-clockwise order.
    static DomainSpec polygon(std::vector<Point> vertices);

    Kind kind() const { return kind_; }
    double radius() const { return radius_; }
    double beta() const { return beta_; }
    double bisector() const { return bisector_; }
    const std::optional<Modulus>& lower() const { return lower_; }
    const std::optional<Modulus>& upper() const { return upper_; }
    const std::optional<ConeSpec>& cone() const { return cone_; }
    const std::vector<Point>& vertices() const { return vertices_; }

    /// Signed defining function: positive inside, negative outside, with the
    /// boundary at zero. Scaled so that its value approximates distance.
    double phi(Point p) const;

    /// Deterministic classification with a boundary band of width 1e-12 in
    /// the defining inequality. Requires |p| <= radius (plus band).
    PointClass classify(Point p) const;

    /// True when the origin is the distinguished boundary point of this kind.
    bool origin_on_boundary() const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::half_ball;
    double radius_ = 1.0;
    double beta_ = 0.0;     // sector opening
    double bisector_ = 0.0; // sector bisector angle
    std::optional<Modulus> lower_;
    std::optional<Modulus> upper_;
    std::optional<ConeSpec> cone_;
    std::vector<Point> vertices_;

    double graph_curve(double t) const; // boundary height at |x'| = t
};

DomainSpec parse_domain(const std::string& literal);

/// Pointwise geometric conditions at the origin, evaluated in the scenario's
/// global frame. Analytic for parametric kinds; sampled (and flagged) for
/// polygons.
struct ConditionReport {
    bool exterior_c1 = false;
    std::optional<Modulus> exterior_modulus;
    DiniVerdict exterior_dini;
    bool interior_c1 = false;
    std::optional<Modulus> interior_modulus;
    bool cone_in_complement = false;
    std::optional<ConeSpec> cone_witness;
    bool sampled = false;
};

ConditionReport check_conditions(const DomainSpec& d);

/// Sampled check that the exterior condition holds with one shared modulus at
/// every probed boundary point (the uniform, all-points version of the
/// exterior condition). Returns the worst violation margin (<= 0 means pass).
double shared_exterior_condition_violation(const DomainSpec& d, const Modulus& omega,
                                           int boundary_samples = 64,
                                           int probe_samples = 48);

} // namespace pucci
