#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pucci/field.hpp"
#include "pucci/geometry.hpp"
#include "pucci/solver.hpp"

namespace pucci {

/// Dyadic plane-squeeze data extracted from a solved field at the origin:
/// per level k, the extreme slopes of u / x_n over the cone-restricted nodes
/// of the ball of radius eta^k, and the undivided residuals over all of them.
struct SqueezeLedger {
    double eta = 0.5;
    Point plane_direction{0.0, 1.0};
    struct LevelRow {
        int k;
        double radius;
        double a;       // max slope
        double b;       // min slope
        double A;       // residual above the a-plane, scaled by eta^-k
        double B;       // residual below the b-plane
        double t_slope; // tangential slope of u - mid plane over the cone nodes
        int cone_nodes; // probed (cone-restricted) nodes
        int ball_nodes;
    };
    std::vector<LevelRow> levels;

    double gap_at(int idx) const { return levels[idx].a - levels[idx].b; }
    /// Geometric contraction factor of the gap, fitted by least squares on
    /// log(a_k - b_k); 1.0 when the fit is degenerate.
    double gap_contraction() const;
};

/// Nodes probed per level keep x_n >= cone_cut * eta^k so the slope division
/// stays bounded; residuals use every node of the level ball.
SqueezeLedger extract_squeeze(const Field& u, double eta, Point plane_direction = {0.0, 1.0},
                              double cone_cut = 0.05);

/// Least-squares growth exponent of log sup |u - a x_n| over B_r against
/// log r. `a` defaults to 0 (corner scenarios); pass the finest squeeze slope
/// for flat scenarios.
struct ExponentFit {
    double exponent = 0.0;
    double stderr_ = 0.0;
    bool infinite = false; // remainder identically at rounding level
    std::vector<std::pair<double, double>> sups; // (r, sup)
};

ExponentFit fit_growth_exponent(const Field& u, const std::vector<double>& radii,
                                double a = 0.0, Point plane_direction = {0.0, 1.0});

enum class Differentiability { yes, no, inconclusive };

struct RegularityVerdict {
    Differentiability differentiable = Differentiability::inconclusive;
    Point gradient_estimate{0.0, 0.0};
    double exponent = 0.0;
    double exponent_stderr = 0.0;
    double final_gap = 0.0;
    double gap_threshold = 0.0;
    std::vector<double> modulus_trace; // (a_k + A_k - b_k + B_k)/2 per level
    std::optional<Point> expected_gradient;
    double gradient_deviation = 0.0;
};

/// Operational differentiability verdict: yes when the slope gap has closed
/// to the discretization floor and the remainder exponent clears 0.95; no when
/// the exponent (with its standard-error margin) stays below 0.95.
RegularityVerdict verdict(const SqueezeLedger& ledger, const ExponentFit& fit,
                          const ConditionReport& scenario, double h,
                          std::optional<Point> g_gradient = std::nullopt);

/// Numeric scenario checks of the half-ball comparison lemmas.
struct LemmaResult {
    std::string name;
    bool pass = false;
    double c_fitted = 0.0;
    double C_fitted = 0.0;
    double detail = 0.0; // lemma-specific headline number
    std::string note;
};

struct LemmaSuiteOptions {
    double lambda = 1.0;
    double Lambda = 2.0;
    double h = 1.0 / 128;
    int k_d = 16;
    double tol = 1e-8;
    double delta0 = 0.05; // forcing budget of the Hopf-type scenario
};

std::vector<LemmaResult> lemma_scenarios(const LemmaSuiteOptions& opts = {});

} // namespace pucci
