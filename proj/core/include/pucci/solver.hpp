#pragma once

#include <functional>
#include <optional>

#include "pucci/ellipticity.hpp"
#include "pucci/field.hpp"
#include "pucci/sym_matrix.hpp"

namespace pucci {

/// Discrete operator on the orthogonal-pair wide stencil. The extremal kinds
/// take the max/min over the stencil pairs of psi-weighted second
/// differences; the linear kind uses a fixed nonnegative combination that
/// reproduces tr(A D^2 u) exactly in the continuum.
struct OperatorSpec {
    enum class Kind { pucci_plus, pucci_minus, linear };

    Kind kind;
    Ellipticity ell;
    int k_d = 16;
    std::optional<SymMatrix> a_const;              // linear, constant coefficient
    std::function<SymMatrix(Point)> a_fn;          // linear, per-node coefficient

    static OperatorSpec pucci_plus(Ellipticity e, int k_d = 16);
    static OperatorSpec pucci_minus(Ellipticity e, int k_d = 16);
    static OperatorSpec linear(SymMatrix a, Ellipticity e, int k_d = 16);
    static OperatorSpec linear(std::function<SymMatrix(Point)> a, Ellipticity e, int k_d = 16);
    static OperatorSpec laplace(int k_d = 16);
};

struct SolveReport {
    long iterations = 0;   // smoother applications on the finest level
    int cycles = 0;
    double residual = 0.0; // final sup-norm residual
    double step = 0.0;     // smallest damped step used on the finest level
    bool converged = false;
    int nodes = 0;
};

struct SolveOptions {
    double tol = 1e-8;
    bool multigrid = true; // false: plain damped fixed-point on one level
    int max_cycles = 400;
    long iteration_cap = 0; // 0: 1000 * node count
};

/// Applies the discrete operator to a complete field; returns op_h[u] as a
/// field on the same mask (closure zeroed).
Field apply_operator(const OperatorSpec& op, const Field& u);

/// Residual f - closure consistency is the caller's concern; this solves
/// op_h[u] = f with Dirichlet data g on the crossings, damped fixed-point
/// iteration (multigrid-accelerated by default), u = 0 start, deterministic.
std::pair<Field, SolveReport> solve(const OperatorSpec& op,
                                    const std::function<double(Point)>& f,
                                    const DomainSpec& domain,
                                    const std::function<double(Point)>& g, double h,
                                    const SolveOptions& opts = {});

/// Monotone-scheme self test: requires op_h[u] >= op_h[v] - 1e-12 nodewise and
/// u <= v on the closure (PreconditionError otherwise); returns whether
/// u <= v + 1e-10 at every interior node.
bool discrete_comparison_check(const OperatorSpec& op, const Field& u, const Field& v);

/// Empirical sup-bound constant (sup u - sup boundary u+) / (r ||f||_L2),
/// 0 when the denominator vanishes.
double abp_check(const OperatorSpec& op, const Field& u,
                 const std::function<double(Point)>& f);

} // namespace pucci
