#pragma once

#include <utility>
#include <vector>

#include "pucci/ellipticity.hpp"
#include "pucci/sym_matrix.hpp"

namespace pucci {

/// Maximal extremal operator: Lambda * (sum of positive eigenvalues)
/// + lambda * (sum of negative eigenvalues). Eigenvalues with
/// |t| < 1e-12 * ||M|| count as zero and enter neither sum.
double pucci_plus(const SymMatrix& m, const Ellipticity& e);

/// Minimal extremal operator: lambda * (positive sum) + Lambda * (negative sum).
double pucci_minus(const SymMatrix& m, const Ellipticity& e);

/// Same operators evaluated directly on a list of eigenvalues (used by the
/// radial barriers, where the spectrum is known in closed form).
double pucci_plus_eigs(const std::vector<double>& eigs, const Ellipticity& e);
double pucci_minus_eigs(const std::vector<double>& eigs, const Ellipticity& e);

/// For the quadratic x -> 0.5 x^T H x with right-hand side fval, membership in
/// the extremal sub/supersolution classes reduces to pointwise inequalities:
/// returns (pucci_plus(H) >= fval - tol, pucci_minus(H) <= fval + tol),
/// tol = 1e-10.
std::pair<bool, bool> quadratic_in_pucci_class(const SymMatrix& h, double fval,
                                               const Ellipticity& e);

} // namespace pucci
