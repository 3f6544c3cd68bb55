#include "pucci/pucci_op.hpp"

#include <cmath>

namespace pucci {

namespace {

double extremal(const std::vector<double>& eigs, double wpos, double wneg,
                double zero_floor) {
    double v = 0.0;
    for (double t : eigs) {
        if (t > zero_floor) v += wpos * t;
        else if (t < -zero_floor) v += wneg * t;
    }
    return v;
}

double zero_floor_of(const std::vector<double>& eigs) {
    double scale = 0.0;
    for (double t : eigs) scale = std::max(scale, std::abs(t));
    return 1e-12 * scale;
}

} // namespace

double pucci_plus_eigs(const std::vector<double>& eigs, const Ellipticity& e) {
    return extremal(eigs, e.Lambda, e.lambda, zero_floor_of(eigs));
}

double pucci_minus_eigs(const std::vector<double>& eigs, const Ellipticity& e) {
    return extremal(eigs, e.lambda, e.Lambda, zero_floor_of(eigs));
}

double pucci_plus(const SymMatrix& m, const Ellipticity& e) {
    if (m.dim() != e.dim) throw InputError("pucci_plus: dimension mismatch");
    return pucci_plus_eigs(spectrum(m).eigenvalues, e);
}

double pucci_minus(const SymMatrix& m, const Ellipticity& e) {
    if (m.dim() != e.dim) throw InputError("pucci_minus: dimension mismatch");
    return pucci_minus_eigs(spectrum(m).eigenvalues, e);
}

std::pair<bool, bool> quadratic_in_pucci_class(const SymMatrix& h, double fval,
                                               const Ellipticity& e) {
    constexpr double tol = 1e-10;
    return {pucci_plus(h, e) >= fval - tol, pucci_minus(h, e) <= fval + tol};
}

} // namespace pucci
