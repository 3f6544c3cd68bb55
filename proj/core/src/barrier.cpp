#include "pucci/barrier.hpp"

#include <cmath>

#include "pucci/errors.hpp"
#include "pucci/pucci_op.hpp"

namespace pucci {

RadialBarrier RadialBarrier::inverse_power(double c1, double alpha, double r_outer,
                                           Point center, double ann_inner, double ann_outer) {
    if (!(alpha > 0.0)) throw InputError("RadialBarrier: alpha must be positive");
    if (!(ann_inner > 0.0) || !(ann_outer > ann_inner))
        throw InputError("RadialBarrier: need 0 < ann_inner < ann_outer");
    RadialBarrier b;
    b.form = Form::inverse_power;
    b.center = center;
    b.c1 = c1;
    b.alpha = alpha;
    b.r_outer = r_outer;
    b.ann_inner = ann_inner;
    b.ann_outer = ann_outer;
    return b;
}

RadialBarrier RadialBarrier::one_minus_inverse_power(double p, Point center, double ann_inner,
                                                     double ann_outer) {
    if (!(p > 0.0)) throw InputError("RadialBarrier: p must be positive");
    if (!(ann_inner > 0.0) || !(ann_outer > ann_inner))
        throw InputError("RadialBarrier: need 0 < ann_inner < ann_outer");
    RadialBarrier b;
    b.form = Form::one_minus_inverse_power;
    b.center = center;
    b.p = p;
    b.ann_inner = ann_inner;
    b.ann_outer = ann_outer;
    return b;
}

double RadialBarrier::value(double r) const {
    if (form == Form::inverse_power)
        return c1 * (std::pow(r, -alpha) - std::pow(r_outer, -alpha));
    return 2.0 * (1.0 - std::pow(r, -p));
}

std::vector<double> RadialSpectrum::as_list() const {
    std::vector<double> eigs(1 + tangential_multiplicity, tangential_eig);
    eigs[0] = radial_eig;
    return eigs;
}

RadialSpectrum radial_spectrum(const RadialBarrier& b, double r, int dim) {
    if (!(r >= b.ann_inner) || !(r <= b.ann_outer))
        throw InputError("radial_spectrum: r outside the annulus");
    RadialSpectrum s;
    s.tangential_multiplicity = dim - 1;
    if (b.form == RadialBarrier::Form::inverse_power) {
        const double pw = std::pow(r, -b.alpha - 2.0);
        s.radial_eig = b.c1 * b.alpha * (b.alpha + 1.0) * pw;
        s.tangential_eig = -b.c1 * b.alpha * pw;
    } else {
        const double pw = std::pow(r, -b.p - 2.0);
        s.radial_eig = -2.0 * b.p * (b.p + 1.0) * pw;
        s.tangential_eig = 2.0 * b.p * pw;
    }
    return s;
}

double min_supersolution_exponent(const Ellipticity& e) {
    return e.Lambda * (e.dim - 1) / e.lambda - 1.0;
}

SignCertificate verify_sign(const RadialBarrier& b, const Ellipticity& e, SignCheck which,
                            int samples) {
    if (samples < 100) throw InputError("verify_sign: need samples >= 100");
    SignCertificate cert;
    cert.samples = samples;
    cert.pass = true;
    cert.margin = 1e300;
    cert.witness_radius = 0.0;
    const double exp_rate = b.form == RadialBarrier::Form::inverse_power ? b.alpha : b.p;
    for (int i = 0; i < samples; ++i) {
        const double t = double(i) / (samples - 1);
        const double r = b.ann_inner * std::pow(b.ann_outer / b.ann_inner, t);
        const RadialSpectrum s = radial_spectrum(b, r, e.dim);
        double slack;
        if (which == SignCheck::supersolution_Mminus_ge_0)
            slack = pucci_minus_eigs(s.as_list(), e);
        else
            slack = -pucci_plus_eigs(s.as_list(), e);
        // normalize away the common r^-(exp+2) factor so the margin is the
        // radius-independent coefficient
        slack *= std::pow(r, exp_rate + 2.0);
        if (slack < cert.margin) {
            cert.margin = slack;
            if (slack < 0.0 && cert.pass) {
                cert.pass = false;
                cert.witness_radius = r;
            }
        }
    }
    cert.note = "slack scales as r^-(exp+2); sampled sign certifies the annulus";
    return cert;
}

double choose_c1_for_boundary_data(const Ellipticity& e, double alpha,
                                   double inner_value_target) {
    if (alpha < min_supersolution_exponent(e) - 1e-12)
        throw PreconditionError("choose_c1_for_boundary_data: alpha below the supersolution threshold");
    if (inner_value_target == 0.0) return 0.0;
    if (!(alpha > 0.0)) throw InputError("choose_c1_for_boundary_data: alpha must be positive");
    return inner_value_target / (std::pow(8.0, alpha) - std::pow(4.0, alpha));
}

} // namespace pucci
