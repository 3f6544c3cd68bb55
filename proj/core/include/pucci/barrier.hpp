#pragma once

#include <string>
#include <vector>

#include "pucci/ellipticity.hpp"
#include "pucci/point.hpp"

namespace pucci {

/// Radial barrier families used by the boundary comparison arguments:
///   inverse_power:            v(r) = c1 (r^-alpha - R_outer^-alpha)
///   one_minus_inverse_power:  v(r) = 2 (1 - r^-p)
/// defined on an annulus around `center` (the singularity at the center is
/// excluded).
struct RadialBarrier {
    enum class Form { inverse_power, one_minus_inverse_power };

    Form form;
    Point center;
    double c1 = 1.0;      // inverse_power amplitude
    double alpha = 1.0;   // inverse_power exponent
    double r_outer = 1.0; // zero level of the inverse_power form
    double p = 2.0;       // one_minus_inverse_power exponent
    double ann_inner;     // annulus (ann_inner, ann_outer), ann_inner > 0
    double ann_outer;

    static RadialBarrier inverse_power(double c1, double alpha, double r_outer,
                                       Point center, double ann_inner, double ann_outer);
    static RadialBarrier one_minus_inverse_power(double p, Point center, double ann_inner,
                                                 double ann_outer);

    double value(double r) const;
    double value_at(Point x) const { return value((x - center).norm()); }
};

/// Eigenvalues of the radial Hessian at radius r: g''(r) with multiplicity 1
/// and g'(r)/r with multiplicity n-1.
struct RadialSpectrum {
    double radial_eig;
    double tangential_eig;
    int radial_multiplicity = 1;
    int tangential_multiplicity;

    std::vector<double> as_list() const;
};

RadialSpectrum radial_spectrum(const RadialBarrier& b, double r, int dim);

/// Infimum of the exponents alpha for which the inverse_power family is a
/// supersolution (pucci_minus >= 0) on the annulus: Lambda (n-1) / lambda - 1.
double min_supersolution_exponent(const Ellipticity& e);

enum class SignCheck { supersolution_Mminus_ge_0, subsolution_Mplus_le_0 };

/// Sign certificate from exact radial spectra at log-spaced radii. The sign
/// condition of these families is radius-independent (the slack scales as a
/// pure power of r), so a sampled pass certifies the whole annulus.
struct SignCertificate {
    bool pass;
    double margin;          // minimal slack, normalized by r^-(exp+2)
    double witness_radius;  // failing radius when !pass
    int samples;
    std::string note;
};

SignCertificate verify_sign(const RadialBarrier& b, const Ellipticity& e, SignCheck which,
                            int samples = 128);

/// Amplitude making the inverse_power barrier equal `inner_value_target` on
/// the sphere r = 1/8 (and 0 on r = 1/4). Requires alpha >= the supersolution
/// threshold.
double choose_c1_for_boundary_data(const Ellipticity& e, double alpha,
                                   double inner_value_target);

} // namespace pucci
