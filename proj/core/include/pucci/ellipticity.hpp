#pragma once

#include "pucci/errors.hpp"

namespace pucci {

/// Ellipticity constants 0 < lambda <= Lambda together with the dimension.
/// Immutable value type; every operator in the library is parameterized by one.
struct Ellipticity {
    double lambda;
    double Lambda;
    int dim;

    Ellipticity(double lam, double Lam, int n) : lambda(lam), Lambda(Lam), dim(n) {
        if (!(lam > 0.0) || !(Lam >= lam))
            throw InputError("Ellipticity: require 0 < lambda <= Lambda");
        if (n != 2 && n != 3)
            throw InputError("Ellipticity: dim must be 2 or 3");
    }

    bool isotropic() const { return lambda == Lambda; }
};

} // namespace pucci
