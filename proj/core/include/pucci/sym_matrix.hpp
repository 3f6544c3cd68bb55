#pragma once

#include <array>
#include <vector>

#include "pucci/errors.hpp"

namespace pucci {

/// Dense symmetric n x n matrix, n in {2, 3}. Only the upper triangle is
/// stored (row-major), so symmetry holds by construction.
class SymMatrix {
public:
    SymMatrix(int dim, std::array<double, 6> upper);

    static SymMatrix zero(int dim);
    static SymMatrix identity(int dim);
    static SymMatrix diag2(double a, double b);
    static SymMatrix diag3(double a, double b, double c);
    /// 2x2 from entries [[a00, a01], [a01, a11]].
    static SymMatrix sym2(double a00, double a01, double a11);
    static SymMatrix sym3(double a00, double a01, double a02,
                          double a11, double a12, double a22);

    int dim() const { return dim_; }
    double operator()(int i, int j) const;
    double trace() const;
    double det() const;
    double frobenius_norm() const;

    SymMatrix operator+(const SymMatrix& o) const;
    SymMatrix operator-() const;
    SymMatrix operator*(double s) const;

private:
    int dim_;
    std::array<double, 6> u_{}; // n=2: [a00,a01,a11]; n=3: [a00,a01,a02,a11,a12,a22]
};

/// Eigenvalues of a symmetric matrix, sorted descending. Trace and determinant
/// of the source matrix are reproduced to 1e-10 relative accuracy.
struct Spectrum {
    std::vector<double> eigenvalues; // descending

    double min() const { return eigenvalues.back(); }
    double max() const { return eigenvalues.front(); }
};

/// Eigenvalue decomposition: closed form for n=2, cyclic Jacobi sweeps for n=3.
Spectrum spectrum(const SymMatrix& m);

/// Eigen-decomposition of a 2x2 symmetric matrix: eigenvalues kappa1 >= kappa2
/// and the angle of the kappa1 eigenvector, normalized to [0, pi).
struct EigenFrame2 {
    double kappa1;
    double kappa2;
    double angle;
};
EigenFrame2 eigen_frame2(const SymMatrix& m);

} // namespace pucci
