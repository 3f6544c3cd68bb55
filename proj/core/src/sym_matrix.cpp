#include "pucci/sym_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace pucci {

SymMatrix::SymMatrix(int dim, std::array<double, 6> upper) : dim_(dim), u_(upper) {
    if (dim != 2 && dim != 3) throw InputError("SymMatrix: dim must be 2 or 3");
    const int n = dim == 2 ? 3 : 6;
    for (int k = 0; k < n; ++k)
        if (!std::isfinite(u_[k])) throw InputError("SymMatrix: non-finite entry");
}

SymMatrix SymMatrix::zero(int dim) { return SymMatrix(dim, {}); }

SymMatrix SymMatrix::identity(int dim) {
    return dim == 2 ? diag2(1, 1) : diag3(1, 1, 1);
}

SymMatrix SymMatrix::diag2(double a, double b) { return sym2(a, 0, b); }

SymMatrix SymMatrix::diag3(double a, double b, double c) {
    return sym3(a, 0, 0, b, 0, c);
}

SymMatrix SymMatrix::sym2(double a00, double a01, double a11) {
    return SymMatrix(2, {a00, a01, a11, 0, 0, 0});
}

SymMatrix SymMatrix::sym3(double a00, double a01, double a02,
                          double a11, double a12, double a22) {
    return SymMatrix(3, {a00, a01, a02, a11, a12, a22});
}

double SymMatrix::operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (dim_ == 2) {
        static constexpr int idx[2][2] = {{0, 1}, {1, 2}};
        return u_[idx[i][j]];
    }
    static constexpr int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return u_[idx[i][j]];
}

double SymMatrix::trace() const {
    return dim_ == 2 ? u_[0] + u_[2] : u_[0] + u_[3] + u_[5];
}

double SymMatrix::det() const {
    if (dim_ == 2) return u_[0] * u_[2] - u_[1] * u_[1];
    const SymMatrix& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2))
         - m(0, 1) * (m(0, 1) * m(2, 2) - m(1, 2) * m(0, 2))
         + m(0, 2) * (m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2));
}

double SymMatrix::frobenius_norm() const {
    double s = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
    if (o.dim_ != dim_) throw InputError("SymMatrix: dimension mismatch");
    std::array<double, 6> r{};
    for (int k = 0; k < 6; ++k) r[k] = u_[k] + o.u_[k];
    return SymMatrix(dim_, r);
}

SymMatrix SymMatrix::operator-() const {
    std::array<double, 6> r{};
    for (int k = 0; k < 6; ++k) r[k] = -u_[k];
    return SymMatrix(dim_, r);
}

SymMatrix SymMatrix::operator*(double s) const {
    std::array<double, 6> r{};
    for (int k = 0; k < 6; ++k) r[k] = s * u_[k];
    return SymMatrix(dim_, r);
}

namespace {

// One cyclic Jacobi sweep over a 3x3 symmetric matrix held as full storage.
void jacobi_rotate(double a[3][3], int p, int q) {
    if (a[p][q] == 0.0) return;
    const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
    const double t = (theta >= 0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
    a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    a[p][q] = a[q][p] = 0.0;
    for (int k = 0; k < 3; ++k) {
        if (k == p || k == q) continue;
        const double akp = a[k][p], akq = a[k][q];
        a[k][p] = a[p][k] = c * akp - s * akq;
        a[k][q] = a[q][k] = s * akp + c * akq;
    }
}

} // namespace

Spectrum spectrum(const SymMatrix& m) {
    if (m.dim() == 2) {
        const double a = m(0, 0), b = m(0, 1), c = m(1, 1);
        const double mean = 0.5 * (a + c);
        const double rad = std::hypot(0.5 * (a - c), b);
        return Spectrum{{mean + rad, mean - rad}};
    }
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
    const double scale = std::max(m.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 32; ++sweep) {
        const double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-16 * scale) break;
        jacobi_rotate(a, 0, 1);
        jacobi_rotate(a, 0, 2);
        jacobi_rotate(a, 1, 2);
    }
    std::vector<double> ev{a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return Spectrum{ev};
}

EigenFrame2 eigen_frame2(const SymMatrix& m) {
    if (m.dim() != 2) throw InputError("eigen_frame2: expects a 2x2 matrix");
    const double a = m(0, 0), b = m(0, 1), c = m(1, 1);
    const double mean = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    double ang = 0.0;
    if (rad > 0.0) {
        ang = 0.5 * std::atan2(2.0 * b, a - c);
        if (ang < 0) ang += M_PI;
        if (ang >= M_PI) ang -= M_PI;
    }
    return {mean + rad, mean - rad, ang};
}

} // namespace pucci
