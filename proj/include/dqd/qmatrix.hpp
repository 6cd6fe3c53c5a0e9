// qmatrix.hpp - fixed-size real matrices (2x2, 4x4) and the few dense
// operations the model needs: Jacobi eigensolver, PSD square root, Kronecker
// product.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace dqd {

/// Input failed a structural check (non-finite entry, asymmetry, bad range...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix expected to be positive semidefinite has a clearly negative eigenvalue.
class NotPsdError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPsdClamp = 1e-12;

template <std::size_t N>
using Vec = std::array<double, N>;

using Vec2 = Vec<2>;
using Vec4 = Vec<4>;

/// Dense row-major N x N real matrix.
template <std::size_t N>
struct Mat {
    std::array<double, N * N> a{};

    static constexpr std::size_t size() { return N; }

    constexpr double& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
    constexpr double operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

    static constexpr Mat zero() { return Mat{}; }

    static constexpr Mat identity() {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static constexpr Mat diag(const Vec<N>& d) {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    /// Row-major nested initializer: Mat<2>::rows({{1, 2}, {3, 4}}).
    static Mat rows(std::initializer_list<std::initializer_list<double>> r) {
        if (r.size() != N) throw ValidationError("Mat::rows: wrong row count");
        Mat m;
        std::size_t i = 0;
        for (const auto& row : r) {
            if (row.size() != N) throw ValidationError("Mat::rows: wrong column count");
            std::size_t j = 0;
            for (double v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    friend constexpr bool operator==(const Mat&, const Mat&) = default;
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <std::size_t N>
Mat<N> operator+(const Mat<N>& x, const Mat<N>& y) {
    Mat<N> r;
    for (std::size_t k = 0; k < N * N; ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
}

template <std::size_t N>
Mat<N> operator-(const Mat<N>& x, const Mat<N>& y) {
    Mat<N> r;
    for (std::size_t k = 0; k < N * N; ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
}

template <std::size_t N>
Mat<N> operator*(double s, const Mat<N>& x) {
    Mat<N> r;
    for (std::size_t k = 0; k < N * N; ++k) r.a[k] = s * x.a[k];
    return r;
}

template <std::size_t N>
Mat<N> operator*(const Mat<N>& x, const Mat<N>& y) {
    Mat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const double xik = x(i, k);
            for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

template <std::size_t N>
Vec<N> operator*(const Mat<N>& x, const Vec<N>& v) {
    Vec<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[i] += x(i, j) * v[j];
    return r;
}

template <std::size_t N>
Mat<N> transpose(const Mat<N>& x) {
    Mat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(j, i) = x(i, j);
    return r;
}

template <std::size_t N>
double trace(const Mat<N>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += x(i, i);
    return s;
}

/// Largest absolute entry.
template <std::size_t N>
double max_abs(const Mat<N>& x) {
    double m = 0.0;
    for (double v : x.a) m = std::max(m, v < 0 ? -v : v);
    return m;
}

template <std::size_t N>
double dot(const Vec<N>& x, const Vec<N>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += x[i] * y[i];
    return s;
}

/// |x><x|
template <std::size_t N>
Mat<N> outer(const Vec<N>& x) {
    Mat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = x[i] * x[j];
    return r;
}

template <std::size_t N>
Vec<N> column(const Mat<N>& x, std::size_t j) {
    Vec<N> c{};
    for (std::size_t i = 0; i < N; ++i) c[i] = x(i, j);
    return c;
}

template <std::size_t N>
bool all_finite(const Mat<N>& x);

/// Throws ValidationError on non-finite entries or asymmetry beyond
/// kSymmetryTol * max(1, max_abs(x)).
template <std::size_t N>
void require_symmetric(const Mat<N>& x, const char* what = "matrix");

/// Eigen-decomposition of a real symmetric matrix. values ascending; column j
/// of `vectors` is the eigenvector for values[j].
template <std::size_t N>
struct EigenDecomp {
    Vec<N> values{};
    Mat<N> vectors{};
};

using EigenDecomp2 = EigenDecomp<2>;
using EigenDecomp4 = EigenDecomp<4>;

/// Cyclic Jacobi. Converges when the off-diagonal Frobenius norm drops below
/// 1e-14 * max(1, ||M||_F); gives up after 100 sweeps. Stable sort keeps the
/// Jacobi order for ties.
template <std::size_t N>
EigenDecomp<N> eig_sym(const Mat<N>& m);

/// V diag(f(values)) V^T
template <std::size_t N, class F>
Mat<N> spectral_map(const EigenDecomp<N>& e, F&& f) {
    Mat<N> r;
    for (std::size_t k = 0; k < N; ++k) {
        const double w = f(e.values[k]);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i) {
            const double vik = e.vectors(i, k) * w;
            for (std::size_t j = 0; j < N; ++j) r(i, j) += vik * e.vectors(j, k);
        }
    }
    return r;
}

/// Symmetric PSD square root. Eigenvalues in [-1e-12, 0) are clamped to zero;
/// anything more negative throws NotPsdError.
template <std::size_t N>
Mat<N> psd_sqrt(const Mat<N>& m);

/// Standard Kronecker product: block (i, j) of the result is a(i, j) * b.
Mat4 kron2(const Mat2& a, const Mat2& b);

namespace pauli {
inline Mat2 id() { return Mat2::identity(); }
inline Mat2 x() { return Mat2::rows({{0, 1}, {1, 0}}); }
inline Mat2 z() { return Mat2::rows({{1, 0}, {0, -1}}); }
/// Real part of sigma^y is zero; sigma^y (x) sigma^y is real and equals
/// -(i sigma^y)(x)(i sigma^y). This returns i*sigma^y = [[0,1],[-1,0]].
inline Mat2 iy() { return Mat2::rows({{0, 1}, {-1, 0}}); }
}  // namespace pauli

/// sigma^y (x) sigma^y, the two-qubit spin-flip operator (real).
Mat4 spin_flip();

/// 2x2 rotation [[cos, -sin], [sin, cos]].
Mat2 rotation(double theta);

}  // namespace dqd
