// qmatrix.cpp - Jacobi eigensolver and friends for 2x2 / 4x4 real matrices
#include <dqd/qmatrix.hpp>

#include <cmath>
#include <limits>
#include <numeric>

namespace dqd {

template <std::size_t N>
bool all_finite(const Mat<N>& x) {
    return std::all_of(x.a.begin(), x.a.end(), [](double v) { return std::isfinite(v); });
}

template <std::size_t N>
void require_symmetric(const Mat<N>& x, const char* what) {
    if (!all_finite(x)) throw ValidationError(std::string(what) + ": non-finite entry");
    const double tol = kSymmetryTol * std::max(1.0, max_abs(x));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (std::abs(x(i, j) - x(j, i)) > tol)
                throw ValidationError(std::string(what) + ": not symmetric");
}

template <std::size_t N>
EigenDecomp<N> eig_sym(const Mat<N>& m) {
    require_symmetric(m, "eig_sym");

    // Work on the exactly symmetrized copy.
    Mat<N> a;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    Mat<N> v = Mat<N>::identity();

    double frob = 0.0;
    for (double x : a.a) frob += x * x;
    const double threshold = 1e-14 * std::max(1.0, std::sqrt(frob));
    constexpr double eps = std::numeric_limits<double>::epsilon();

    auto off_norm = [&a] {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    // Sweep until the off-diagonal norm is below threshold and no element is
    // large relative to its own diagonal pair; the second condition keeps
    // tiny eigenvalues (near-pure density matrices) accurate.
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                if (std::abs(apq) <= eps * std::sqrt(std::abs(a(p, p)) * std::abs(a(q, q))) && off_norm() <= threshold) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                rotated = true;
                // Rutishauser's stable rotation.
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < N; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        if (!rotated) break;
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenDecomp<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

template <std::size_t N>
Mat<N> psd_sqrt(const Mat<N>& m) {
    const auto e = eig_sym(m);
    for (double w : e.values)
        if (w < -kPsdClamp) throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(w) + " < 0");
    return spectral_map(e, [](double w) { return w > 0.0 ? std::sqrt(w) : 0.0; });
}

Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

Mat4 spin_flip() {
    return -1.0 * kron2(pauli::iy(), pauli::iy());
}

Mat2 rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return Mat2::rows({{c, -s}, {s, c}});
}

template bool all_finite<2>(const Mat<2>&);
template bool all_finite<4>(const Mat<4>&);
template void require_symmetric<2>(const Mat<2>&, const char*);
template void require_symmetric<4>(const Mat<4>&, const char*);
template EigenDecomp<2> eig_sym<2>(const Mat<2>&);
template EigenDecomp<4> eig_sym<4>(const Mat<4>&);
template Mat<2> psd_sqrt<2>(const Mat<2>&);
template Mat<4> psd_sqrt<4>(const Mat<4>&);

}  // namespace dqd
