// linalg.hpp: fixed-size complex 4x4 kernel shared by the spectral and
// propagation code. Templated on the complex scalar so the same routines run
// in double, long double and quad instantiations.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace parampli::detail {

// Maps a real scalar to its complex companion. Wider scalar types plug in by
// specialising this trait (see quad.hpp).
template <class Real>
struct complex_for {
    using type = std::complex<Real>;
};

template <class Real>
using complex_t = typename complex_for<Real>::type;

template <class C>
struct Vec4 {
    std::array<C, 4> v{};

    C& operator[](std::size_t i) { return v[i]; }
    const C& operator[](std::size_t i) const { return v[i]; }
};

template <class C>
struct Mat4 {
    std::array<C, 16> a{};

    C& operator()(std::size_t i, std::size_t j) { return a[4 * i + j]; }
    const C& operator()(std::size_t i, std::size_t j) const { return a[4 * i + j]; }

    static Mat4 identity()
    {
        Mat4 m;
        for (std::size_t i = 0; i < 4; ++i) m(i, i) = C(1);
        return m;
    }
};

template <class C>
Mat4<C> operator*(const Mat4<C>& x, const Mat4<C>& y)
{
    Mat4<C> r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            const C xik = x(i, k);
            for (std::size_t j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

template <class C>
Vec4<C> operator*(const Mat4<C>& x, const Vec4<C>& y)
{
    Vec4<C> r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i] += x(i, j) * y[j];
    return r;
}

template <class C>
Mat4<C> operator-(const Mat4<C>& x, const Mat4<C>& y)
{
    Mat4<C> r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

template <class C>
Mat4<C> operator+(const Mat4<C>& x, const Mat4<C>& y)
{
    Mat4<C> r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

template <class C>
Mat4<C> transpose(const Mat4<C>& x)
{
    Mat4<C> r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = x(j, i);
    return r;
}

template <class C>
Mat4<C> conjugate(const Mat4<C>& x)
{
    using std::conj;
    Mat4<C> r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = conj(x.a[i]);
    return r;
}

template <class C, class Real>
Mat4<C> scaled(const Mat4<C>& x, Real s)
{
    Mat4<C> r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] * s;
    return r;
}

template <class C>
auto max_abs(const Mat4<C>& x)
{
    using std::abs;
    auto m = abs(x.a[0]);
    for (std::size_t i = 1; i < 16; ++i) {
        auto v = abs(x.a[i]);
        if (v > m) m = v;
    }
    return m;
}

template <class C>
auto max_abs_diff(const Mat4<C>& x, const Mat4<C>& y)
{
    using std::abs;
    auto m = abs(x.a[0] - y.a[0]);
    for (std::size_t i = 1; i < 16; ++i) {
        auto v = abs(x.a[i] - y.a[i]);
        if (v > m) m = v;
    }
    return m;
}

// Gauss-Jordan inverse with full pivoting. Deterministic pivot choice: the
// first entry of strictly largest magnitude in the remaining block.
template <class C>
Mat4<C> inverse(const Mat4<C>& x)
{
    using std::abs;
    Mat4<C> a = x;
    Mat4<C> b = Mat4<C>::identity();
    std::array<std::size_t, 4> col_of{0, 1, 2, 3}; // col_of[step] = pivot column

    std::array<bool, 4> row_done{}, col_done{};
    for (std::size_t step = 0; step < 4; ++step) {
        std::size_t pr = 0, pc = 0;
        auto best = abs(C(0));
        bool found = false;
        for (std::size_t i = 0; i < 4; ++i) {
            if (row_done[i]) continue;
            for (std::size_t j = 0; j < 4; ++j) {
                if (col_done[j]) continue;
                auto v = abs(a(i, j));
                if (!found || v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        }
        if (!(best > abs(C(0))))
            throw std::runtime_error("inverse: singular matrix");
        row_done[pr] = true;
        col_done[pc] = true;
        col_of[pc] = pr;

        const C piv = a(pr, pc);
        for (std::size_t j = 0; j < 4; ++j) {
            a(pr, j) = a(pr, j) / piv;
            b(pr, j) = b(pr, j) / piv;
        }
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == pr) continue;
            const C f = a(i, pc);
            if (f == C(0)) continue;
            for (std::size_t j = 0; j < 4; ++j) {
                a(i, j) -= f * a(pr, j);
                b(i, j) -= f * b(pr, j);
            }
        }
    }

    // Row col_of[j] of the reduced system carries the solution for unknown j.
    Mat4<C> inv;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) inv(j, k) = b(col_of[j], k);
    return inv;
}

template <class C>
C determinant(const Mat4<C>& x)
{
    using std::abs;
    Mat4<C> a = x;
    C det = C(1);
    std::array<bool, 4> row_done{}, col_done{};
    int swaps = 0;
    std::array<std::size_t, 4> prow{}, pcol{};
    for (std::size_t step = 0; step < 4; ++step) {
        std::size_t pr = 0, pc = 0;
        auto best = abs(C(0));
        bool found = false;
        for (std::size_t i = 0; i < 4; ++i) {
            if (row_done[i]) continue;
            for (std::size_t j = 0; j < 4; ++j) {
                if (col_done[j]) continue;
                auto v = abs(a(i, j));
                if (!found || v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        }
        if (!(best > abs(C(0)))) return C(0);
        row_done[pr] = true;
        col_done[pc] = true;
        prow[step] = pr;
        pcol[step] = pc;
        det *= a(pr, pc);
        for (std::size_t i = 0; i < 4; ++i) {
            if (row_done[i]) continue;
            const C f = a(i, pc) / a(pr, pc);
            if (f == C(0)) continue;
            for (std::size_t j = 0; j < 4; ++j)
                if (!col_done[j]) a(i, j) -= f * a(pr, j);
            a(i, pc) = C(0);
        }
    }
    // Sign of the implied row/column permutations.
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = s + 1; t < 4; ++t) {
            if (prow[t] < prow[s]) ++swaps;
            if (pcol[t] < pcol[s]) ++swaps;
        }
    return (swaps % 2 == 0) ? det : -det;
}

// One unit-norm null vector of a (numerically) singular matrix. Performs up
// to three full-pivot elimination steps; `occurrence` selects among the free
// columns when the null space has dimension > 1, so repeated eigenvalues get
// independent vectors. The leading nonzero component is rotated positive real.
template <class C, class Real>
Vec4<C> null_vector(const Mat4<C>& x, std::size_t occurrence, Real rank_tol)
{
    using std::abs;
    Mat4<C> a = x;
    const auto scale = max_abs(a);
    std::array<bool, 4> row_done{}, col_done{};
    std::array<std::size_t, 4> pivot_row_of_col{};
    std::size_t rank = 0;

    for (std::size_t step = 0; step < 3; ++step) {
        std::size_t pr = 0, pc = 0;
        auto best = abs(C(0));
        bool found = false;
        for (std::size_t i = 0; i < 4; ++i) {
            if (row_done[i]) continue;
            for (std::size_t j = 0; j < 4; ++j) {
                if (col_done[j]) continue;
                auto v = abs(a(i, j));
                if (!found || v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        }
        if (!(best > rank_tol * scale)) break; // remaining block is noise
        row_done[pr] = true;
        col_done[pc] = true;
        pivot_row_of_col[pc] = pr;
        ++rank;
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == pr) continue;
            const C f = a(i, pc) / a(pr, pc);
            if (f == C(0)) continue;
            for (std::size_t j = 0; j < 4; ++j) a(i, j) -= f * a(pr, j);
            a(i, pc) = C(0);
        }
    }

    // Free column for this occurrence (clamped to the last one available).
    std::array<std::size_t, 4> free_cols{};
    std::size_t n_free = 0;
    for (std::size_t j = 0; j < 4; ++j)
        if (!col_done[j]) free_cols[n_free++] = j;
    const std::size_t fc = free_cols[occurrence < n_free ? occurrence : n_free - 1];

    Vec4<C> v;
    v[fc] = C(1);
    for (std::size_t j = 0; j < 4; ++j) {
        if (!col_done[j]) continue;
        const std::size_t pr = pivot_row_of_col[j];
        v[j] = -a(pr, fc) / a(pr, j);
    }

    using std::sqrt;
    Real nrm2 = Real(0);
    for (std::size_t i = 0; i < 4; ++i) {
        auto m = abs(v[i]);
        nrm2 += m * m;
    }
    const Real nrm = sqrt(nrm2);
    for (std::size_t i = 0; i < 4; ++i) v[i] = v[i] / nrm;

    // Phase convention: first component with nonnegligible magnitude is made
    // positive real.
    using std::conj;
    for (std::size_t i = 0; i < 4; ++i) {
        const Real m = abs(v[i]);
        if (m > Real(1e-9)) {
            const C phase = conj(v[i]) / m;
            for (std::size_t k = 0; k < 4; ++k) v[k] = v[k] * phase;
            break;
        }
    }
    return v;
}

} // namespace parampli::detail
