// spectral.hpp: eigenfrequencies of the dynamics matrix.
//
// det(M - wI) is an even quartic p(w) = w^4 + b w^2 + c with
//   b = -(d^2 + 1 - k^2)
//   c = d^2 (1 - k^2) - 4 d x^2 (1 - k)
// so the spectrum comes from one quadratic in z = w^2 plus square roots,
// with exactly-zero real or imaginary parts on the pure branches. The
// routines are templated on the real scalar; root extraction runs in a
// widened scalar so near-degenerate roots (gap just above the flag
// tolerance) keep full accuracy in the API precision.
#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>

#include "parampli/detail/linalg.hpp"
#include "parampli/model.hpp"

namespace parampli {

namespace detail {

    template <class Real>
    struct widened {
        using type = Real;
    };
    template <>
    struct widened<double> {
        using type = long double;
    };
    template <class Real>
    using widened_t = typename widened<Real>::type;

    template <class Real>
    Mat4<complex_t<Real>> to_complex(const DynamicsMatrix& m)
    {
        Mat4<complex_t<Real>> a;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                a(i, j) = complex_t<Real>(Real(m(i, j)), Real(0));
        return a;
    }

} // namespace detail

struct CharPoly {
    double b{};
    double c{};
};

CharPoly char_poly(const ModelParams& params);

// Spectra with a smaller minimum eigenvalue gap are flagged near-defective:
// the eigenvector matrix loses rank at thresholds (exceptional points) and
// eigendecomposition-based propagation must yield to the series method.
inline constexpr double kDegeneracyGap = 1e-6;

template <class Real>
struct SpectrumT {
    std::array<detail::complex_t<Real>, 4> omegas; // canonical order, see below
    detail::Mat4<detail::complex_t<Real>> vectors; // column k pairs with omegas[k]
    Real gap{};                                    // min pairwise |w_j - w_k|
    bool near_defective{};
};

using Spectrum = SpectrumT<double>;

// Canonical ordering: ascending by (sign of Im, Re, Im). Eigenvectors are
// unit norm with the first nonnegligible component rotated positive real;
// repeated eigenvalues pick successive free columns so the columns stay
// independent at semisimple degeneracies.
template <class Real>
SpectrumT<Real> eigenfrequencies_t(const ModelParams& params);

Spectrum eigenfrequencies(const ModelParams& params);

// Iterative dense eigensolve on the same matrix, sharing no code with the
// closed-form path. Unordered.
std::array<std::complex<double>, 4> numeric_spectrum_oracle(const DynamicsMatrix& matrix);

// min over pairings of max_k |a_k - b_sigma(k)|; exact over all 24
// permutations, since sort-based matching can mispair conjugate quartets.
double multiset_distance(const std::array<std::complex<double>, 4>& a,
                         const std::array<std::complex<double>, 4>& b);

// --- implementation -------------------------------------------------------

namespace detail {

    // Roots of z^2 + b z + c with the sign-safe quadratic formula.
    template <class W>
    void quadratic_roots_real_disc(W b, W c, W sqrt_disc, W& z1, W& z2)
    {
        const W q = (b >= W(0)) ? (-b - sqrt_disc) / W(2) : (-b + sqrt_disc) / W(2);
        if (q == W(0)) {
            z1 = W(0);
            z2 = W(0);
        } else {
            z1 = q;
            z2 = c / q;
        }
    }

} // namespace detail

template <class Real>
SpectrumT<Real> eigenfrequencies_t(const ModelParams& params)
{
    using std::abs;
    using std::conj;
    using std::sqrt;
    using W = detail::widened_t<Real>;
    using CW = detail::complex_t<W>;
    using C = detail::complex_t<Real>;

    validate(params);
    const W d = W(params.delta);
    const W k = W(params.kappa);
    const W x = W(params.chi);

    const W b = -(d * d + W(1) - k * k);
    const W c = d * d * (W(1) - k * k) - W(4) * d * x * x * (W(1) - k);
    const W disc = b * b - W(4) * c;

    std::array<CW, 4> w;
    if (disc >= W(0)) {
        W z1, z2;
        detail::quadratic_roots_real_disc(b, c, sqrt(disc), z1, z2);
        std::size_t n = 0;
        for (W z : {z1, z2}) {
            if (z >= W(0)) {
                const W r = sqrt(z);
                w[n++] = CW(r, W(0));
                w[n++] = CW(-r, W(0));
            } else {
                const W r = sqrt(-z);
                w[n++] = CW(W(0), r);
                w[n++] = CW(W(0), -r);
            }
        }
    } else {
        // Conjugate z pair; the quartet {+-W +- iG} closes exactly under
        // negation and conjugation by construction.
        const CW z(-b / W(2), sqrt(-disc) / W(2));
        const CW r = sqrt(z); // principal: first quadrant
        w[0] = r;
        w[1] = -r;
        w[2] = conj(r);
        w[3] = -conj(r);
    }

    SpectrumT<Real> s;
    for (std::size_t i = 0; i < 4; ++i)
        s.omegas[i] = C(Real(w[i].real()), Real(w[i].imag()));

    auto sign_of = [](Real v) { return int(v > Real(0)) - int(v < Real(0)); };
    std::sort(s.omegas.begin(), s.omegas.end(), [&](const C& p, const C& q) {
        const int sp = sign_of(p.imag());
        const int sq = sign_of(q.imag());
        if (sp != sq) return sp < sq;
        if (p.real() != q.real()) return p.real() < q.real();
        return p.imag() < q.imag();
    });

    bool first = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            const Real dist = abs(s.omegas[i] - s.omegas[j]);
            if (first || dist < s.gap) {
                s.gap = dist;
                first = false;
            }
        }
    s.near_defective = s.gap <= Real(kDegeneracyGap);

    const auto m = detail::to_complex<Real>(build_dynamics_matrix(params));
    for (std::size_t kk = 0; kk < 4; ++kk) {
        std::size_t occurrence = 0;
        for (std::size_t j = 0; j < kk; ++j)
            if (s.omegas[j] == s.omegas[kk]) ++occurrence;
        auto a = m;
        for (std::size_t i = 0; i < 4; ++i) a(i, i) -= s.omegas[kk];
        const auto v = detail::null_vector(a, occurrence, Real(1e-10));
        for (std::size_t i = 0; i < 4; ++i) s.vectors(i, kk) = v[i];
    }
    return s;
}

} // namespace parampli
