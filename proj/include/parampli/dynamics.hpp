// dynamics.hpp: propagator G(t) = exp(iMt), Gaussian moment propagation
// from the vacuum (x) coherent initial state, and field intensities.
//
// Two routes build G: eigendecomposition U diag(e^{i w_k t}) U^{-1} from the
// spectral module, and scaling-and-squaring Taylor summation of exp(iMt).
// Near-defective spectra (gap <= kDegeneracyGap) always take the series
// route; elsewhere the two must agree and the pair is the library's core
// cross-check.
#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "parampli/detail/linalg.hpp"
#include "parampli/errors.hpp"
#include "parampli/model.hpp"
#include "parampli/spectral.hpp"

namespace parampli {

enum class PropagatorMethod { eigendecomposition, series };

template <class Real>
struct PropagatorT {
    detail::Mat4<detail::complex_t<Real>> g;
    Real t{};
    PropagatorMethod method{PropagatorMethod::eigendecomposition};
};

using Propagator = PropagatorT<double>;

template <class Real>
struct CovarianceStateT {
    detail::Vec4<detail::complex_t<Real>> mean; // <x_i>
    detail::Mat4<detail::complex_t<Real>> cov;  // <x_i x_j> - <x_i><x_j>, unsymmetrized
};

using CovarianceState = CovarianceStateT<double>;

struct IntensityRecord {
    double t{};
    double i_atom{};
    double i_light{};
};

// --- series propagator -----------------------------------------------------

namespace detail {

    // Truncation threshold: 1e-16 relative in double; scales with the
    // working precision otherwise so wide instantiations keep their digits.
    template <class Real>
    Real series_rtol()
    {
        if constexpr (std::is_same_v<Real, double>)
            return Real(1e-16);
        else
            return std::numeric_limits<Real>::epsilon();
    }

    template <class C, class Real>
    Real one_norm(const Mat4<C>& a)
    {
        using std::abs;
        Real worst = Real(0);
        for (std::size_t j = 0; j < 4; ++j) {
            Real col = Real(0);
            for (std::size_t i = 0; i < 4; ++i) col += abs(a(i, j));
            if (col > worst) worst = col;
        }
        return worst;
    }

} // namespace detail

template <class Real>
PropagatorT<Real> propagator_series_oracle_t(const DynamicsMatrix& matrix, Real t)
{
    using C = detail::complex_t<Real>;
    using detail::Mat4;

    Mat4<C> a;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = C(Real(0), Real(matrix(i, j)) * t);

    // Scale until the 1-norm is <= 0.5, sum the Taylor series, square back.
    int squarings = 0;
    for (Real nrm = detail::one_norm<C, Real>(a); nrm > Real(0.5); nrm /= Real(2))
        ++squarings;
    Mat4<C> b = a;
    for (int s = 0; s < squarings; ++s) b = detail::scaled(b, Real(0.5));

    Mat4<C> sum = Mat4<C>::identity();
    Mat4<C> term = Mat4<C>::identity();
    const Real rtol = detail::series_rtol<Real>();
    bool converged = false;
    for (int k = 1; k <= 64; ++k) {
        term = detail::scaled(term * b, Real(1) / Real(k));
        sum = sum + term;
        if (detail::max_abs(term) < rtol * detail::max_abs(sum)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw InconsistencyError("propagator_series_oracle: Taylor sum did not converge");
    for (int s = 0; s < squarings; ++s) sum = sum * sum;

    return {sum, t, PropagatorMethod::series};
}

inline Propagator propagator_series_oracle(const DynamicsMatrix& matrix, double t)
{
    return propagator_series_oracle_t<double>(matrix, t);
}

// --- eigendecomposition propagator ------------------------------------------

// Caches the spectral data so time grids cost two 4x4 multiplies per point.
template <class Real>
class EvolutionT {
public:
    explicit EvolutionT(const ModelParams& params)
        : matrix_(build_dynamics_matrix(params)), spectrum_(eigenfrequencies_t<Real>(params))
    {
        if (!spectrum_.near_defective) {
            u_ = spectrum_.vectors;
            uinv_ = detail::inverse(u_);
        }
    }

    const SpectrumT<Real>& spectrum() const { return spectrum_; }
    const DynamicsMatrix& matrix() const { return matrix_; }

    PropagatorT<Real> at(Real t) const
    {
        using std::cos;
        using std::exp;
        using std::sin;
        using C = detail::complex_t<Real>;

        if (spectrum_.near_defective) return propagator_series_oracle_t<Real>(matrix_, t);

        detail::Mat4<C> ud;
        for (std::size_t k = 0; k < 4; ++k) {
            const Real wr = spectrum_.omegas[k].real();
            const Real wi = spectrum_.omegas[k].imag();
            // e^{i w t} with w = wr + i wi
            const Real mag = exp(-wi * t);
            const C phase(mag * cos(wr * t), mag * sin(wr * t));
            for (std::size_t i = 0; i < 4; ++i) ud(i, k) = u_(i, k) * phase;
        }
        return {ud * uinv_, t, PropagatorMethod::eigendecomposition};
    }

private:
    DynamicsMatrix matrix_;
    SpectrumT<Real> spectrum_;
    detail::Mat4<detail::complex_t<Real>> u_, uinv_;
};

using Evolution = EvolutionT<double>;

template <class Real>
PropagatorT<Real> propagator_t(const ModelParams& params, Real t)
{
    using std::isfinite;
    if (!isfinite(t)) throw std::invalid_argument("propagator: t must be finite");
    return EvolutionT<Real>(params).at(t);
}

inline Propagator propagator(const ModelParams& params, double t)
{
    return propagator_t<double>(params, t);
}

// --- moments and intensities -------------------------------------------------

template <class Real>
CovarianceStateT<Real> evolve_moments(const PropagatorT<Real>& g, const InitialState& init)
{
    using std::conj;
    using C = detail::complex_t<Real>;

    const C alpha(Real(init.alpha.real()), Real(init.alpha.imag()));
    detail::Vec4<C> mean0;
    mean0[2] = alpha;
    mean0[3] = conj(alpha);
    detail::Mat4<C> cov0;
    cov0(0, 1) = C(1); // <c c+> vacuum
    cov0(2, 3) = C(1); // <a a+> coherent, centered

    CovarianceStateT<Real> out;
    out.mean = g.g * mean0;
    out.cov = g.g * cov0 * detail::transpose(g.g);
    return out;
}

// I_i(t) = |G_i2|^2 + |G_i4|^2 + |G_i3 a + G_i4 conj(a)|^2, rows i = 1 (atom)
// and i = 3 (light) in 1-based operator order.
IntensityRecord intensity(const Propagator& g, std::complex<double> alpha);

// Same numbers reconstructed from moments: <x+x> = cov + |mean|^2.
// Ties the intensity formula to the moment machinery; used as an oracle.
std::pair<double, double> intensity_from_moments(const CovarianceState& state);

// Fresh per-point evaluation; no step-to-step error accumulation.
std::vector<IntensityRecord> intensity_series(const ModelParams& params,
                                              std::complex<double> alpha,
                                              const std::vector<double>& t_grid);

// --- structural residuals ----------------------------------------------------

// C = [[0,1,0,0],[-1,0,0,0],[0,0,0,1],[0,0,-1,0]]: the commutator table of
// (c, c+, a, a+). G C G^T = C expresses commutator preservation.
template <class Real>
detail::Mat4<detail::complex_t<Real>> commutator_matrix()
{
    using C = detail::complex_t<Real>;
    detail::Mat4<C> m;
    m(0, 1) = C(1);
    m(1, 0) = C(-1);
    m(2, 3) = C(1);
    m(3, 2) = C(-1);
    return m;
}

template <class Real>
Real symplectic_residual(const detail::Mat4<detail::complex_t<Real>>& g)
{
    const auto c = commutator_matrix<Real>();
    return detail::max_abs_diff(g * c * detail::transpose(g), c);
}

// G = S conj(G) S with S the (1<->2, 3<->4) permutation.
template <class Real>
Real conjugation_residual(const detail::Mat4<detail::complex_t<Real>>& g)
{
    using std::abs;
    using std::conj;
    constexpr std::size_t perm[4] = {1, 0, 3, 2};
    Real worst = Real(0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const auto diff = abs(g(i, j) - conj(g(perm[i], perm[j])));
            if (diff > worst) worst = diff;
        }
    return worst;
}

} // namespace parampli
