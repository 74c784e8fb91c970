#include "parampli/stability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "parampli/errors.hpp"

namespace parampli {

namespace {

    void rates_from_spectrum(const Spectrum& s, Regime& r)
    {
        double max_re = 0.0, max_im = 0.0;
        for (const auto& w : s.omegas) {
            max_re = std::max(max_re, std::abs(w.real()));
            max_im = std::max(max_im, w.imag());
        }
        r.omega_rot = max_re;
        r.gamma = std::max(max_im, 0.0);
    }

} // namespace

const char* to_string(RegimeTag tag)
{
    switch (tag) {
    case RegimeTag::Stable: return "stable";
    case RegimeTag::RegionI: return "region_i";
    case RegimeTag::RegionII: return "region_ii";
    case RegimeTag::NearThreshold: return "near_threshold";
    }
    return "unknown";
}

std::optional<double> threshold_chi_squared(double delta, double kappa)
{
    if (!std::isfinite(delta) || !std::isfinite(kappa))
        throw std::invalid_argument("threshold_chi_squared: arguments must be finite");
    if (kappa < 0.0 || kappa >= 1.0)
        throw std::invalid_argument("threshold_chi_squared: kappa must lie in [0, 1)");
    if (delta == 0.0) return std::nullopt;
    if (delta > 0.0) return delta * (1.0 + kappa) / 4.0;
    const double u = 1.0 - kappa * kappa - delta * delta;
    return u * u / (16.0 * std::abs(delta) * (1.0 - kappa));
}

Regime classify_analytic(const ModelParams& params, double margin)
{
    validate(params);
    Regime r;
    rates_from_spectrum(eigenfrequencies(params), r);

    const auto threshold = threshold_chi_squared(params.delta, params.kappa);
    if (!threshold) {
        r.tag = RegimeTag::NearThreshold; // delta = 0: boundary of both regimes
        return r;
    }
    const double chi2 = params.chi * params.chi;
    if (std::abs(chi2 - *threshold) <= margin) {
        r.tag = RegimeTag::NearThreshold;
        return r;
    }
    if (chi2 > *threshold) {
        r.tag = params.delta > 0.0 ? RegimeTag::RegionI : RegimeTag::RegionII;
        return r;
    }
    r.tag = RegimeTag::Stable;
    r.gamma = 0.0;
    return r;
}

Regime classify_spectral(const SpectrumT<double>& spectrum, double tol)
{
    if (spectrum.near_defective)
        throw std::invalid_argument(
            "classify_spectral: spectrum is flagged near-defective (gap " +
            std::to_string(spectrum.gap) + ")");

    int n_real = 0, n_imag = 0, n_full = 0;
    double max_re = 0.0, max_im = 0.0;
    for (const auto& w : spectrum.omegas) {
        const bool re_small = std::abs(w.real()) <= tol;
        const bool im_small = std::abs(w.imag()) <= tol;
        if (im_small) ++n_real;
        if (re_small && !im_small) ++n_imag;
        if (!re_small && !im_small) ++n_full;
        max_re = std::max(max_re, std::abs(w.real()));
        max_im = std::max(max_im, w.imag());
    }

    Regime r;
    r.omega_rot = max_re;
    if (n_real == 4) {
        r.tag = RegimeTag::Stable;
        r.gamma = 0.0;
        return r;
    }
    r.gamma = std::max(max_im, 0.0);
    if (n_real == 2 && n_imag == 2) {
        r.tag = RegimeTag::RegionI;
        return r;
    }
    if (n_full == 4) {
        r.tag = RegimeTag::RegionII;
        return r;
    }
    throw InconsistencyError(
        "classify_spectral: eigenvalue pattern matches no regime within tol");
}

double growth_rate(const SpectrumT<double>& spectrum)
{
    double g = 0.0;
    for (const auto& w : spectrum.omegas) g = std::max(g, w.imag());
    return g;
}

BoundaryCurve trace_boundary(double kappa, double delta_min, double delta_max, int n_points)
{
    if (!std::isfinite(delta_min) || !std::isfinite(delta_max) || delta_min >= delta_max)
        throw std::invalid_argument("trace_boundary: need finite delta_min < delta_max");
    if (n_points < 2)
        throw std::invalid_argument("trace_boundary: n_points must be >= 2");
    if (!std::isfinite(kappa) || kappa < 0.0 || kappa >= 1.0)
        throw std::invalid_argument("trace_boundary: kappa must lie in [0, 1)");

    const auto unstable_at = [&](double delta, double chi2) {
        const ModelParams p{delta, kappa, std::sqrt(chi2)};
        return growth_rate(eigenfrequencies(p)) > kClassifyTol;
    };

    BoundaryCurve curve;
    curve.kappa = kappa;
    curve.points.reserve(std::size_t(n_points));
    for (int i = 0; i < n_points; ++i) {
        // Endpoints are pinned exactly; the affine form can land 1 ulp off.
        const double delta =
            i + 1 == n_points
                ? delta_max
                : delta_min + (delta_max - delta_min) * double(i) / double(n_points - 1);
        if (std::abs(delta) < 1e-12) continue; // no finite threshold at delta = 0
        const double analytic = *threshold_chi_squared(delta, kappa);

        double lo = 0.0; // spectrum is stable at chi = 0 for every delta != 0
        double hi = std::max(2.0 * analytic, analytic + 1.0);
        if (unstable_at(delta, lo))
            throw InconsistencyError("trace_boundary: unstable at chi = 0");
        int widen = 0;
        while (!unstable_at(delta, hi)) {
            hi *= 2.0;
            if (++widen > 60)
                throw InconsistencyError("trace_boundary: failed to bracket threshold");
        }
        while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            (unstable_at(delta, mid) ? hi : lo) = mid;
        }
        const double bisect = 0.5 * (lo + hi);
        if (std::abs(bisect - analytic) > 1e-6)
            throw InconsistencyError(
                "trace_boundary: analytic and bisected thresholds disagree at delta = " +
                std::to_string(delta));
        curve.points.push_back({delta, analytic, bisect});
    }
    return curve;
}

} // namespace parampli
