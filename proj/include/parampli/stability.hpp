// stability.hpp: instability thresholds, regime classification through two
// independent routes, and boundary tracing for the instability map.
//
// Region I (delta > 0): chi^2 > delta (1 + kappa) / 4, one growing mode.
// Region II (delta < 0): chi^2 > (1 - kappa^2 - delta^2)^2 / (16 |delta| (1 - kappa)),
// a counter-rotating growing pair. No finite threshold exists at delta = 0.
#pragma once

#include <optional>
#include <vector>

#include "parampli/model.hpp"
#include "parampli/spectral.hpp"

namespace parampli {

enum class RegimeTag { Stable, RegionI, RegionII, NearThreshold };

const char* to_string(RegimeTag tag);

struct Regime {
    RegimeTag tag{RegimeTag::Stable};
    double omega_rot{}; // max |Re w_k|
    double gamma{};     // max Im w_k, 0 when stable
};

// Defaults: well above closed-form arithmetic noise, well below any growth
// rate or threshold distance of interest.
inline constexpr double kClassifyTol = 1e-9;
inline constexpr double kNearThresholdMargin = 1e-6;

// Critical chi^2 at (delta, kappa); nullopt at delta = 0.
std::optional<double> threshold_chi_squared(double delta, double kappa);

// Inequality route: compares chi^2 against the analytic threshold.
// |chi^2 - threshold| <= margin (and all of delta = 0) reports NearThreshold.
Regime classify_analytic(const ModelParams& params, double margin = kNearThresholdMargin);

// Pattern route: reads the regime off the eigenvalue shape. Throws
// std::invalid_argument on a flagged spectrum and InconsistencyError when
// the shape matches none of the three patterns within tol.
Regime classify_spectral(const SpectrumT<double>& spectrum, double tol = kClassifyTol);

double growth_rate(const SpectrumT<double>& spectrum);

struct BoundaryPoint {
    double delta{};
    double chi2_analytic{};
    double chi2_bisect{};
};

struct BoundaryCurve {
    double kappa{};
    std::vector<BoundaryPoint> points;
};

// Uniform delta grid (delta = 0 skipped); each analytic value is re-derived
// by bisecting the spectral instability indicator in chi^2 and both are
// recorded. Disagreement beyond 1e-6 throws InconsistencyError.
BoundaryCurve trace_boundary(double kappa, double delta_min, double delta_max, int n_points);

} // namespace parampli
