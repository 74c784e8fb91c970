#include "parampli/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace parampli {

IntensityRecord intensity(const Propagator& g, std::complex<double> alpha)
{
    const auto& m = g.g;
    IntensityRecord rec;
    rec.t = g.t;
    const std::complex<double> ac = std::conj(alpha);
    // 0-based columns: G_i2 -> (i,1), G_i3 -> (i,2), G_i4 -> (i,3)
    const auto row = [&](std::size_t i) {
        return std::norm(m(i, 1)) + std::norm(m(i, 3)) +
               std::norm(m(i, 2) * alpha + m(i, 3) * ac);
    };
    rec.i_atom = row(0);
    rec.i_light = row(2);
    return rec;
}

std::pair<double, double> intensity_from_moments(const CovarianceState& state)
{
    const double atom = state.cov(1, 0).real() + std::norm(state.mean[0]);
    const double light = state.cov(3, 2).real() + std::norm(state.mean[2]);
    return {atom, light};
}

std::vector<IntensityRecord> intensity_series(const ModelParams& params,
                                              std::complex<double> alpha,
                                              const std::vector<double>& t_grid)
{
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]))
            throw std::invalid_argument("intensity_series: t grid must be finite");
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw std::invalid_argument("intensity_series: t grid must be ascending");
    }
    const Evolution evo(params);
    std::vector<IntensityRecord> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) out.push_back(intensity(evo.at(t), alpha));
    return out;
}

} // namespace parampli
