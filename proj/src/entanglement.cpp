#include "parampli/entanglement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "parampli/errors.hpp"

namespace parampli {

double y_from_covariances(const CovarianceState& state)
{
    return y_from_covariances_t<double>(state);
}

double y_closed_form(const Propagator& g)
{
    return y_closed_form_t<double>(g);
}

YRecord entanglement_point(const Evolution& evolution, double t)
{
    const Propagator g = evolution.at(t);
    const InitialState vacuum_coherent{}; // alpha = 0; Y is alpha-free
    YRecord rec;
    rec.t = t;
    rec.y_closed = y_closed_form(g);
    rec.y_covariance = y_from_covariances(evolve_moments(g, vacuum_coherent));
    rec.y = rec.y_closed;
    if (!std::isfinite(rec.y_closed) || !std::isfinite(rec.y_covariance))
        throw std::invalid_argument(
            "entanglement: propagator overflows double range at t = " + std::to_string(t));
    if (std::abs(rec.y_closed - rec.y_covariance) > 1e-10)
        throw InconsistencyError("entanglement: dual-path disagreement at t = " +
                                 std::to_string(t));
    return rec;
}

std::vector<YRecord> entanglement_series(const ModelParams& params,
                                         const std::vector<double>& t_grid)
{
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]))
            throw std::invalid_argument("entanglement_series: t grid must be finite");
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw std::invalid_argument("entanglement_series: t grid must be ascending");
    }

    const Evolution evo(params);
    std::vector<YRecord> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) out.push_back(entanglement_point(evo, t));
    return out;
}

} // namespace parampli
