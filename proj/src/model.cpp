#include "parampli/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace parampli {

void validate(const ModelParams& params)
{
    if (!std::isfinite(params.delta) || !std::isfinite(params.kappa) ||
        !std::isfinite(params.chi))
        throw std::invalid_argument("model: parameters must be finite");
    if (params.chi < 0.0)
        throw std::invalid_argument("model: chi must be nonnegative");
    if (params.kappa < 0.0 || params.kappa >= 1.0)
        throw std::invalid_argument(
            "model: kappa must lie in [0, 1); kappa >= 1 is outside model validity");
}

ModelParams make_params(double delta, double kappa, double chi)
{
    ModelParams p{delta, kappa, chi};
    validate(p);
    return p;
}

ModelParams reduce_physical(const PhysicalInputs& in, double delta_physical)
{
    if (!std::isfinite(in.n_atoms) || !std::isfinite(in.coupling_product) ||
        !std::isfinite(in.optical_matrix_element) || !std::isfinite(in.collision_overlap) ||
        !std::isfinite(in.omega_m) || !std::isfinite(delta_physical))
        throw std::invalid_argument("reduce_physical: inputs must be finite");
    if (in.omega_m <= 0.0)
        throw std::invalid_argument("reduce_physical: omega_m must be positive");
    if (in.n_atoms < 0.0)
        throw std::invalid_argument("reduce_physical: n_atoms must be nonnegative");
    if (in.coupling_product < 0.0)
        throw std::invalid_argument("reduce_physical: coupling_product must be nonnegative");

    ModelParams p;
    p.chi = std::sqrt(in.n_atoms) * std::abs(in.optical_matrix_element) *
            in.coupling_product / in.omega_m;
    p.kappa = in.collision_overlap / in.omega_m;
    p.delta = delta_physical / in.omega_m;
    if (p.kappa >= 1.0)
        throw std::invalid_argument(
            "reduce_physical: collision_overlap/omega_m = " + std::to_string(p.kappa) +
            " is outside model validity (kappa must be < 1)");
    validate(p);
    return p;
}

DynamicsMatrix build_dynamics_matrix(const ModelParams& params)
{
    validate(params);
    const double d = params.delta;
    const double k = params.kappa;
    const double x = params.chi;
    DynamicsMatrix m;
    m.entries = {{{-1.0, -k, -x, -x},
                  {k, 1.0, x, x},
                  {-x, -x, -d, 0.0},
                  {x, x, 0.0, d}}};
    return m;
}

} // namespace parampli
