// model.hpp: dimensionless model parameters, physical-input reduction, and
// the 4x4 dynamics matrix M of d/dt (c, c+, a, a+) = i M (c, c+, a, a+).
#pragma once

#include <array>
#include <complex>

namespace parampli {

// Dimensionless parameters: detuning delta, collision parameter kappa,
// coupling chi, all in units of the trap mode frequency.
struct ModelParams {
    double delta{};
    double kappa{};
    double chi{};
};

// Throws std::invalid_argument unless all fields are finite, chi >= 0 and
// kappa is in [0, 1). The Region-II threshold divides by (1 - kappa), so
// kappa >= 1 is outside model validity, not merely unusual.
void validate(const ModelParams& params);

ModelParams make_params(double delta, double kappa, double chi);

// Physical-scale inputs. Trap-mode overlaps are accepted as precomputed
// numbers; this module never integrates wavefunctions.
struct PhysicalInputs {
    double n_atoms{};                // mean condensate number N >= 0
    double coupling_product{};       // |g1||g2||a2|/|Delta|, inverse time
    double optical_matrix_element{}; // A_0m, dimensionless
    double collision_overlap{};      // kappa_m, inverse time
    double omega_m{};                // trap level frequency > 0, the unit
};

// chi = sqrt(N) |A_0m| coupling_product / omega_m, kappa and delta divided
// by omega_m. delta_physical carries the same inverse-time units.
ModelParams reduce_physical(const PhysicalInputs& inputs, double delta_physical);

// Atomic mode fixed to vacuum; only the optical coherent amplitude varies.
struct InitialState {
    std::complex<double> alpha{};
};

struct DynamicsMatrix {
    std::array<std::array<double, 4>, 4> entries{};

    double operator()(std::size_t i, std::size_t j) const { return entries[i][j]; }
};

// Rows: [-1, -k, -x, -x], [k, 1, x, x], [-x, -x, -d, 0], [x, x, 0, d].
DynamicsMatrix build_dynamics_matrix(const ModelParams& params);

} // namespace parampli
