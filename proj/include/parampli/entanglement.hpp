// entanglement.hpp: atom-photon entanglement coefficient Y through two
// independent routes: the general cross-covariance ratio and the closed
// propagator form. Y is alpha-free: centered covariances of a coherent
// state do not see the displacement.
#pragma once

#include <vector>

#include "parampli/dynamics.hpp"
#include "parampli/model.hpp"

namespace parampli {

struct YRecord {
    double t{};
    double y{}; // canonical value (closed-form route)
    double y_closed{};
    double y_covariance{};
};

// Y = sqrt[(|c_ac+|^2 + |c_ac|^2) / (2 (n_a + 1/2)(n_c + 1/2))] with
// c_ac+ = cov(3,2), c_ac = cov(3,1), n_a = cov(4,3), n_c = cov(2,1)
// (1-based indices in the operator order c, c+, a, a+), all centered.
template <class Real>
Real y_from_covariances_t(const CovarianceStateT<Real>& state)
{
    using std::norm;
    using std::sqrt;
    const Real num = norm(state.cov(2, 1)) + norm(state.cov(2, 0));
    const Real na = state.cov(3, 2).real();
    const Real nc = state.cov(1, 0).real();
    const Real den = Real(2) * (na + Real(0.5)) * (nc + Real(0.5));
    return sqrt(num / den);
}

// The printed closed form in the propagator entries.
template <class Real>
Real y_closed_form_t(const PropagatorT<Real>& g)
{
    using std::conj;
    using std::norm;
    using std::sqrt;
    const auto& m = g.g;
    const Real num = norm(m(2, 0) * conj(m(0, 0)) + m(2, 2) * conj(m(0, 2))) +
                     norm(m(2, 0) * m(0, 1) + m(2, 2) * m(0, 3));
    const Real den = Real(2) * (norm(m(2, 1)) + norm(m(2, 3)) + Real(0.5)) *
                     (norm(m(0, 1)) + norm(m(0, 3)) + Real(0.5));
    return sqrt(num / den);
}

double y_from_covariances(const CovarianceState& state);
double y_closed_form(const Propagator& g);

// Evaluation through BOTH routes; throws InconsistencyError if they
// disagree beyond 1e-10 and std::invalid_argument if the propagator
// overflows the double range (t far beyond the default time grids).
YRecord entanglement_point(const Evolution& evolution, double t);

std::vector<YRecord> entanglement_series(const ModelParams& params,
                                         const std::vector<double>& t_grid);

} // namespace parampli
