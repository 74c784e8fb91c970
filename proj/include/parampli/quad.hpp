// quad.hpp: quadruple-precision instantiation hook. Include this before
// instantiating the templated kernels with parampli::quad. Kept out of the
// core headers so only the translation units that need __float128 carry the
// libquadmath dependency.
//
// The sweep tolerances (1e-9 entrywise, 1e-10 symplectic) sit far below
// e^{2*Gamma*|t|} * eps_double at the sweep box's corners, so the cross-check
// sweeps run here instead; double keeps those digits only at moderate
// Gamma*t.
#pragma once

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include "parampli/detail/linalg.hpp"

namespace parampli {

using quad = boost::multiprecision::float128;
using quad_complex = boost::multiprecision::complex128;

namespace detail {

    template <>
    struct complex_for<quad> {
        using type = quad_complex;
    };

} // namespace detail

} // namespace parampli
