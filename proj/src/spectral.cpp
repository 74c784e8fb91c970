#include "parampli/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace parampli {

CharPoly char_poly(const ModelParams& params)
{
    validate(params);
    const double d = params.delta;
    const double k = params.kappa;
    const double x = params.chi;
    CharPoly p;
    p.b = -(d * d + 1.0 - k * k);
    p.c = d * d * (1.0 - k * k) - 4.0 * d * x * x * (1.0 - k);
    return p;
}

Spectrum eigenfrequencies(const ModelParams& params)
{
    return eigenfrequencies_t<double>(params);
}

double multiset_distance(const std::array<std::complex<double>, 4>& a,
                         const std::array<std::complex<double>, 4>& b)
{
    std::array<std::size_t, 4> idx{0, 1, 2, 3};
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(a[k] - b[idx[k]]));
        best = std::min(best, worst);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

} // namespace parampli
