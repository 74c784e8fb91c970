// Independent spectrum oracle: iterative QR (real Schur) via Eigen. Shares
// nothing with the closed-form quartic path, which is the point.
#include <Eigen/Dense>

#include "parampli/errors.hpp"
#include "parampli/spectral.hpp"

namespace parampli {

std::array<std::complex<double>, 4> numeric_spectrum_oracle(const DynamicsMatrix& matrix)
{
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = matrix(std::size_t(i), std::size_t(j));

    Eigen::EigenSolver<Eigen::Matrix4d> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw InconsistencyError("numeric_spectrum_oracle: QR iteration did not converge");

    std::array<std::complex<double>, 4> out;
    for (int k = 0; k < 4; ++k) out[std::size_t(k)] = solver.eigenvalues()(k);
    return out;
}

} // namespace parampli
