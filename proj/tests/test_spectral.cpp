#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "parampli/detail/linalg.hpp"
#include "parampli/model.hpp"
#include "parampli/spectral.hpp"

using namespace parampli;
using C = std::complex<double>;

namespace {

    // Frozen golden values for (0.5, 0, 1) and (-1, 0, 1); every digit has
    // been cross-checked against the iterative oracle.
    constexpr double kOmegaRegion1 = 1.4450216222741974;
    constexpr double kGammaRegion1 = 0.91547118405767047;
    constexpr double kOmegaRegion2 = 1.272019649514069;
    constexpr double kGammaRegion2 = 0.78615137775742328;

    bool contains_exact(const std::array<C, 4>& set, C w)
    {
        return std::find(set.begin(), set.end(), w) != set.end();
    }

} // namespace

TEST_CASE("char_poly closed form at anchor points")
{
    const CharPoly decoupled = char_poly(make_params(1.0, 0.0, 0.0));
    CHECK(decoupled.b == -2.0);
    CHECK(decoupled.c == 1.0);

    const CharPoly region1 = char_poly(make_params(0.5, 0.0, 1.0));
    CHECK(region1.b == -1.25);
    CHECK(region1.c == -1.75);
}

TEST_CASE("char_poly matches the determinant at probe frequencies")
{
    for (const ModelParams p : {make_params(0.5, 0.4, 1.0), make_params(-2.0, 0.8, 1.2),
                                make_params(-0.7, 0.0, 0.3)}) {
        const CharPoly cp = char_poly(p);
        const auto m = detail::to_complex<double>(build_dynamics_matrix(p));
        for (const C w : {C(0.7, 0.3), C(-1.1, 0.9), C(0.0, 1.3), C(2.0, 0.0), C(-0.4, -1.7)}) {
            const C z = w * w;
            const C poly = z * z + cp.b * z + cp.c;
            auto a = m;
            for (std::size_t i = 0; i < 4; ++i) a(i, i) -= w;
            const C det = detail::determinant(a);
            CHECK(std::abs(poly - det) <= 1e-12 * std::max(1.0, std::abs(det)));
        }
    }
}

TEST_CASE("decoupled spectrum in canonical order")
{
    const Spectrum s = eigenfrequencies(make_params(0.5, 0.0, 0.0));
    CHECK(s.omegas[0] == C(-1.0, 0.0));
    CHECK(s.omegas[1] == C(-0.5, 0.0));
    CHECK(s.omegas[2] == C(0.5, 0.0));
    CHECK(s.omegas[3] == C(1.0, 0.0));
    CHECK(s.gap == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(s.near_defective);

    // Diagonal matrix: eigenvectors are the unit basis, one pivot per mode.
    const auto m = detail::to_complex<double>(build_dynamics_matrix(make_params(0.5, 0.0, 0.0)));
    for (std::size_t k = 0; k < 4; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) norm2 += std::norm(s.vectors(i, k));
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
        for (std::size_t i = 0; i < 4; ++i) {
            C mv{};
            for (std::size_t j = 0; j < 4; ++j) mv += m(i, j) * s.vectors(j, k);
            CHECK(std::abs(mv - s.omegas[k] * s.vectors(i, k)) <= 1e-12);
        }
    }
}

TEST_CASE("Region I spectrum: two real, two imaginary")
{
    const Spectrum s = eigenfrequencies(make_params(0.5, 0.0, 1.0));
    // Canonical order: negative-imag first, then reals by Re, then positive-imag.
    CHECK(s.omegas[0].real() == 0.0);
    CHECK(s.omegas[0].imag() == doctest::Approx(-kGammaRegion1).epsilon(1e-14));
    CHECK(s.omegas[1].imag() == 0.0);
    CHECK(s.omegas[1].real() == doctest::Approx(-kOmegaRegion1).epsilon(1e-14));
    CHECK(s.omegas[2].imag() == 0.0);
    CHECK(s.omegas[2].real() == doctest::Approx(kOmegaRegion1).epsilon(1e-14));
    CHECK(s.omegas[3].real() == 0.0);
    CHECK(s.omegas[3].imag() == doctest::Approx(kGammaRegion1).epsilon(1e-14));
}

TEST_CASE("Region II spectrum: exact conjugate quartet")
{
    const Spectrum s = eigenfrequencies(make_params(-1.0, 0.0, 1.0));
    CHECK(s.omegas[0].real() == doctest::Approx(-kOmegaRegion2).epsilon(1e-14));
    CHECK(s.omegas[0].imag() == doctest::Approx(-kGammaRegion2).epsilon(1e-14));
    // Closure under negation and conjugation holds exactly, not to tolerance.
    for (const C w : s.omegas) {
        CHECK(contains_exact(s.omegas, -w));
        CHECK(contains_exact(s.omegas, std::conj(w)));
    }
    const C sum = s.omegas[0] + s.omegas[1] + s.omegas[2] + s.omegas[3];
    CHECK(sum == C(0.0, 0.0));
}

TEST_CASE("closed form agrees with the iterative oracle")
{
    for (const ModelParams p :
         {make_params(0.5, 0.0, 1.0), make_params(-1.0, 0.0, 1.0), make_params(0.3, 0.4, 0.7),
          make_params(-2.0, 0.8, 1.1), make_params(0.9, 0.2, 0.1)}) {
        const auto closed = eigenfrequencies(p).omegas;
        const auto oracle = numeric_spectrum_oracle(build_dynamics_matrix(p));
        CHECK(multiset_distance(closed, oracle) <= 1e-9);
    }
}

TEST_CASE("eigenvector residuals and normalization")
{
    const Spectrum s = eigenfrequencies(make_params(0.5, 0.4, 1.0));
    const auto m = detail::to_complex<double>(build_dynamics_matrix(make_params(0.5, 0.4, 1.0)));
    for (std::size_t k = 0; k < 4; ++k) {
        double norm2 = 0.0;
        double residual2 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            norm2 += std::norm(s.vectors(i, k));
            C mv{};
            for (std::size_t j = 0; j < 4; ++j) mv += m(i, j) * s.vectors(j, k);
            residual2 += std::norm(mv - s.omegas[k] * s.vectors(i, k));
        }
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::sqrt(residual2) <= 1e-10);

        // Deterministic phase: first nonnegligible component positive real.
        for (std::size_t i = 0; i < 4; ++i) {
            if (std::abs(s.vectors(i, k)) <= 1e-9) continue;
            CHECK(s.vectors(i, k).real() > 0.0);
            CHECK(std::abs(s.vectors(i, k).imag()) <= 1e-12 * std::abs(s.vectors(i, k).real()));
            break;
        }
    }
}

TEST_CASE("exact threshold is flagged near-defective")
{
    // chi^2 = delta (1 + kappa) / 4 = 0.125: the Region-I exceptional point.
    const Spectrum s = eigenfrequencies(make_params(0.5, 0.0, std::sqrt(0.125)));
    CHECK(s.near_defective);
    CHECK(s.gap <= kDegeneracyGap);
}

TEST_CASE("semisimple double eigenvalues still get independent eigenvectors")
{
    // (1, 0, 0): diag(-1, 1, -1, 1), eigenvalues {-1, -1, 1, 1}.
    const Spectrum s = eigenfrequencies(make_params(1.0, 0.0, 0.0));
    CHECK(s.near_defective); // gap is zero; flag is about propagation, not rank
    CHECK(s.omegas[0] == C(-1.0, 0.0));
    CHECK(s.omegas[1] == C(-1.0, 0.0));
    CHECK(s.omegas[2] == C(1.0, 0.0));
    CHECK(s.omegas[3] == C(1.0, 0.0));
    for (std::size_t k = 0; k + 1 < 4; k += 2) {
        C dot{};
        for (std::size_t i = 0; i < 4; ++i)
            dot += std::conj(s.vectors(i, k)) * s.vectors(i, k + 1);
        CHECK(std::abs(dot) <= 1e-12); // repeated pair picks orthogonal basis columns
    }
}

TEST_CASE("eigenfrequency multiset closes under negation and conjugation")
{
    for (const ModelParams p : {make_params(0.5, 0.4, 1.0), make_params(-0.9, 0.8, 0.2),
                                make_params(-2.5, 0.0, 1.4)}) {
        const auto w = eigenfrequencies(p).omegas;
        CHECK(std::abs(w[0] + w[1] + w[2] + w[3]) <= 1e-15);
        for (const C v : w) {
            CHECK(contains_exact(w, -v));
            CHECK(contains_exact(w, std::conj(v)));
        }
    }
}

TEST_CASE("multiset distance pairs conjugate quartets correctly")
{
    // A sort-based matcher would pair these wrongly; the exact minimum over
    // permutations must be the tiny perturbation, not an O(1) mismatch.
    const std::array<C, 4> a = {C(1.0, 0.5), C(-1.0, 0.5), C(1.0, -0.5), C(-1.0, -0.5)};
    std::array<C, 4> b = {a[3], a[1], a[0], a[2]};
    for (auto& w : b) w += C(1e-12, -1e-12);
    CHECK(multiset_distance(a, b) <= 3e-12);
    CHECK(multiset_distance(a, a) == 0.0);

    std::array<C, 4> far = a;
    far[2] += C(0.25, 0.0);
    CHECK(multiset_distance(a, far) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("long double instantiation reproduces the double spectrum")
{
    const auto d = eigenfrequencies(make_params(0.5, 0.0, 1.0));
    const auto l = eigenfrequencies_t<long double>(make_params(0.5, 0.0, 1.0));
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(double(l.omegas[k].real()) - d.omegas[k].real()) <= 1e-15);
        CHECK(std::abs(double(l.omegas[k].imag()) - d.omegas[k].imag()) <= 1e-15);
    }
}
