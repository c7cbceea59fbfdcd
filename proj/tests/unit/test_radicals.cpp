#include "../support/generators.hpp"

#include <esc/error.hpp>
#include <esc/radicals.hpp>

#include <doctest.h>

#include <cmath>

using esc::cplx;
using esc::Side;

namespace
{

std::vector<std::vector<double>> root_sets()
{
    return {{-1.0, 1.0},
            {-100.0, -1.0, 1.0, 100.0},
            {-5.0, -1.0, -0.8, 0.8, 1.0, 5.0},
            {-1.0, -0.5, -0.4, 0.4, 0.5, 1.0},
            {-1.0, -0.7, -0.6, -0.2, -0.1, 0.3, 0.4, 1.0}};
}

} // namespace

TEST_CASE("branch squares to the polynomial and grows like zeta^n")
{
    esc_test::Gen g(7);
    for (const auto &roots : root_sets()) {
        const esc::Branch br(roots);
        for (int i = 0; i < 200; ++i) {
            const cplx z(g.uniform(-8.0, 8.0), g.uniform(-8.0, 8.0));
            const cplx f = br(z);
            CHECK(std::abs(f * f - br.poly(z)) <= 1e-12 * std::abs(br.poly(z)));
            // Conjugate symmetry.
            CHECK(std::abs(br(std::conj(z)) - std::conj(f)) <= 1e-13 * std::abs(f));
        }
        const cplx far = std::polar(1e7, 0.3);
        CHECK(std::abs(br(far) / std::pow(far, br.degree()) - 1.0) < 1e-6);
    }
}

TEST_CASE("branch is continuous off the cuts and real in the gaps")
{
    for (const auto &roots : root_sets()) {
        const esc::Branch br(roots);
        for (std::size_t j = 1; j + 1 < roots.size(); j += 2) {
            const double x = 0.5 * (roots[j] + roots[j + 1]);
            CHECK(std::abs(br(cplx(x, 0.0)).imag()) == 0.0);
            // Crossing a gap does not jump.
            CHECK(std::abs(br(cplx(x, 1e-9)) - br(cplx(x, -1e-9))) < 1e-6 * std::abs(br(cplx(x, 0.0))));
        }
    }
}

TEST_CASE("side values are the one-sided limits")
{
    for (const auto &roots : root_sets()) {
        const esc::Branch br(roots);
        for (int m = 0; m < br.slit_count(); ++m) {
            for (double t : {0.1, 0.5, 0.93}) {
                const double xi = br.slit_lo(m) + t * (br.slit_hi(m) - br.slit_lo(m));
                const cplx up = br.side_value(xi, Side::upper);
                const cplx lo = br.side_value(xi, Side::lower);
                CHECK(up.real() == 0.0);
                CHECK(lo == std::conj(up));
                const double eps = 1e-10 * (br.slit_hi(m) - br.slit_lo(m));
                CHECK(std::abs(br(cplx(xi, eps)) - up) < 1e-4 * std::abs(up));
                CHECK(std::abs(br(cplx(xi, -eps)) - lo) < 1e-4 * std::abs(up));
                CHECK(std::abs(up.imag()) == doctest::Approx(br.abs_value(xi)).epsilon(1e-14));
                CHECK(up.imag() * br.upper_sign(m) > 0.0);
                const cplx off = br.side_value_offset(m, xi - br.slit_lo(m), br.slit_hi(m) - xi, Side::upper);
                CHECK(std::abs(off - up) < 1e-13 * std::abs(up));
            }
        }
    }
}

TEST_CASE("one-cavity sign rule f(xi +- i0) = +-i|f|")
{
    const esc::Branch br({-1.0, 1.0});
    CHECK(br.side_value(0.3, Side::upper).imag() > 0.0);
    CHECK(br.side_value(0.3, Side::lower).imag() < 0.0);
}

TEST_CASE("two-slit upper bank signs")
{
    // Upper bank of the right slit is +i|f|, of the left slit -i|f|.
    const esc::Branch br({-10.0, -1.0, 1.0, 10.0});
    CHECK(br.side_value(5.0, Side::upper).imag() > 0.0);
    CHECK(br.side_value(-5.0, Side::upper).imag() < 0.0);
}

TEST_CASE("log derivative")
{
    const esc::Branch br({-5.0, -1.0, -0.8, 0.8, 1.0, 5.0});
    const cplx z(0.3, 0.7);
    const double h = 1e-6;
    const cplx fd = (br(z + h) - br(z - h)) / (2.0 * h) / br(z);
    CHECK(std::abs(br.log_derivative(z) - fd) < 1e-8);
    const double xi = 2.0;
    const double ld = br.log_derivative_offset(2, xi - 1.0, 5.0 - xi);
    CHECK(ld == doctest::Approx(br.log_derivative(cplx(xi, 0.0)).real()).epsilon(1e-14));
}

TEST_CASE("branch domain errors")
{
    const esc::Branch br({-1.0, 1.0});
    CHECK_THROWS_AS(br(cplx(0.2, 0.0)), esc::Error);
    CHECK_THROWS_AS(br.side_value(2.0, Side::upper), esc::Error);
    CHECK_NOTHROW(br(cplx(2.0, 0.0)));
}

TEST_CASE("endpoint normalization")
{
    const auto [same, changed0] = esc::normalize_endpoints({-1.0, -0.2, 0.1, 1.0});
    CHECK_FALSE(changed0);
    CHECK(same == std::vector<double>{-1.0, -0.2, 0.1, 1.0});
    const auto [mapped, changed] = esc::normalize_endpoints({0.0, 1.0, 3.0, 4.0});
    CHECK(changed);
    CHECK(mapped.front() == -1.0);
    CHECK(mapped.back() == 1.0);
    CHECK(mapped[1] == doctest::Approx(-0.5));
    CHECK_THROWS_AS(esc::Branch({0.0, 2.0, 1.0, 3.0}), esc::Error);
    CHECK_THROWS_AS(esc::Branch({0.0, 1.0, 1.0, 2.0}), esc::Error);
}
