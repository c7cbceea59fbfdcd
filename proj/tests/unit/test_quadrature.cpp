#include <esc/error.hpp>
#include <esc/quadrature.hpp>
#include <esc/radicals.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using esc::cplx;

namespace
{

// Independent reference: double-exponential quadrature, which copes with
// integrable endpoint singularities without any substitution.
double tanh_sinh(const std::function<double(double, double)> &f, double a, double b)
{
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(f, a, b);
}

} // namespace

TEST_CASE("chebyshev weight integrates to pi")
{
    for (auto [lo, hi] : {std::pair{-1.0, 1.0}, std::pair{1.0, 100.0}, std::pair{-1000.0, -1.0}}) {
        esc::SlitIntegral si;
        si.lo = lo;
        si.hi = hi;
        si.integrand_offset = [](double, double dl, double dh) { return cplx(1.0 / std::sqrt(dl * dh), 0.0); };
        CHECK(esc::integrate_slit(si, 1e-12).value.real() == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    }
}

TEST_CASE("slit integrals agree with tanh-sinh")
{
    esc::SlitIntegral si;
    si.lo = -1.0;
    si.hi = 1.0;
    si.integrand = [](double x) { return cplx(std::exp(x) / std::sqrt(1.0 - x * x), 0.0); };
    // Boost passes xc = a - x on the left half and b - x on the right half.
    const double ref = tanh_sinh(
        [](double x, double xc) {
            const double dl = xc < 0.0 ? -xc : x + 1.0;
            const double dh = xc > 0.0 ? xc : 1.0 - x;
            return std::exp(x) / std::sqrt(dl * dh);
        },
        -1.0, 1.0);
    CHECK(std::abs(esc::integrate_slit(si, 1e-12).value.real() - ref) < 1e-12);

    // One singular end only.
    si.singular_hi = false;
    si.lo = 0.0;
    si.hi = 2.0;
    si.integrand = [](double x) { return cplx(std::cos(x) / std::sqrt(x), 0.0); };
    const double ref2 = tanh_sinh([](double x, double) { return std::cos(x) / std::sqrt(x); }, 0.0, 2.0);
    CHECK(std::abs(esc::integrate_slit(si, 1e-12).value.real() - ref2) < 1e-11);
}

TEST_CASE("period integral of two slits against tanh-sinh and the elliptic integral")
{
    for (double k : {0.5, 0.1, 0.01, 0.001}) {
        const esc::Branch br({-1.0 / k, -1.0, 1.0, 1.0 / k});
        esc::SlitIntegral si;
        si.lo = 1.0;
        si.hi = 1.0 / k;
        si.integrand_offset = [&](double, double dl, double dh) {
            return cplx(1.0 / std::abs(br.side_value_offset(1, dl, dh, esc::Side::upper)), 0.0);
        };
        const double ours = esc::integrate_slit(si, 1e-12).value.real();
        // int_1^{1/k} dx / sqrt((x^2 - 1)(1/k^2 - x^2)) = k K(sqrt(1 - k^2)) = k pi / (2 agm(1, k)).
        // ellint_1 at a modulus this close to 1 loses digits, so it only backs up the larger k.
        double ga = 1.0, gb = k;
        for (int it = 0; it < 40; ++it) {
            const double m = 0.5 * (ga + gb);
            gb = std::sqrt(ga * gb);
            ga = m;
        }
        const double exact = k * std::numbers::pi / (2.0 * ga);
        if (k >= 0.01) {
            CHECK(std::abs(exact - k * boost::math::ellint_1(std::sqrt(1.0 - k * k))) < 1e-13 * exact);
        }
        const double ref = tanh_sinh(
            [&](double x, double xc) {
                const double dl = xc < 0.0 ? -xc : x - 1.0;
                const double dh = xc > 0.0 ? xc : 1.0 / k - x;
                return 1.0 / std::sqrt(dl * (x + 1.0) * dh * (x + 1.0 / k));
            },
            1.0, 1.0 / k);
        CHECK(std::abs(ours - exact) < 1e-12 * exact);
        CHECK(std::abs(ours - ref) < 1e-10 * exact);
    }
}

TEST_CASE("smooth and segment integrals")
{
    const auto r = esc::integrate_smooth([](double x) { return cplx(std::cos(x), std::sin(x)); }, 0.0, 3.0, 1e-13);
    CHECK(std::abs(r.value - cplx(std::sin(3.0), 1.0 - std::cos(3.0))) < 1e-13);

    // int of 1/z along a segment = log difference.
    const cplx a(1.0, 1.0), b(-2.0, 3.0);
    const cplx v = esc::integrate_segment(a, b, [](cplx z) { return 1.0 / z; }, false, false, 1e-13).value;
    CHECK(std::abs(v - (std::log(b) - std::log(a))) < 1e-12);
}

TEST_CASE("cumulative integral is additive")
{
    const std::vector<double> knots{0.0, 0.5, 1.0, 2.0};
    const auto out = esc::cumulative_integral([](double x) { return cplx(x * x, 0.0); }, knots, 1e-13);
    REQUIRE(out.size() == 4);
    CHECK(out[0] == cplx(0.0, 0.0));
    CHECK(out[3].real() == doctest::Approx(8.0 / 3.0).epsilon(1e-13));
    CHECK(out[1].real() == doctest::Approx(0.125 / 3.0).epsilon(1e-13));
}

TEST_CASE("quadrature preconditions")
{
    esc::SlitIntegral si;
    si.lo = 1.0;
    si.hi = 1.0;
    si.integrand = [](double) { return cplx(1.0, 0.0); };
    CHECK_THROWS_AS(esc::integrate_slit(si, 1e-12), esc::Error);
    si.hi = 2.0;
    CHECK_THROWS_AS(esc::integrate_slit(si, 0.0), esc::Error);
}
