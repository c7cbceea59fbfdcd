#ifndef ESC_QUADRATURE_HPP
#define ESC_QUADRATURE_HPP

#include <esc/radicals.hpp>

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace esc
{

using cplx = std::complex<double>;

inline constexpr double default_tolerance = 1e-11;

// ESC_TOL when set to a positive number, default_tolerance otherwise.
double tolerance_from_env();

struct QuadResult {
    cplx value;
    double error = 0.0;
    int evaluations = 0;
};

// Integral over a real interval whose integrand may grow like
// |x - endpoint|^(-1/2) at the flagged ends.
struct SlitIntegral {
    double lo = 0.0;
    double hi = 0.0;
    std::function<cplx(double)> integrand;
    // Used instead of integrand when set: (xi, xi - lo, hi - xi) with both
    // distances exact near the ends.
    std::function<cplx(double, double, double)> integrand_offset;
    bool singular_lo = true;
    bool singular_hi = true;
    // Integration is refused when a known pole lies closer than 1e-8 to the path.
    std::optional<cplx> avoid;
};

// Cosine substitution at the flagged ends, Gauss-Legendre in the angle with
// node doubling until two levels agree, adaptive Gauss-Kronrod fallback.
// The error target is tol * max(1, |I|). Throws Error(non_convergence).
QuadResult integrate_slit(const SlitIntegral &si, double tol);

// Same scheme along the straight segment from -> to in the complex plane.
QuadResult integrate_segment(cplx from, cplx to, const std::function<cplx(cplx)> &integrand, bool singular_from,
                             bool singular_to, double tol, std::optional<cplx> avoid = std::nullopt);

// Globally adaptive Gauss-Kronrod (7/15) for smooth integrands on [a, b].
QuadResult integrate_smooth(const std::function<cplx(double)> &integrand, double a, double b, double tol);

// Running integrals of a smooth integrand: out[i] = int_{knots[0]}^{knots[i]}.
std::vector<cplx> cumulative_integral(const std::function<cplx(double)> &integrand, std::span<const double> knots,
                                      double tol);

// Clockwise loop integral around slit m (upper side left to right, lower
// side back), where side_integrand(xi, f) is evaluated with the one-sided
// branch value f. For h = g / f with g analytic this is 2 * upper-side integral.
cplx loop_integral(const Branch &branch, int m, const std::function<cplx(double, cplx)> &side_integrand, double tol);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule &gauss_legendre(int n);

} // namespace esc

#endif
