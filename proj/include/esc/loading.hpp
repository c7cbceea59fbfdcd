#ifndef ESC_LOADING_HPP
#define ESC_LOADING_HPP

#include <complex>

namespace esc
{

using cplx = std::complex<double>;

// Far-field stresses, boundary traction and the complex parameters derived
// from them. Stresses are unit-agnostic; only ratios matter downstream.
struct LoadingParams {
    double sigma1_inf = 0.0;
    double sigma2_inf = 0.0;
    double tau_inf = 0.0;
    double p = 0.0;
    double tau = 0.0;

    // Tangential normal stress prescribed on every cavity boundary.
    double sigma = 0.0;

    cplx a;
    cplx b;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double beta_plus = 0.0;
    double beta_minus = 0.0;
    double gamma = 0.0;

    // b + conj(a) and b - conj(a).
    cplx b_plus_abar() const
    {
        return {alpha_plus, beta_plus};
    }
    cplx b_minus_abar() const
    {
        return {alpha_minus, beta_minus};
    }
};

// Relative tolerance used to classify |b| == |a|.
inline constexpr double gamma_unit_tolerance = 1e-12;

// Throws Error(null_loading) when a == 0.
LoadingParams derive_loading(double sigma1_inf, double sigma2_inf, double tau_inf, double p, double tau);

bool is_gamma_unit(const LoadingParams &load) noexcept;

} // namespace esc

#endif
