#include <esc/error.hpp>
#include <esc/loading.hpp>

#include <cmath>
#include <string>

namespace esc
{

std::string_view error_name(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::invalid_argument:
            return "InvalidArgument";
        case ErrorCode::null_loading:
            return "NullLoading";
        case ErrorCode::degenerate_loading:
            return "DegenerateLoading";
        case ErrorCode::degenerate_geometry:
            return "DegenerateGeometry";
        case ErrorCode::singular_periods:
            return "SingularPeriods";
        case ErrorCode::non_convergence:
            return "NonConvergence";
        case ErrorCode::on_cut:
            return "OnCutError";
        case ErrorCode::not_on_cut:
            return "NotOnCutError";
        case ErrorCode::pole_hit:
            return "PoleHit";
        case ErrorCode::on_contour_zero:
            return "OnContourZero";
        case ErrorCode::non_integer_count:
            return "NonIntegerCount";
        case ErrorCode::root_selection:
            return "RootSelectionError";
        case ErrorCode::boundary_sample_failure:
            return "BoundarySampleFailure";
        case ErrorCode::pole_proximity:
            return "PoleProximity";
    }
    return "Unknown";
}

LoadingParams derive_loading(double sigma1_inf, double sigma2_inf, double tau_inf, double p, double tau)
{
    for (double v : {sigma1_inf, sigma2_inf, tau_inf, p, tau}) {
        if (!std::isfinite(v)) {
            fail(ErrorCode::invalid_argument, "loading inputs must be finite");
        }
    }

    LoadingParams out;
    out.sigma1_inf = sigma1_inf;
    out.sigma2_inf = sigma2_inf;
    out.tau_inf = tau_inf;
    out.p = p;
    out.tau = tau;
    out.sigma = sigma1_inf + sigma2_inf - p;
    out.a = cplx((out.sigma - p) / 2.0, tau);
    out.b = cplx((sigma2_inf - sigma1_inf) / 2.0, tau_inf);
    out.alpha_plus = sigma2_inf - p;
    out.alpha_minus = p - sigma1_inf;
    out.beta_plus = tau_inf - tau;
    out.beta_minus = tau_inf + tau;

    if (out.a == cplx(0.0, 0.0)) {
        fail(ErrorCode::null_loading, "loading parameter a = (sigma - p)/2 + i tau vanishes");
    }
    out.gamma = std::abs(out.b) / std::abs(out.a);
    return out;
}

bool is_gamma_unit(const LoadingParams &load) noexcept
{
    return std::abs(load.gamma - 1.0) <= gamma_unit_tolerance;
}

} // namespace esc
