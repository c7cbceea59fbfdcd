#include <esc/error.hpp>
#include <esc/maps.hpp>
#include <esc/quadrature.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace esc
{

NLineMap::NLineMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol)
    : ConformalMap(config, load, c, B, tol), n_(config.slit_count())
{
    if (config.family != CaseFamily::n_line) {
        fail(ErrorCode::invalid_argument, "NLineMap requires an n-line configuration");
    }
    const int n = n_;
    const auto &ends = config.endpoints;
    for (std::size_t i = 1; i + 1 < ends.size(); ++i) {
        k_bar_ += ends[i];
    }
    k_bar_ *= 0.5;

    const double cp = c.real();
    const double cpp = c.imag();
    const auto &L = load_;
    Ap_.assign(n + 2, 0.0);
    Am_.assign(n + 2, 0.0);
    Ap_[n + 1] = L.alpha_plus * cp - L.beta_plus * cpp;
    Am_[n + 1] = L.alpha_minus * cpp + L.beta_minus * cp;
    Ap_[n] = -k_bar_ * Ap_[n + 1];
    Am_[n] = -k_bar_ * Am_[n + 1];
    Ap_[0] = L.alpha_plus * cpp + L.beta_plus * cp;
    Am_[0] = L.alpha_minus * cp - L.beta_minus * cpp;

    // I(m, j) = int over slit m of xi^j / |f(xi)|.
    Eigen::MatrixXd I(n, n + 1);
    for (int m = 0; m < n; ++m) {
        SlitIntegral si;
        si.lo = branch_.slit_lo(m);
        si.hi = branch_.slit_hi(m);
        for (int j = 0; j <= n; ++j) {
            si.integrand_offset = [&, j, m](double xi, double dl, double dh) {
                return cplx(std::pow(xi, j) / std::abs(branch_.side_value_offset(m, dl, dh, Side::upper)), 0.0);
            };
            I(m, j) = integrate_slit(si, tol_).value.real();
        }
    }

    Eigen::MatrixXd full(n, n);
    full.leftCols(n - 1) = I.leftCols(n - 1);
    full.col(n - 1) = I.col(n) - k_bar_ * I.col(n - 1);
    const Eigen::VectorXd full_sv = Eigen::JacobiSVD<Eigen::MatrixXd>(full).singularValues();
    full_singularity_ = full_sv(n - 1) / full_sv(0);

    const Eigen::MatrixXd M = I.topLeftCorner(n - 1, n - 1);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues();
    reduced_condition_ = sv(0) / sv(n - 2);
    if (!(reduced_condition_ < 1e12)) {
        fail(ErrorCode::singular_periods, "period matrix is numerically singular (condition " +
                                              std::to_string(reduced_condition_) + ")");
    }
    const Eigen::VectorXd col = full.col(n - 1).head(n - 1);
    const auto lu = M.partialPivLu();
    const Eigen::VectorXd xp = lu.solve(-col * Ap_[n + 1]);
    const Eigen::VectorXd xm = lu.solve(-col * Am_[n + 1]);
    for (int j = 0; j < n - 1; ++j) {
        Ap_[j + 1] = xp(j);
        Am_[j + 1] = xm(j);
    }

    for (int j = 0; j <= n + 1; ++j) {
        add_coefficient("A" + std::to_string(j) + "_plus", Ap_[j]);
        add_coefficient("A" + std::to_string(j) + "_minus", Am_[j]);
    }
    add_coefficient("A0", A0());
    for (int j = 1; j <= n + 1; ++j) {
        add_coefficient("A" + std::to_string(j), A(j));
    }
    add_coefficient("k_bar", k_bar_);

    // The last period equation is not imposed; it holds by the rank
    // deficiency of the full matrix.
    for (int s = 0; s < 2; ++s) {
        const auto &A = s == 0 ? Ap_ : Am_;
        double sum = 0.0;
        double mag = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double t = I(n - 1, j) * A[j + 1];
            sum += t;
            mag += std::abs(t);
        }
        add_residual(std::string("last_period_equation_") + (s == 0 ? "plus" : "minus"),
                     mag > 0.0 ? std::abs(sum) / mag : 0.0);
    }
    add_residual("full_matrix_singularity", full_singularity_);
    finalize();
}

cplx NLineMap::poly(const std::vector<double> &coeffs, cplx z) const
{
    cplx out(0.0, 0.0);
    for (int j = n_ + 1; j >= 1; --j) {
        out = out * z + coeffs[j];
    }
    return out;
}

cplx NLineMap::p_part(cplx z) const
{
    return A0() * z / (2.0 * abar_);
}

cplx NLineMap::p_part_prime(cplx) const
{
    return A0() / (2.0 * abar_);
}

cplx NLineMap::q_part(cplx z) const
{
    return (poly(Ap_, z) - cplx(0.0, 1.0) * poly(Am_, z)) / (2.0 * abar_);
}

cplx NLineMap::F_plus(cplx z, cplx f) const
{
    return poly(Ap_, z) / f + cplx(0.0, Ap_[0]);
}

cplx NLineMap::F_minus(cplx z, cplx f) const
{
    return cplx(0.0, 1.0) * poly(Am_, z) / f + Am_[0];
}

cplx NLineMap::eta(cplx z, cplx f) const
{
    return poly(Ap_, z) - cplx(0.0, 1.0) * poly(Am_, z) + A0() * f;
}

cplx NLineMap::eta_prime(cplx z, cplx, cplx fp) const
{
    cplx d(0.0, 0.0);
    for (int j = n_ + 1; j >= 2; --j) {
        d = d * z + cplx(Ap_[j], -Am_[j]) * static_cast<double>(j - 1);
    }
    return d + A0() * fp;
}

} // namespace esc
