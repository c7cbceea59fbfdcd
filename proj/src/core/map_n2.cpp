#include <esc/error.hpp>
#include <esc/maps.hpp>
#include <esc/quadrature.hpp>

#include <cmath>
#include <string>

namespace esc
{

namespace
{

double rel(double value, double scale)
{
    return scale > 0.0 ? std::abs(value) / scale : std::abs(value);
}

void require_symmetric(const LoadingParams &load, cplx c, const char *family)
{
    if (c.imag() != 0.0 || load.tau != 0.0 || load.tau_inf != 0.0) {
        fail(ErrorCode::invalid_argument,
             std::string(family) + " requires a real scale and tau = tau_inf = 0");
    }
}

// int_1^{1/k} xi^j w(xi) / sqrt|p2(xi)|
double outer_slit_integral(const Branch &branch, double k, int j, const std::function<double(double)> &w, double tol)
{
    SlitIntegral si;
    si.lo = 1.0;
    si.hi = 1.0 / k;
    const int m = branch.slit_count() - 1;
    si.integrand_offset = [&](double xi, double dl, double dh) {
        return cplx(std::pow(xi, j) * w(xi) / std::abs(branch.side_value_offset(m, dl, dh, Side::upper)), 0.0);
    };
    return integrate_slit(si, tol).value.real();
}

} // namespace

N2FiniteMap::N2FiniteMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol)
    : ConformalMap(config, load, c, B, tol), k_(config.k), zinf_(config.zeta_inf->real())
{
    if (config.family != CaseFamily::n2_finite && config.family != CaseFamily::n2_sym_finite) {
        fail(ErrorCode::invalid_argument, "N2FiniteMap requires an n2-finite or n2-sym-finite configuration");
    }
    if (config.family == CaseFamily::n2_sym_finite) {
        require_symmetric(load, c, "n2-sym-finite");
    }
    const double cp = c.real();
    const double cpp = c.imag();
    const double x = zinf_;
    const auto &L = load_;

    for (int j = 0; j < 3; ++j) {
        Im_[j] = outer_slit_integral(
            branch_, k_, j, [x](double xi) { return 1.0 / ((xi - x) * (xi - x)); }, tol_);
        Ip_[j] = outer_slit_integral(
            branch_, k_, j, [x](double xi) { return 1.0 / ((xi + x) * (xi + x)); }, tol_);
    }

    Ap_[0] = -cp * L.beta_plus - cpp * L.alpha_plus;
    Am_[0] = -cp * L.alpha_minus + cpp * L.beta_minus;
    const double sp = std::sqrt(std::abs(branch_.poly(x).real()));
    d_plus_ = sp * (cp * L.alpha_plus - cpp * L.beta_plus);
    d_minus_ = sp * (cp * L.beta_minus + cpp * L.alpha_minus);

    const double p2 = branch_.poly(x).real();
    const double dp2 = 4.0 * x * x * x - 2.0 * x * (1.0 + 1.0 / (k_ * k_));
    lambda1_ = dp2 / (2.0 * p2);
    lambda0_ = x * x * Im_[0] - 2.0 * x * Im_[1] + Im_[2];
    if (std::abs(lambda0_) < 1e-13) {
        fail(ErrorCode::degenerate_geometry, "lambda0 vanishes");
    }

    auto solve = [&](double d, std::array<double, 4> &A) {
        const double l1 = lambda1_;
        A[1] = d / lambda0_ * (x * (l1 * x - 2.0) * Im_[1] + (1.0 - l1 * x) * Im_[2]);
        A[2] = d / lambda0_ * (x * (2.0 - l1 * x) * Im_[0] + l1 * Im_[2]);
        A[3] = -d / lambda0_ * ((1.0 - l1 * x) * Im_[0] + l1 * Im_[1]);
    };
    solve(d_plus_, Ap_);
    solve(d_minus_, Am_);

    A0_ = cplx(-Am_[0], Ap_[0]);
    for (int j = 0; j < 3; ++j) {
        A_[j] = cplx(Ap_[j + 1], -Am_[j + 1]);
    }

    add_coefficient("A0_plus", Ap_[0]);
    add_coefficient("A0_minus", Am_[0]);
    for (int j = 1; j <= 3; ++j) {
        add_coefficient("A" + std::to_string(j) + "_plus", Ap_[j]);
        add_coefficient("A" + std::to_string(j) + "_minus", Am_[j]);
    }
    add_coefficient("A0", A0_);
    for (int j = 0; j < 3; ++j) {
        add_coefficient("A" + std::to_string(j + 1), A_[j]);
    }
    add_coefficient("d_plus", d_plus_);
    add_coefficient("d_minus", d_minus_);
    add_coefficient("lambda0", lambda0_);
    add_coefficient("lambda1", lambda1_);
    for (int j = 0; j < 3; ++j) {
        add_coefficient("I" + std::to_string(j) + "_minus", Im_[j]);
        add_coefficient("I" + std::to_string(j) + "_plus", Ip_[j]);
    }

    // Defining equations at zeta_inf, then the four loop equations; the l0
    // pair is the one the closed forms never use.
    for (int s = 0; s < 2; ++s) {
        const auto &A = s == 0 ? Ap_ : Am_;
        const double d = s == 0 ? d_plus_ : d_minus_;
        const std::string tag = s == 0 ? "plus" : "minus";
        const double e1 = A[1] + x * A[2] + x * x * A[3] - d;
        const double e2 = A[2] + 2.0 * x * A[3] - d * lambda1_;
        add_residual("defining1_" + tag,
                     rel(e1, std::abs(A[1]) + std::abs(x * A[2]) + std::abs(x * x * A[3]) + std::abs(d)));
        add_residual("defining2_" + tag,
                     rel(e2, std::abs(A[2]) + std::abs(2.0 * x * A[3]) + std::abs(d * lambda1_)));
        const double l1 = A[1] * Im_[0] + A[2] * Im_[1] + A[3] * Im_[2];
        const double l0 = A[1] * Ip_[0] - A[2] * Ip_[1] + A[3] * Ip_[2];
        add_residual("loop_eq_l1_" + tag,
                     rel(l1, std::abs(A[1] * Im_[0]) + std::abs(A[2] * Im_[1]) + std::abs(A[3] * Im_[2])));
        add_residual("loop_eq_l0_" + tag,
                     rel(l0, std::abs(A[1] * Ip_[0]) + std::abs(A[2] * Ip_[1]) + std::abs(A[3] * Ip_[2])));
    }
    finalize();
}

cplx N2FiniteMap::p_part(cplx z) const
{
    return -A0_ / (2.0 * abar_ * (z - zinf_));
}

cplx N2FiniteMap::p_part_prime(cplx z) const
{
    const cplx h = z - zinf_;
    return A0_ / (2.0 * abar_ * h * h);
}

cplx N2FiniteMap::q_part(cplx z) const
{
    const cplx h = z - zinf_;
    return (A_[0] + A_[1] * z + A_[2] * z * z) / (2.0 * abar_ * h * h);
}

cplx N2FiniteMap::F_plus(cplx z, cplx f) const
{
    const cplx h = z - zinf_;
    return (cplx(0.0, Ap_[0]) + (Ap_[1] + Ap_[2] * z + Ap_[3] * z * z) / f) / (h * h);
}

cplx N2FiniteMap::F_minus(cplx z, cplx f) const
{
    const cplx h = z - zinf_;
    return (Am_[0] + cplx(0.0, 1.0) * (Am_[1] + Am_[2] * z + Am_[3] * z * z) / f) / (h * h);
}

cplx N2FiniteMap::eta(cplx z, cplx f) const
{
    return A_[0] + A_[1] * z + A_[2] * z * z + A0_ * f;
}

cplx N2FiniteMap::eta_prime(cplx z, cplx, cplx fp) const
{
    return A_[1] + 2.0 * A_[2] * z + A0_ * fp;
}

cplx N2FiniteMap::omega_prime_symmetric(cplx z) const
{
    const double cp = c_.real();
    const double a = load_.a.real();
    return cp / (2.0 * a * z * z) *
           (load_.alpha_minus + load_.alpha_plus * (1.0 - z * z * Im_[0] / Im_[2]) / (k_ * branch_(z)));
}

std::vector<cplx> N2FiniteMap::compute_bases() const
{
    // Integration starts at zeta_0 = -i and reaches each outer cavity at its
    // inner endpoint.
    const cplx z0(0.0, -1.0);
    const cplx base0 = B_ + path_integral(z0, cplx(-1.0, 0.0), false, true);
    const cplx base1 = B_ + path_integral(z0, cplx(1.0, 0.0), false, true);
    // Slit 0 is parametrized from -1/k; the one-sided integral over the whole
    // slit vanishes, so the value at -1 carries over.
    return {base0, base1};
}

N2SymInfMap::N2SymInfMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol)
    : ConformalMap(config, load, c, B, tol), k_(config.k)
{
    if (config.family != CaseFamily::n2_sym_inf) {
        fail(ErrorCode::invalid_argument, "N2SymInfMap requires an n2-sym-inf configuration");
    }
    require_symmetric(load, c, "n2-sym-inf");
    I0_ = outer_slit_integral(branch_, k_, 0, [](double) { return 1.0; }, tol_);
    I2_ = outer_slit_integral(branch_, k_, 2, [](double) { return 1.0; }, tol_);
    rho_ = I2_ / I0_;

    add_coefficient("I0", I0_);
    add_coefficient("I2", I2_);
    add_coefficient("rho", rho_);
    add_coefficient("alpha0", load_.alpha_minus);
    add_coefficient("alpha1", load_.alpha_plus);
    finalize();
}

cplx N2SymInfMap::p_part(cplx z) const
{
    return -c_.real() * load_.alpha_minus * z / (2.0 * load_.a.real());
}

cplx N2SymInfMap::p_part_prime(cplx) const
{
    return -c_.real() * load_.alpha_minus / (2.0 * load_.a.real());
}

cplx N2SymInfMap::q_part(cplx z) const
{
    return c_.real() * load_.alpha_plus * (z * z - rho_) / (2.0 * load_.a.real());
}

cplx N2SymInfMap::F_plus(cplx z, cplx f) const
{
    return c_.real() * load_.alpha_plus * (z * z - rho_) / f;
}

cplx N2SymInfMap::F_minus(cplx, cplx) const
{
    return c_.real() * load_.alpha_minus;
}

cplx N2SymInfMap::eta(cplx z, cplx f) const
{
    return load_.alpha_plus * (z * z - rho_) - load_.alpha_minus * f;
}

cplx N2SymInfMap::eta_prime(cplx z, cplx, cplx fp) const
{
    return 2.0 * load_.alpha_plus * z - load_.alpha_minus * fp;
}

} // namespace esc
