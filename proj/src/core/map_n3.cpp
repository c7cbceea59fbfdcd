#include <esc/error.hpp>
#include <esc/maps.hpp>
#include <esc/quadrature.hpp>

#include <array>
#include <cmath>
#include <string>

namespace esc
{

N3FiniteMap::N3FiniteMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol)
    : ConformalMap(config, load, c, B, tol), zinf_(*config.zeta_inf)
{
    if (config.family != CaseFamily::n3_finite) {
        fail(ErrorCode::invalid_argument, "N3FiniteMap requires an n3-finite configuration");
    }
    const double cp = c.real();
    const double cpp = c.imag();
    const auto &L = load_;
    A4p_ = -0.5 * (cp * L.alpha_plus - cpp * L.beta_plus);
    A4m_ = -0.5 * (cp * L.beta_minus + cpp * L.alpha_minus);
    A5p_ = -0.5 * (cp * L.beta_plus + cpp * L.alpha_plus);
    A5m_ = 0.5 * (cp * L.alpha_minus - cpp * L.beta_minus);
    A4_ = cplx(A4p_, -A4m_);
    A5_ = cplx(A5p_, -A5m_);

    f_inf_ = branch_(zinf_);
    fp_inf_ = f_inf_ * branch_.log_derivative(zinf_);

    const cplx w1 = A4_ + cplx(0.0, 1.0) * A5_;
    const cplx w2 = A4_ - cplx(0.0, 1.0) * A5_;
    const cplx zc = std::conj(zinf_);
    const cplx fc = std::conj(f_inf_);
    const cplx fpc = std::conj(fp_inf_);
    auto pole_terms = [&](double xi) {
        const cplx h = xi - zinf_;
        const cplx hc = xi - zc;
        return w1 * (f_inf_ + fp_inf_ * h) / (h * h) + w2 * (fc + fpc * hc) / (hc * hc);
    };

    std::array<std::array<cplx, 2>, 3> I{};
    std::array<cplx, 3> J{};
    for (int m = 0; m < 3; ++m) {
        SlitIntegral si;
        si.lo = branch_.slit_lo(m);
        si.hi = branch_.slit_hi(m);
        si.avoid = zinf_;
        for (int j = 0; j < 2; ++j) {
            si.integrand_offset = [&, j, m](double xi, double dl, double dh) {
                return std::pow(xi, j) / branch_.side_value_offset(m, dl, dh, Side::upper);
            };
            I[m][j] = integrate_slit(si, tol_).value;
        }
        si.integrand_offset = [&, m](double xi, double dl, double dh) {
            return pole_terms(xi) / branch_.side_value_offset(m, dl, dh, Side::upper);
        };
        J[m] = integrate_slit(si, tol_).value;
    }

    delta_ = I[0][0] * I[1][1] - I[0][1] * I[1][0];
    const double dscale = std::abs(I[0][0] * I[1][1]) + std::abs(I[0][1] * I[1][0]);
    if (std::abs(delta_) < 1e-12 * dscale) {
        fail(ErrorCode::singular_periods, "period determinant vanishes");
    }
    A1_ = (J[1] * I[0][1] - J[0] * I[1][1]) / delta_;
    A2_ = (J[0] * I[1][0] - J[1] * I[0][0]) / delta_;

    const cplx t1 = J[1] * (I[0][1] * I[2][0] - I[0][0] * I[2][1]);
    const cplx t2 = J[0] * (I[1][0] * I[2][1] - I[1][1] * I[2][0]);
    const cplx t3 = J[2] * delta_;
    add_residual("redundant_period_identity",
                 std::abs(t1 + t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3)));

    add_coefficient("A1", A1_);
    add_coefficient("A2", A2_);
    add_coefficient("A3", 0.0);
    add_coefficient("A4", A4_);
    add_coefficient("A5", A5_);
    add_coefficient("A1_plus", A1_.real());
    add_coefficient("A1_minus", -A1_.imag());
    add_coefficient("A2_plus", A2_.real());
    add_coefficient("A2_minus", -A2_.imag());
    add_coefficient("A4_plus", A4p_);
    add_coefficient("A4_minus", A4m_);
    add_coefficient("A5_plus", A5p_);
    add_coefficient("A5_minus", A5m_);
    add_coefficient("f(zeta_inf)", f_inf_);
    add_coefficient("f'(zeta_inf)", fp_inf_);
    add_coefficient("Delta", delta_);
    for (int m = 0; m < 3; ++m) {
        add_coefficient("J" + std::to_string(m), J[m]);
        for (int j = 0; j < 2; ++j) {
            add_coefficient("I" + std::to_string(m) + std::to_string(j), I[m][j]);
        }
    }
    finalize();
}

cplx N3FiniteMap::T1(cplx z, cplx f) const
{
    const cplx h = z - zinf_;
    return (f + f_inf_ + fp_inf_ * h) / (h * h);
}

cplx N3FiniteMap::T2(cplx z, cplx f) const
{
    const cplx hc = z - std::conj(zinf_);
    return (f - std::conj(f_inf_) - std::conj(fp_inf_) * hc) / (hc * hc);
}

cplx N3FiniteMap::p_part(cplx z) const
{
    const cplx i(0.0, 1.0);
    return (-(A4_ + i * A5_) / (z - zinf_) + (A4_ - i * A5_) / (z - std::conj(zinf_))) / (2.0 * abar_);
}

cplx N3FiniteMap::p_part_prime(cplx z) const
{
    const cplx i(0.0, 1.0);
    const cplx h = z - zinf_;
    const cplx hc = z - std::conj(zinf_);
    return ((A4_ + i * A5_) / (h * h) - (A4_ - i * A5_) / (hc * hc)) / (2.0 * abar_);
}

cplx N3FiniteMap::q_part(cplx z) const
{
    const cplx i(0.0, 1.0);
    const cplx h = z - zinf_;
    const cplx hc = z - std::conj(zinf_);
    const cplx num = A1_ + A2_ * z + (A4_ + i * A5_) * (f_inf_ + fp_inf_ * h) / (h * h) +
                     (A4_ - i * A5_) * (std::conj(f_inf_) + std::conj(fp_inf_) * hc) / (hc * hc);
    return num / (2.0 * abar_);
}

cplx N3FiniteMap::R_plus(cplx z, cplx f) const
{
    const cplx i(0.0, 1.0);
    return A1_.real() + A2_.real() * z + (A4p_ + i * A5p_) * T1(z, f) - (A4p_ - i * A5p_) * T2(z, f);
}

cplx N3FiniteMap::R_minus(cplx z, cplx f) const
{
    const cplx i(0.0, 1.0);
    return -A1_.imag() - A2_.imag() * z + (A4m_ + i * A5m_) * T1(z, f) - (A4m_ - i * A5m_) * T2(z, f);
}

cplx N3FiniteMap::F_plus(cplx z, cplx f) const
{
    return R_plus(z, f) / f;
}

cplx N3FiniteMap::F_minus(cplx z, cplx f) const
{
    return cplx(0.0, 1.0) * R_minus(z, f) / f;
}

cplx N3FiniteMap::eta(cplx z, cplx f) const
{
    const cplx i(0.0, 1.0);
    const cplx h = z - zinf_;
    const cplx hc = z - std::conj(zinf_);
    return (A1_ + A2_ * z) * h * h * hc * hc + (A4_ + i * A5_) * hc * hc * (f + f_inf_ + fp_inf_ * h) -
           (A4_ - i * A5_) * h * h * (f - std::conj(f_inf_) - std::conj(fp_inf_) * hc);
}

cplx N3FiniteMap::eta_prime(cplx z, cplx f, cplx fp) const
{
    const cplx i(0.0, 1.0);
    const cplx h = z - zinf_;
    const cplx hc = z - std::conj(zinf_);
    const cplx w1 = A4_ + i * A5_;
    const cplx w2 = A4_ - i * A5_;
    const cplx fc = std::conj(f_inf_);
    const cplx fpc = std::conj(fp_inf_);
    return A2_ * h * h * hc * hc + (A1_ + A2_ * z) * (2.0 * h * hc * hc + 2.0 * h * h * hc) +
           w1 * (2.0 * hc * (f + f_inf_ + fp_inf_ * h) + hc * hc * (fp + fp_inf_)) -
           w2 * (2.0 * h * (f - fc - fpc * hc) + h * h * (fp - fpc));
}

} // namespace esc
