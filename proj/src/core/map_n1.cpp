#include <esc/error.hpp>
#include <esc/maps.hpp>

#include <cmath>

namespace esc
{

N1Map::N1Map(const LoadingParams &load, double c, cplx B, double tol)
    : ConformalMap(SlitConfig::n1(), load, cplx(c, 0.0), B, tol)
{
    m_plus_ = 1.0 + std::conj(load_.b) / abar_;
    m_minus_ = 1.0 - std::conj(load_.b) / abar_;

    add_coefficient("m_plus", m_plus_);
    add_coefficient("m_minus", m_minus_);
    add_coefficient("A0_plus", c * load_.beta_plus);
    add_coefficient("A0_minus", c * load_.alpha_minus);
    add_coefficient("A2_plus", c * load_.alpha_plus);
    add_coefficient("A2_minus", c * load_.beta_minus);
    add_coefficient("a1+ib1", ellipse_first());
    add_coefficient("a2+ib2", ellipse_second());
    finalize();
}

cplx N1Map::p_part(cplx z) const
{
    return 0.5 * c_ * m_minus_ * z;
}

cplx N1Map::p_part_prime(cplx) const
{
    return 0.5 * c_ * m_minus_;
}

cplx N1Map::q_part(cplx z) const
{
    return 0.5 * c_ * m_plus_ * z;
}

cplx N1Map::F_plus(cplx z, cplx f) const
{
    const double c = c_.real();
    return c * load_.alpha_plus * z / f + cplx(0.0, c * load_.beta_plus);
}

cplx N1Map::F_minus(cplx z, cplx f) const
{
    const double c = c_.real();
    return cplx(0.0, c * load_.beta_minus) * z / f + c * load_.alpha_minus;
}

cplx N1Map::eta(cplx z, cplx f) const
{
    return m_minus_ * f + m_plus_ * z;
}

cplx N1Map::eta_prime(cplx, cplx, cplx fp) const
{
    return m_minus_ * fp + m_plus_;
}

cplx N1Map::psi_closed(cplx z) const
{
    const cplx a = load_.a;
    const cplx b = load_.b;
    const cplx f = branch_(z);
    const cplx den = (abar_ + std::conj(b)) * z + (abar_ - std::conj(b)) * f;
    const double scale = (std::abs(abar_) + std::abs(b)) * (std::abs(z) + std::abs(f));
    if (std::abs(den) < 1e-13 * scale) {
        fail(ErrorCode::pole_hit, "psi evaluated at a pole");
    }
    return abar_ * ((a + b) * z - (a - b) * f) / den;
}

double N1Map::conic_residual(cplx z) const
{
    const cplx e1 = ellipse_first();
    const cplx e2 = ellipse_second();
    const double a1 = e1.real(), b1 = e1.imag(), a2 = e2.real(), b2 = e2.imag();
    const double x = (z - B_).real();
    const double y = (z - B_).imag();
    const double rhs = std::pow(a1 * a2 + b1 * b2, 2);
    const double lhs = (a2 * a2 + b1 * b1) * x * x + (a1 * a1 + b2 * b2) * y * y - 2.0 * (a1 * b1 - a2 * b2) * x * y;
    return (lhs - rhs) / rhs;
}

N1Poles poles_n1(const LoadingParams &load)
{
    if (is_gamma_unit(load)) {
        fail(ErrorCode::degenerate_loading, "gamma = 1: the poles are removable points on the cut");
    }
    N1Poles out;
    if (load.gamma < 1.0) {
        return out;
    }
    const cplx r = std::sqrt(std::conj(load.b) / std::conj(load.a));
    const cplx zeta = cplx(0.0, 0.5) * (r - 1.0 / r);
    out.count = 2;
    out.locations = {zeta, -zeta};
    return out;
}

std::array<cplx, 2> removable_points_n1(const LoadingParams &load)
{
    const double s = std::sin(0.5 * (std::arg(load.a) - std::arg(load.b)));
    return {cplx(s, 0.0), cplx(-s, 0.0)};
}

} // namespace esc
