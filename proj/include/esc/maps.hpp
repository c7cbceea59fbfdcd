#ifndef ESC_MAPS_HPP
#define ESC_MAPS_HPP

#include <esc/conformal_map.hpp>

#include <array>
#include <vector>

namespace esc
{

// One cavity: l_0 = [-1, 1], zeta_inf = infinity, real scale.
class N1Map final : public ConformalMap
{
public:
    N1Map(const LoadingParams &load, double c, cplx B, double tol);

    cplx p_part(cplx z) const override;
    cplx p_part_prime(cplx z) const override;
    cplx q_part(cplx z) const override;
    cplx F_plus(cplx z, cplx f) const override;
    cplx F_minus(cplx z, cplx f) const override;
    cplx eta(cplx z, cplx f) const override;
    cplx eta_prime(cplx z, cplx f, cplx fp) const override;
    int eta_degree() const override
    {
        return 1;
    }

    // psi in closed form; throws Error(pole_hit) near a zero of the denominator.
    cplx psi_closed(cplx z) const;

    cplx m_plus() const
    {
        return m_plus_;
    }
    cplx m_minus() const
    {
        return m_minus_;
    }
    // a1 + i b1 and a2 + i b2 of the ellipse parametrization.
    cplx ellipse_first() const
    {
        return 0.5 * c_.real() * m_minus_;
    }
    cplx ellipse_second() const
    {
        return 0.5 * c_.real() * m_plus_;
    }
    // Left-hand side minus right-hand side of the conic through the contour,
    // evaluated at a point relative to B.
    double conic_residual(cplx z) const;

private:
    cplx m_plus_;
    cplx m_minus_;
};

// Closed-form pole count and locations of the one-cavity potential.
struct N1Poles {
    int count = 0;
    std::vector<cplx> locations;
};
// Throws Error(degenerate_loading) when gamma = 1.
N1Poles poles_n1(const LoadingParams &load);
// Removable points on the cut when gamma = 1.
std::array<cplx, 2> removable_points_n1(const LoadingParams &load);

// Two cavities on [-1/k, -1] and [1, 1/k] with real zeta_inf in (-1, 1).
// Also serves the symmetric variant zeta_inf = 0.
class N2FiniteMap final : public ConformalMap
{
public:
    N2FiniteMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol);

    cplx p_part(cplx z) const override;
    cplx p_part_prime(cplx z) const override;
    cplx q_part(cplx z) const override;
    cplx F_plus(cplx z, cplx f) const override;
    cplx F_minus(cplx z, cplx f) const override;
    cplx eta(cplx z, cplx f) const override;
    cplx eta_prime(cplx z, cplx f, cplx fp) const override;
    int eta_degree() const override
    {
        return 2;
    }

    // Real coefficient sets, index 0..3.
    const std::array<double, 4> &A_plus() const
    {
        return Ap_;
    }
    const std::array<double, 4> &A_minus() const
    {
        return Am_;
    }
    cplx A0() const
    {
        return A0_;
    }
    const std::array<cplx, 3> &A() const
    {
        return A_;
    }
    double d_plus() const
    {
        return d_plus_;
    }
    double d_minus() const
    {
        return d_minus_;
    }
    double lambda0() const
    {
        return lambda0_;
    }
    double lambda1() const
    {
        return lambda1_;
    }
    // int_1^{1/k} xi^j / ((xi -+ zeta_inf)^2 sqrt|p2|), j = 0..2.
    const std::array<double, 3> &I_minus() const
    {
        return Im_;
    }
    const std::array<double, 3> &I_plus() const
    {
        return Ip_;
    }
    // The symmetric closed form of omega' (only meaningful for zeta_inf = 0,
    // symmetric loading and real scale).
    cplx omega_prime_symmetric(cplx z) const;

protected:
    std::vector<cplx> q_poles() const override
    {
        return {cplx(zinf_, 0.0)};
    }
    std::vector<cplx> compute_bases() const override;

private:
    double k_;
    double zinf_;
    std::array<double, 4> Ap_{};
    std::array<double, 4> Am_{};
    std::array<double, 3> Im_{};
    std::array<double, 3> Ip_{};
    cplx A0_;
    std::array<cplx, 3> A_{};
    double d_plus_ = 0.0;
    double d_minus_ = 0.0;
    double lambda0_ = 0.0;
    double lambda1_ = 0.0;
};

// Two symmetric cavities with zeta_inf = infinity.
class N2SymInfMap final : public ConformalMap
{
public:
    N2SymInfMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol);

    cplx p_part(cplx z) const override;
    cplx p_part_prime(cplx z) const override;
    cplx q_part(cplx z) const override;
    cplx F_plus(cplx z, cplx f) const override;
    cplx F_minus(cplx z, cplx f) const override;
    cplx eta(cplx z, cplx f) const override;
    cplx eta_prime(cplx z, cplx f, cplx fp) const override;
    int eta_degree() const override
    {
        return 2;
    }

    double rho() const
    {
        return rho_;
    }
    double I0() const
    {
        return I0_;
    }
    double I2() const
    {
        return I2_;
    }
    double k() const
    {
        return k_;
    }

private:
    double k_;
    double I0_ = 0.0;
    double I2_ = 0.0;
    double rho_ = 0.0;
};

// Three cavities on [-1/k, -1], [k1, k2], [1, 1/k] with finite complex zeta_inf.
class N3FiniteMap final : public ConformalMap
{
public:
    N3FiniteMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol);

    cplx p_part(cplx z) const override;
    cplx p_part_prime(cplx z) const override;
    cplx q_part(cplx z) const override;
    cplx F_plus(cplx z, cplx f) const override;
    cplx F_minus(cplx z, cplx f) const override;
    cplx eta(cplx z, cplx f) const override;
    cplx eta_prime(cplx z, cplx f, cplx fp) const override;
    int eta_degree() const override
    {
        return 5;
    }
    std::vector<std::pair<cplx, int>> removable_eta_zeros() const override
    {
        return {{std::conj(zinf_), 2}};
    }

    cplx A1() const
    {
        return A1_;
    }
    cplx A2() const
    {
        return A2_;
    }
    cplx A4() const
    {
        return A4_;
    }
    cplx A5() const
    {
        return A5_;
    }
    cplx period_determinant() const
    {
        return delta_;
    }
    // R_+ and R_- of the first-sheet solution.
    cplx R_plus(cplx z, cplx f) const;
    cplx R_minus(cplx z, cplx f) const;

protected:
    std::vector<cplx> q_poles() const override
    {
        return {zinf_, std::conj(zinf_)};
    }

private:
    // Pole bracket terms shared by R_+-, omega' and eta.
    cplx T1(cplx z, cplx f) const;
    cplx T2(cplx z, cplx f) const;

    cplx zinf_;
    cplx f_inf_;
    cplx fp_inf_;
    cplx A1_;
    cplx A2_;
    double A4p_ = 0.0;
    double A4m_ = 0.0;
    double A5p_ = 0.0;
    double A5m_ = 0.0;
    cplx A4_;
    cplx A5_;
    cplx delta_;
};

// n >= 3 collinear slits [k_{2j}, k_{2j+1}] on [-1, 1], zeta_inf = infinity.
class NLineMap final : public ConformalMap
{
public:
    NLineMap(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B, double tol);

    cplx p_part(cplx z) const override;
    cplx p_part_prime(cplx z) const override;
    cplx q_part(cplx z) const override;
    cplx F_plus(cplx z, cplx f) const override;
    cplx F_minus(cplx z, cplx f) const override;
    cplx eta(cplx z, cplx f) const override;
    cplx eta_prime(cplx z, cplx f, cplx fp) const override;
    int eta_degree() const override
    {
        return n_;
    }

    int n() const
    {
        return n_;
    }
    double k_bar() const
    {
        return k_bar_;
    }
    // Index 0..n+1.
    const std::vector<double> &A_plus() const
    {
        return Ap_;
    }
    const std::vector<double> &A_minus() const
    {
        return Am_;
    }
    cplx A(int j) const
    {
        return {Ap_[j], -Am_[j]};
    }
    cplx A0() const
    {
        return {-Am_[0], Ap_[0]};
    }
    // Smallest over largest singular value of the full n x n period matrix.
    double full_matrix_singularity() const
    {
        return full_singularity_;
    }
    double reduced_condition() const
    {
        return reduced_condition_;
    }

private:
    cplx poly(const std::vector<double> &coeffs, cplx z) const;

    int n_;
    double k_bar_ = 0.0;
    std::vector<double> Ap_;
    std::vector<double> Am_;
    double full_singularity_ = 0.0;
    double reduced_condition_ = 0.0;
};

} // namespace esc

#endif
