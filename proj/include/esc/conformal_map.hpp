#ifndef ESC_CONFORMAL_MAP_HPP
#define ESC_CONFORMAL_MAP_HPP

#include <esc/loading.hpp>
#include <esc/radicals.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace esc
{

struct NamedValue {
    std::string name;
    cplx value;
};

struct NamedResidual {
    std::string name;
    double value = 0.0;
};

// A constructed map omega with derivative written as
//   omega'(zeta) = P'(zeta) + Q(zeta) / f(zeta),
// where P is elementary and f is the slit-plane branch. Every function taking
// (z, f) accepts either an interior value f(z) or a one-sided value on a cut,
// so the same code evaluates the domain and both banks of every slit.
class ConformalMap
{
public:
    virtual ~ConformalMap() = default;

    CaseFamily family() const
    {
        return config_.family;
    }
    const SlitConfig &config() const
    {
        return config_;
    }
    const Branch &branch() const
    {
        return branch_;
    }
    const LoadingParams &loading() const
    {
        return load_;
    }
    // c_{-1}: coefficient of the pole of omega at the preimage of infinity.
    cplx scale() const
    {
        return c_;
    }
    cplx offset() const
    {
        return B_;
    }
    double tolerance() const
    {
        return tol_;
    }
    std::optional<cplx> zeta_inf() const
    {
        return config_.zeta_inf;
    }

    virtual cplx p_part(cplx z) const = 0;
    virtual cplx p_part_prime(cplx z) const = 0;
    virtual cplx q_part(cplx z) const = 0;

    cplx omega_prime(cplx z, cplx f) const
    {
        return p_part_prime(z) + q_part(z) / f;
    }
    cplx omega_prime(cplx z) const;

    // F_+ = (psi + conj a) omega' and F_- = (psi - conj a) omega', assembled
    // from the separate real coefficient sets.
    virtual cplx F_plus(cplx z, cplx f) const = 0;
    virtual cplx F_minus(cplx z, cplx f) const = 0;
    // psi * omega'; equals (F_+ + F_-)/2 unless a family has a closed form.
    virtual cplx psi_omega_prime(cplx z, cplx f) const
    {
        return 0.5 * (F_plus(z, f) + F_minus(z, f));
    }
    cplx psi(cplx z, cplx f) const
    {
        return psi_omega_prime(z, f) / omega_prime(z, f);
    }
    cplx psi(cplx z) const;

    // eta shares its zeros with omega' in the slit domain (up to the
    // removable points listed below) and is free of its poles.
    virtual cplx eta(cplx z, cplx f) const = 0;
    // fp is f'(z), evaluated on the same side as f.
    virtual cplx eta_prime(cplx z, cplx f, cplx fp) const = 0;
    // Growth order of eta at infinity.
    virtual int eta_degree() const = 0;
    // Zeros of eta at which omega' stays regular and nonzero, with multiplicity.
    virtual std::vector<std::pair<cplx, int>> removable_eta_zeros() const
    {
        return {};
    }

    // omega(lo_m) - P(lo_m), so that on slit m
    //   omega(xi +- i0) = P(xi) + slit_base(m) + int_{lo_m}^{xi} Q / f_{+-}.
    cplx slit_base(int m) const
    {
        return bases_.at(m);
    }

    // Closed loop integral of omega' around slit m and its magnitude scale
    // (the loop integral of |omega'|).
    std::pair<cplx, double> loop_integral(int m) const;

    const std::vector<NamedValue> &coefficients() const
    {
        return coefficients_;
    }
    // Identity residuals recorded during construction (loop conditions,
    // defining equations, redundant equations).
    const std::vector<NamedResidual> &residuals() const
    {
        return residuals_;
    }
    double residual(const std::string &name) const;

protected:
    ConformalMap(SlitConfig config, LoadingParams load, cplx c, cplx B, double tol);

    // Integral of Q/f between two real points outside every slit interior,
    // along a path that avoids the poles of Q. Ends are branch points or
    // regular points as flagged.
    cplx gap_integral(double from, double to) const;
    // Straight-path integral of Q/f in the complex plane.
    cplx path_integral(cplx from, cplx to, bool singular_from, bool singular_to) const;
    // Poles of Q (preimages of infinity at finite points).
    virtual std::vector<cplx> q_poles() const
    {
        return {};
    }

    // Bases default to B at the first slit plus accumulated gap integrals.
    virtual std::vector<cplx> compute_bases() const;
    // Records bases and loop residuals; derived constructors call it last.
    void finalize();

    void add_coefficient(std::string name, cplx value)
    {
        coefficients_.push_back({std::move(name), value});
    }
    void add_residual(std::string name, double value)
    {
        residuals_.push_back({std::move(name), value});
    }

    SlitConfig config_;
    Branch branch_;
    LoadingParams load_;
    cplx c_;
    cplx B_;
    double tol_;
    cplx abar_;

private:
    std::vector<cplx> bases_;
    std::vector<NamedValue> coefficients_;
    std::vector<NamedResidual> residuals_;
};

// Builds the map of the requested family. c is the scale c_{-1}, B the
// additive constant. Throws Error on invalid input or numerical failure.
std::unique_ptr<ConformalMap> make_map(const SlitConfig &config, const LoadingParams &load, cplx c, cplx B,
                                       double tol);

} // namespace esc

#endif
