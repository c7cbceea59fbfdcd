#ifndef ESC_VERIFY_HPP
#define ESC_VERIFY_HPP

#include <esc/conformal_map.hpp>
#include <esc/contour.hpp>
#include <esc/zerocount.hpp>

#include <optional>
#include <vector>

namespace esc
{

struct BoundaryResidual {
    // max |psi omega' + a conj(omega')| / (|a| max(|omega'|, eps)) over samples
    double max = 0.0;
    double worst_xi = 0.0;
    int worst_slit = 0;
    // Samples skipped because |omega'| fell below 1e-8 of its median.
    int near_zero_samples = 0;
    int samples = 0;
};

// Cosine-spaced interior points of every slit, both banks.
// Throws Error(invalid_argument) when samples_per_side < 64.
BoundaryResidual boundary_residual(const ConformalMap &map, int samples_per_side = 256);

struct StressSample {
    double s = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double tau12 = 0.0;
    double sigma_t = 0.0;
    double sigma_n = 0.0;
    double tau_nt = 0.0;
    // Preimage on the slit and bank.
    double xi = 0.0;
    int side = 1;
};

struct StressOptions {
    int points_per_side = default_points_per_side;
    // Double the points until the arclength changes by less than this.
    double arclength_rtol = 1e-8;
    int max_points_per_side = 1 << 18;
    // Required for gamma > 1, where psi has poles in the domain.
    bool allow_inadmissible = false;
    // Zeros of omega' to keep away from the slit (PoleProximity within 1e-6).
    std::vector<LocatedZero> zeros;
};

struct StressProfile {
    std::vector<StressSample> samples;
    Contour contour;
    bool arclength_converged = false;
};

// Stresses along cavity `cavity`, upper bank first. Slit endpoints are skipped.
StressProfile stress_profile(const ConformalMap &map, int cavity, const StressOptions &options = {});

struct Intersection {
    bool intersect = false;
    std::vector<cplx> witnesses;
    // Contour pairs (i, j); i == j means self-intersection.
    std::vector<std::pair<int, int>> pairs;
};

// Sweep over all polyline segments; adjacent segments of a contour are
// not compared. Keeps at most max_witnesses points.
Intersection contours_intersect(const std::vector<Contour> &contours, int max_witnesses = 16);

struct FarField {
    cplx psi_limit;
    double psi_error = 0.0; // |psi_limit - b|
    // -(double pole coefficient) for finite zeta_inf, omega'(inf) otherwise.
    cplx scale_recovered;
    double scale_error = 0.0; // |scale_recovered - c|
};

// Symmetric two-point Laurent extrapolation around zeta_inf, or in 1/zeta
// at infinity.
FarField far_field(const ConformalMap &map);

// exists iff Z = 0, no contour intersection and gamma != 1.
Verdict overall_verdict(const LoadingParams &load, std::optional<int> Z, bool intersect) noexcept;

} // namespace esc

#endif
