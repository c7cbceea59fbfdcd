#ifndef ESC_CONTOUR_HPP
#define ESC_CONTOUR_HPP

#include <esc/conformal_map.hpp>

#include <vector>

namespace esc
{

// Image of one slit: the upper bank from left to right, then the lower bank
// back to the start. The last point repeats the first.
struct Contour {
    int cavity = 0;
    std::vector<cplx> points;
    std::vector<double> xi;
    std::vector<int> side; // +1 upper bank, -1 lower bank
    std::vector<double> s; // cumulative chord length
    bool closed = false;
    // Mismatch of the two banks at the far slit endpoint.
    double closure_gap = 0.0;

    double diameter() const;
    double signed_area() const;
    double length() const
    {
        return s.empty() ? 0.0 : s.back();
    }
};

inline constexpr int default_points_per_side = 512;

// Contours of every cavity with cosine-clustered parameters
// xi_i = mid - half cos(i pi / N), i = 0..N. Throws Error(invalid_argument)
// when points_per_side < 16.
std::vector<Contour> trace(const ConformalMap &map, int points_per_side = default_points_per_side);

} // namespace esc

#endif
