#ifndef ESC_TOOL_HANDLES_HPP
#define ESC_TOOL_HANDLES_HPP

#include "config.hpp"

#include <esc/esc.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace esc_tool
{

// A library call failed; carries the status for exit-code mapping.
class LibraryError : public std::runtime_error
{
public:
    LibraryError(esc_status status, const std::string &what) : std::runtime_error(what), status_(status) {}
    esc_status status() const noexcept
    {
        return status_;
    }
    std::string name() const
    {
        return esc_status_name(status_);
    }
    // Invalid input rather than a numerical breakdown.
    bool is_config() const noexcept
    {
        return status_ == ESC_E_INVALID_ARGUMENT || status_ == ESC_E_NULL_LOADING;
    }

private:
    esc_status status_;
};

inline void check(esc_status s)
{
    if (s != ESC_OK) {
        throw LibraryError(s, esc_last_error());
    }
}

struct MapDeleter {
    void operator()(esc_map *m) const
    {
        esc_map_destroy(m);
    }
};
struct ContoursDeleter {
    void operator()(esc_contours *c) const
    {
        esc_contours_destroy(c);
    }
};
struct StressDeleter {
    void operator()(esc_stress *s) const
    {
        esc_stress_destroy(s);
    }
};

using Map = std::unique_ptr<esc_map, MapDeleter>;
using Contours = std::unique_ptr<esc_contours, ContoursDeleter>;
using Stress = std::unique_ptr<esc_stress, StressDeleter>;

inline Map make_map(const RunConfig &cfg)
{
    const esc_geometry g = cfg.geometry();
    const esc_scale s = cfg.scale();
    esc_map *m = nullptr;
    check(esc_map_create(&g, &cfg.loading, &s, &m));
    return Map(m);
}

inline Contours trace(const esc_map *m, int points_per_side)
{
    esc_contours *c = nullptr;
    check(esc_map_trace(m, points_per_side, &c));
    return Contours(c);
}

template <class Fn> std::string two_call_string(Fn &&fn)
{
    size_t needed = 0;
    check(fn(nullptr, 0, &needed));
    std::string s(needed, '\0');
    check(fn(s.data(), s.size(), &needed));
    s.resize(needed - 1);
    return s;
}

inline json map_info(const esc_map *m)
{
    return json::parse(two_call_string([&](char *b, size_t c, size_t *n) { return esc_map_info_json(m, b, c, n); }));
}

inline std::vector<esc_contour_point> contour_points(const esc_contours *set, size_t i)
{
    size_t n = 0;
    check(esc_contour_points(set, i, nullptr, 0, &n));
    std::vector<esc_contour_point> pts(n);
    check(esc_contour_points(set, i, pts.data(), pts.size(), &n));
    return pts;
}

inline esc_contour_metrics contour_metrics(const esc_contours *set, size_t i)
{
    esc_contour_metrics m{};
    check(esc_contour_metrics_get(set, i, &m));
    return m;
}

struct IntersectResult {
    bool intersect = false;
    std::vector<std::pair<double, double>> witnesses;
};

inline IntersectResult intersect(const esc_contours *set)
{
    int hit = 0;
    size_t n = 0;
    std::vector<double> xy(32);
    check(esc_contours_intersect(set, &hit, xy.data(), xy.size() / 2, &n));
    IntersectResult r;
    r.intersect = hit != 0;
    for (size_t i = 0; i < n && i < xy.size() / 2; ++i) {
        r.witnesses.emplace_back(xy[2 * i], xy[2 * i + 1]);
    }
    return r;
}

struct Zeros {
    esc_zero_report report{};
    std::vector<esc_located_zero> zeros;
};

inline Zeros count_zeros(const esc_map *m, esc_zero_method method)
{
    Zeros z;
    std::vector<esc_located_zero> buf(64);
    check(esc_map_zeros(m, method, nullptr, &z.report, buf.data(), buf.size()));
    if (z.report.zero_count > buf.size()) {
        buf.resize(z.report.zero_count);
        check(esc_map_zeros(m, method, nullptr, &z.report, buf.data(), buf.size()));
    }
    buf.resize(z.report.zero_count);
    z.zeros = std::move(buf);
    return z;
}

} // namespace esc_tool

#endif
