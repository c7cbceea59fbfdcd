#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace esc_tool
{

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const fs::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

void write_json(const fs::path &path, const json &j)
{
    write_file(path, j.dump(2) + "\n");
}

std::string contour_csv(const std::vector<esc_contour_point> &pts)
{
    std::string s = "cavity,side,xi,s,x,y\n";
    for (const auto &p : pts) {
        s += std::to_string(p.cavity) + ',' + std::to_string(p.side) + ',' + num(p.xi) + ',' + num(p.s) + ',' +
             num(p.x) + ',' + num(p.y) + '\n';
    }
    return s;
}

std::string stress_csv(const std::vector<esc_stress_sample> &samples)
{
    std::string s = "s,sigma1,sigma2,tau12,sigma_t,sigma_n,tau_nt\n";
    for (const auto &p : samples) {
        s += num(p.s) + ',' + num(p.sigma1) + ',' + num(p.sigma2) + ',' + num(p.tau12) + ',' + num(p.sigma_t) + ',' +
             num(p.sigma_n) + ',' + num(p.tau_nt) + '\n';
    }
    return s;
}

std::string contours_svg(const std::vector<std::vector<esc_contour_point>> &contours)
{
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto &c : contours) {
        for (const auto &p : c) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    if (!std::isfinite(x0)) {
        x0 = y0 = -1.0;
        x1 = y1 = 1.0;
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-300});
    const double pad = 0.05 * span;
    const double w = x1 - x0 + 2 * pad;
    const double h = y1 - y0 + 2 * pad;
    const double px = 800.0;
    const double scale = px / std::max(w, h);
    char buf[160];
    std::string s;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.6f %.6f\">\n",
                  w * scale, h * scale, w * scale, h * scale);
    s += buf;
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t i = 0; i < contours.size(); ++i) {
        std::snprintf(buf, sizeof buf, "<path id=\"cavity%zu\" fill=\"none\" stroke=\"%s\" stroke-width=\"1\" d=\"", i,
                      colors[i % 6]);
        s += buf;
        bool first = true;
        for (const auto &p : contours[i]) {
            // SVG y grows downwards.
            std::snprintf(buf, sizeof buf, "%s%.4f %.4f ", first ? "M" : "L", (p.x - x0 + pad) * scale,
                          (y1 + pad - p.y) * scale);
            s += buf;
            first = false;
        }
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace esc_tool
