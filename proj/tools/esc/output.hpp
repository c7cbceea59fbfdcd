#ifndef ESC_TOOL_OUTPUT_HPP
#define ESC_TOOL_OUTPUT_HPP

#include "config.hpp"

#include <esc/esc.h>

#include <filesystem>
#include <string>
#include <vector>

namespace esc_tool
{

namespace fs = std::filesystem;

// %.17g: round-trips every double.
std::string num(double v);

void write_file(const fs::path &path, const std::string &content);
void write_json(const fs::path &path, const json &j);

std::string contour_csv(const std::vector<esc_contour_point> &pts);
std::string stress_csv(const std::vector<esc_stress_sample> &samples);

// One path per cavity, viewport fitted to the union bounding box.
std::string contours_svg(const std::vector<std::vector<esc_contour_point>> &contours);

} // namespace esc_tool

#endif
