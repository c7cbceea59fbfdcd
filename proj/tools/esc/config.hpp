#ifndef ESC_TOOL_CONFIG_HPP
#define ESC_TOOL_CONFIG_HPP

#include <esc/esc.h>

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esc_tool
{

using json = nlohmann::ordered_json;

// Bad configuration: exit code 2.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    double gamma_from = 0.1;
    double gamma_to = 2.0;
    int gamma_count = 20;
    // "deviator" scales sigma2_inf - sigma1_inf at fixed mean; "tau_inf" sets tau_inf.
    std::string via = "deviator";
    // Dotted key such as "geometry.k"; empty sweeps gamma only.
    std::string parameter;
    std::vector<double> values;
    int threads = 0;
    bool oracle = false;
};

struct RunConfig {
    std::string family;
    esc_loading loading{};
    double k = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    std::vector<double> endpoints;
    std::optional<std::pair<double, double>> zeta_inf;
    double c_prime = 1.0;
    double c_dblprime = 0.0;
    std::pair<double, double> B{0.0, 0.0};

    int points_per_side = 512;
    int boundary_samples = 256;
    double tolerance = 0.0; // resolved; never 0 after parsing
    bool svg = false;
    bool oracle = true;
    std::vector<int> stress_cavities; // empty: all
    std::string stress_side = "both";
    int stress_points = 512;
    int stress_max_points = 262144;

    std::optional<SweepSpec> sweep;

    esc_family family_id() const;
    esc_geometry geometry() const; // points into endpoints
    esc_scale scale() const;
    json to_json() const;
};

// Accepts either a configuration object or a run manifest ({"config": ...}).
// `overrides` are "dotted.key=value" strings applied before validation.
RunConfig parse_config(const json &doc, const std::vector<std::string> &overrides = {});
RunConfig load_config(const std::string &path, const std::vector<std::string> &overrides = {});

} // namespace esc_tool

#endif
