#include "commands.hpp"
#include "config.hpp"
#include "handles.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <map>

int main(int argc, char **argv)
{
    CLI::App app{"Equal-strength cavity solver"};
    app.set_version_flag("--version", esc_version());
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    bool svg = false;

    for (const char *name : {"map", "zeros", "stress", "sweep", "verify"}) {
        static const std::map<std::string, std::string> help{
            {"map", "trace cavity contours"},
            {"zeros", "count inadmissible poles with every applicable method"},
            {"stress", "boundary stress profiles along the contours"},
            {"sweep", "existence map over gamma and one parameter"},
            {"verify", "identity residuals and far-field checks"}};
        CLI::App *sub = app.add_subcommand(name, help.at(name));
        sub->add_option("config", config_path, "configuration JSON or a previous manifest.json")->required();
        sub->add_option("--set", overrides, "override a key, e.g. --set loading.tau_inf=0.5");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--svg", svg, "also write contours.svg");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : esc_tool::exit_config;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (svg) {
            overrides.push_back("output.svg=true");
        }
        const esc_tool::RunConfig cfg = esc_tool::load_config(config_path, overrides);
        const int code = esc_tool::run_command(command, cfg, out_dir);
        if (code != 0) {
            std::fprintf(stderr, "esc %s: failed (exit %d), see %s/manifest.json\n", command.c_str(), code,
                         out_dir.c_str());
        }
        return code;
    } catch (const esc_tool::ConfigError &e) {
        std::fprintf(stderr, "esc %s: configuration error: %s\n", command.c_str(), e.what());
        return esc_tool::exit_config;
    } catch (const esc_tool::LibraryError &e) {
        std::fprintf(stderr, "esc %s: %s: %s\n", command.c_str(), e.name().c_str(), e.what());
        return e.is_config() ? esc_tool::exit_config : esc_tool::exit_numerical;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "esc %s: %s\n", command.c_str(), e.what());
        return 1;
    }
}
