#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "output.hpp"

int main(int argc, char** argv) {
    using namespace biraman::cli;

    CLI::App app{"biraman: bi-frequency Raman gain, dispersion and group-index tools"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string data_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool svg = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--seed", seed, "noise seed (overrides seed)");
        sub->add_flag("--svg", svg, "also write an SVG plot");
    };

    using Command = void (*)(const RunConfig&, const CommandOptions&, std::ostream&);
    struct Entry {
        const char* name;
        const char* help;
        Command fn;
    };
    const Entry entries[] = {
        {"gain", "gain doublet profile and its Kramers-Kronig index", cmd_gain},
        {"dispersion", "model against simulated heterodyne index profile", cmd_dispersion},
        {"null", "pump separation of the group-index null (model or --data)", cmd_null},
        {"spectrum", "gain-modulation time series and power spectrum", cmd_spectrum},
        {"sweep-enhancement", "scale-factor enhancement over pump separation", cmd_sweep_enhancement},
    };
    std::vector<std::pair<CLI::App*, Command>> subs;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub);
        if (std::string_view(e.name) == "null") {
            sub->add_option("--data", data_path, "measurement CSV")->check(CLI::ExistingFile);
        }
        subs.emplace_back(sub, e.fn);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (auto* sub : app.get_subcommands()) {
            if (sub->count("--out")) cfg.output_dir = out_dir;
            if (sub->count("--seed")) cfg.seed = seed;
        }
        cfg.demod.noise.seed = cfg.seed;
        CommandOptions opts;
        opts.svg = svg;
        if (!data_path.empty()) opts.data = data_path;

        for (const auto& [sub, fn] : subs) {
            if (sub->parsed()) fn(cfg, opts, std::cout);
        }
    } catch (const biraman::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
