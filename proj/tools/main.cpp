// gkdvb: batch CLI for the damped generalized KdV-Burgers simulation lab.
// Subcommands: simulate, decay-sweep, hyp-check, carleman-verify, picard-demo.

#include "gkdvb/commands.hpp"
#include "gkdvb/config.hpp"

#include <CLI11.hpp>

#include <functional>

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral lab for the damped generalized KdV-Burgers equation"};
    app.require_subcommand(1);

    gkdvb::CommandOptions opts;
    int exit_code = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "config file (key = value)");
        std::string presets;
        for (const auto& n : gkdvb::preset_names()) presets += n + " ";
        sub->add_option("--preset", opts.preset, "named preset: " + presets);
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--workers", opts.workers, "concurrent sweep cells");
        sub->add_option("--seed", opts.seed, "override ic.seed")
            ->each([&](const std::string&) { opts.has_seed = true; });
    };

    auto wire = [&](const char* name, const char* desc,
                    std::function<int(const gkdvb::CommandOptions&)> fn) {
        CLI::App* sub = app.add_subcommand(name, desc);
        add_common(sub);
        sub->callback([&, fn] { exit_code = fn(opts); });
        return sub;
    };

    wire("simulate", "run one simulation, write ledger + snapshots",
         gkdvb::cmd_simulate);
    wire("decay-sweep", "parameter sweep with decay fits per cell",
         gkdvb::cmd_decay_sweep);
    wire("hyp-check", "evaluate the damping hypotheses for a profile",
         gkdvb::cmd_hyp_check);
    wire("carleman-verify", "weight admissibility, positivity scan, ratio test",
         gkdvb::cmd_carleman_verify);
    wire("picard-demo", "fixed-point iteration report on a short time slab",
         gkdvb::cmd_picard_demo);

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
