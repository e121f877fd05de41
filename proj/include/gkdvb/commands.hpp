#pragma once

// Batch front-door commands. Thin argv handling lives in tools/; these
// functions do the work and return process exit codes:
//   0 success / check passed, 1 bad config or failed check,
//   2 blow-up guard tripped (simulate), 3 tail-threshold breach (simulate).

#include <cstdint>
#include <string>

namespace gkdvb {

struct CommandOptions {
    std::string config_path;  // --config
    std::string preset;       // --preset
    std::string out_dir;      // --out
    int workers = 0;          // --workers, 0 -> hardware concurrency
    std::uint64_t seed = 0;   // --seed
    bool has_seed = false;
};

int cmd_simulate(const CommandOptions& opts);
int cmd_decay_sweep(const CommandOptions& opts);
int cmd_hyp_check(const CommandOptions& opts);
int cmd_carleman_verify(const CommandOptions& opts);
int cmd_picard_demo(const CommandOptions& opts);

} // namespace gkdvb
