#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "lgsim/acceptance.h"
#include "lgsim/experiment.h"

namespace lgsim::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  // acceptance criterion failed, or a run shows no violation
    kExitUsage = 2,
    kExitIo = 3,
};

struct CommonOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> theta;  // raw text, may carry "deg:"
    std::optional<double> zeta;
};

/// Config from --config (or defaults), with --seed and --theta applied on top.
ExperimentConfig resolve_config(const CommonOptions &opts);

int cmd_run(const CommonOptions &opts, std::ostream &out, std::ostream &err);
int cmd_landscape(const CommonOptions &opts, std::size_t theta_steps, std::size_t zeta_steps, std::ostream &out,
                  std::ostream &err);
int cmd_verify(std::ostream &out, const AcceptanceHarness &harness = {});
int cmd_bounds(const CommonOptions &opts, std::ostream &out, std::ostream &err);
int cmd_mr_polytope(const CommonOptions &opts, std::ostream &out, std::ostream &err);

}  // namespace lgsim::cli
