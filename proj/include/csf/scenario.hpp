#pragma once

#include "csf/constants.hpp"
#include "csf/grid.hpp"
#include "csf/model.hpp"
#include "csf/stepper.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace csf {

/// Fully resolved run configuration. Initial data are expression strings in
/// the spatial variable z (see the config grammar in the README).
struct ScenarioConfig {
    std::string name = "custom";
    std::optional<Model> model; ///< nullopt = run both models
    PhysConstants constants = PhysConstants::defaults();
    int nz = 100;
    StepperConfig stepper;
    double C_hat1 = 1.0; ///< existence-check constant

    struct Initial {
        std::string u0 = "0";
        std::string eta0 = "0";
        std::string zeta0 = "0";
        std::string P0 = "0";
        std::string A0 = "1";
    } initial;

    std::string out_dir = "out";

    /// Key-value dump of every resolved setting, sufficient to replay the
    /// run; written into the run report.
    std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

/// Reference scenario with smooth data satisfying the existence conditions.
ScenarioConfig preset_case_a();

/// Reference scenario whose data violate the existence conditions and whose
/// pressure blows up in finite time.
ScenarioConfig preset_case_b();

/// Accepts a preset name ("caseA", "caseB") or a config file path.
/// Throws ConfigError with a section.key field path on bad input.
ScenarioConfig load_scenario(const std::string& name_or_path);

/// Parses the sectioned key-value config text (exposed for tests).
ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin = "<string>");

/// Samples the initial expressions on the grid.
State build_initial_state(const ScenarioConfig& sc, const Grid& grid);

Grid make_grid(const ScenarioConfig& sc);

} // namespace csf
