#pragma once

// Run configuration: built-in defaults <- preset <- config file <- --set
// overrides. Every layer is a JSON tree merged strictly: a key that does not
// exist in the defaults is an error.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavent/calibration.hpp"
#include "cavent/ledger.hpp"
#include "cavent/sweep.hpp"

namespace cavent {

struct SpectrumGrid {
    std::vector<double> energies_ev;
    std::vector<double> temperatures;
};

struct RunConfig {
    Ledger ledger;
    std::vector<Axis> axes;
    SpectrumGrid spectrum;
    CalibrationSearch calibration;  // base is filled from ledger
    bool plot = true;

    SweepSpec sweep_spec() const;
};

/// The complete default tree; documents every accepted key.
nlohmann::json default_config_json();

/// Name -> JSON text of the shipped presets (fig2..fig5).
const std::map<std::string, std::string>& builtin_presets();

/// Merges `overlay` into `base`, rejecting keys absent from `base`.
void merge_strict(nlohmann::json& base, const nlohmann::json& overlay, const std::string& where);

/// Applies one "dotted.path=value" override. The value is parsed as JSON
/// when possible, otherwise taken as a string.
void apply_override(nlohmann::json& tree, const std::string& assignment);

RunConfig config_from_json(const nlohmann::json& tree);

struct ResolvedConfig {
    RunConfig config;
    nlohmann::json tree;  // fully merged, echoed next to outputs
};

ResolvedConfig resolve_config(const std::optional<std::string>& preset,
                              const std::optional<std::string>& config_path,
                              const std::vector<std::string>& overrides);

}  // namespace cavent
