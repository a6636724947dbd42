#include "cavent/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cavent/errors.hpp"
#include "cavent/physics.hpp"

namespace cavent {

using nlohmann::json;

namespace {

// Grid-valued keys are replaced wholesale rather than merged.
const std::set<std::string>& replace_paths() {
    static const std::set<std::string> paths{"sweep.axes", "spectrum.energies_ev",
                                             "spectrum.temperatures", "calibration.temperatures"};
    return paths;
}

std::string join_path(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

json linspace_json(double a, double b, int n) { return json{{"linspace", {a, b, n}}}; }

const json& at_path(const json& tree, const std::string& path) {
    const json* node = &tree;
    std::istringstream in(path);
    std::string part;
    while (std::getline(in, part, '.')) {
        if (!node->is_object() || !node->contains(part))
            throw ConfigError("missing config key '" + path + "'");
        node = &(*node)[part];
    }
    return *node;
}

double number(const json& tree, const std::string& path) {
    const json& v = at_path(tree, path);
    if (!v.is_number()) throw ConfigError("config key '" + path + "' must be a number");
    return v.get<double>();
}

bool boolean(const json& tree, const std::string& path) {
    const json& v = at_path(tree, path);
    if (!v.is_boolean()) throw ConfigError("config key '" + path + "' must be true or false");
    return v.get<bool>();
}

std::size_t count(const json& tree, const std::string& path) {
    const json& v = at_path(tree, path);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError("config key '" + path + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

// Either a list of numbers or {"linspace": [first, last, n]}.
std::vector<double> grid(const json& v, const std::string& path) {
    if (v.is_array()) {
        std::vector<double> out;
        for (const json& x : v) {
            if (!x.is_number()) throw ConfigError("config key '" + path + "' must hold numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    if (v.is_object() && v.size() == 1 && v.contains("linspace")) {
        const json& l = v["linspace"];
        if (!l.is_array() || l.size() != 3 || !l[0].is_number() || !l[1].is_number() ||
            !l[2].is_number_integer() || l[2].get<long long>() < 1)
            throw ConfigError("config key '" + path + ".linspace' must be [first, last, n]");
        return linspace(l[0].get<double>(), l[1].get<double>(), l[2].get<std::size_t>());
    }
    throw ConfigError("config key '" + path + "' must be a list or {\"linspace\": [a, b, n]}");
}

std::vector<Axis> parse_axes(const json& v) {
    if (!v.is_array()) throw ConfigError("config key 'sweep.axes' must be a list");
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const json& a = v[i];
        const std::string where = "sweep.axes[" + std::to_string(i) + "]";
        if (!a.is_object()) throw ConfigError(where + " must be an object");
        for (const auto& [key, _] : a.items())
            if (key != "name" && key != "unit" && key != "values")
                throw ConfigError("unknown config key '" + where + "." + key + "'");
        if (!a.contains("name") || !a["name"].is_string())
            throw ConfigError(where + ".name must be a string");
        if (!a.contains("values")) throw ConfigError(where + ".values is required");
        Axis ax;
        ax.name = a["name"].get<std::string>();
        if (a.contains("unit")) {
            if (!a["unit"].is_string()) throw ConfigError(where + ".unit must be a string");
            ax.unit = a["unit"].get<std::string>();
        }
        ax.values = grid(a["values"], where + ".values");
        axes.push_back(std::move(ax));
    }
    return axes;
}

}  // namespace

json default_config_json() {
    const Ledger l = default_ledger();
    const DetectorMaterial& m = l.material;
    const CalibrationSearch cal;
    return json{
        {"oc",
         {{"photon_energy_ev", l.optical_photon_energy_ev},
          {"kappa", l.optical_kappa},
          {"pump_power", l.optical_pump_power}}},
        {"mw",
         {{"omega", l.microwave_omega},
          {"kappa", l.microwave_kappa},
          {"pump_power", l.microwave_pump_power}}},
        {"detuning", {{"delta_c_over_w", l.delta_c_over_w}, {"delta_w_over_w", l.delta_w_over_w}}},
        {"temperature", l.temperature},
        {"material",
         {{"gap_ev", 1.1},
          {"reduced_mass_m0", 0.156},
          {"kane_energy_ev", 20.0},
          {"linewidth_ev", 0.1},
          {"line_center_ev", 1.1},
          {"activation_ev", 0.20},
          {"escape_prefactor", m.temperature.prefactor}}},
        {"coupling",
         {{"q_scale", l.q_scale},
          {"intensity_per_watt", l.intensity_per_watt},
          {"n_absorbers", l.n_absorbers},
          {"reference_energy_ev", l.reference_energy_ev},
          {"reference_temperature", l.reference_temperature},
          {"reference_power", l.reference_power}}},
        {"solver",
         {{"tol", l.solver.tol}, {"max_iter", l.solver.max_iter}, {"damping", l.solver.damping}}},
        {"sweep",
         {{"axes", json::array({json{{"name", "T"},
                                     {"unit", "K"},
                                     {"values", {80.0, 180.0, 250.0, 273.0, 298.0, 310.0}}},
                                json{{"name", "delta_w_over_w"},
                                     {"unit", "1"},
                                     {"values", linspace_json(-1.0, 1.0, 201)}}})}}},
        {"spectrum",
         {{"energies_ev", linspace_json(0.8, 1.6, 81)},
          {"temperatures", {80.0, 180.0, 250.0, 273.0, 298.0, 310.0}}}},
        {"calibration",
         {{"q_min", cal.q_min},
          {"q_max", cal.q_max},
          {"points_per_decade", cal.points_per_decade},
          {"temperatures", cal.temperatures},
          {"side_detuning", cal.side_detuning}}},
        {"plot", true},
    };
}

void merge_strict(json& base, const json& overlay, const std::string& where) {
    if (!overlay.is_object()) throw ConfigError("config section '" + where + "' must be an object");
    for (const auto& [key, value] : overlay.items()) {
        const std::string path = join_path(where, key);
        if (!base.contains(key)) throw ConfigError("unknown config key '" + path + "'");
        json& target = base[key];
        if (target.is_object() && !replace_paths().count(path)) {
            merge_strict(target, value, path);
        } else {
            target = value;
        }
    }
}

void apply_override(json& tree, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment + "' must look like key.path=value");
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    json* node = &tree;
    std::istringstream in(path);
    std::string part;
    std::string so_far;
    std::vector<std::string> parts;
    while (std::getline(in, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        so_far = join_path(so_far, parts[i]);
        if (!node->is_object() || !node->contains(parts[i]))
            throw ConfigError("unknown config key '" + so_far + "'");
        node = &(*node)[parts[i]];
        if (i + 1 < parts.size() && replace_paths().count(so_far))
            throw ConfigError("config key '" + so_far + "' can only be replaced as a whole");
    }
    if (node->is_object() && !replace_paths().count(path))
        throw ConfigError("config key '" + path + "' is a section, not a value");
    *node = value;
}

SweepSpec RunConfig::sweep_spec() const { return SweepSpec{ledger, axes}; }

RunConfig config_from_json(const json& t) {
    RunConfig c;
    Ledger& l = c.ledger;
    l.optical_photon_energy_ev = number(t, "oc.photon_energy_ev");
    l.optical_kappa = number(t, "oc.kappa");
    l.optical_pump_power = number(t, "oc.pump_power");
    l.microwave_omega = number(t, "mw.omega");
    l.microwave_kappa = number(t, "mw.kappa");
    l.microwave_pump_power = number(t, "mw.pump_power");
    l.delta_c_over_w = number(t, "detuning.delta_c_over_w");
    l.delta_w_over_w = number(t, "detuning.delta_w_over_w");
    l.temperature = number(t, "temperature");

    DetectorMaterial& m = l.material;
    m.gap_energy = ev_to_joule(number(t, "material.gap_ev"));
    m.reduced_mass = number(t, "material.reduced_mass_m0") * kCodata.m0;
    m.momentum_sq = 0.5 * ev_to_joule(number(t, "material.kane_energy_ev")) * kCodata.m0;
    m.linewidth = ev_to_omega(number(t, "material.linewidth_ev"));
    m.line_center = ev_to_omega(number(t, "material.line_center_ev"));
    m.temperature.activation_energy = ev_to_joule(number(t, "material.activation_ev"));
    m.temperature.prefactor = number(t, "material.escape_prefactor");

    l.q_scale = number(t, "coupling.q_scale");
    l.intensity_per_watt = number(t, "coupling.intensity_per_watt");
    l.n_absorbers = number(t, "coupling.n_absorbers");
    l.reference_energy_ev = number(t, "coupling.reference_energy_ev");
    l.reference_temperature = number(t, "coupling.reference_temperature");
    l.reference_power = number(t, "coupling.reference_power");

    l.solver.tol = number(t, "solver.tol");
    l.solver.max_iter = count(t, "solver.max_iter");
    l.solver.damping = number(t, "solver.damping");

    c.axes = parse_axes(at_path(t, "sweep.axes"));
    c.spectrum.energies_ev = grid(at_path(t, "spectrum.energies_ev"), "spectrum.energies_ev");
    c.spectrum.temperatures = grid(at_path(t, "spectrum.temperatures"), "spectrum.temperatures");

    c.calibration.q_min = number(t, "calibration.q_min");
    c.calibration.q_max = number(t, "calibration.q_max");
    c.calibration.points_per_decade =
        static_cast<unsigned>(count(t, "calibration.points_per_decade"));
    c.calibration.temperatures =
        grid(at_path(t, "calibration.temperatures"), "calibration.temperatures");
    c.calibration.side_detuning = number(t, "calibration.side_detuning");
    c.calibration.base = l;

    c.plot = boolean(t, "plot");

    try {
        l.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

ResolvedConfig resolve_config(const std::optional<std::string>& preset,
                              const std::optional<std::string>& config_path,
                              const std::vector<std::string>& overrides) {
    json tree = default_config_json();
    if (preset) {
        const auto& presets = builtin_presets();
        const auto it = presets.find(*preset);
        if (it == presets.end()) throw ConfigError("unknown preset '" + *preset + "'");
        merge_strict(tree, json::parse(it->second), "");
    }
    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) throw ConfigError("cannot open config file '" + *config_path + "'");
        json file = json::parse(in, nullptr, false);
        if (file.is_discarded()) throw ConfigError("config file '" + *config_path + "' is not valid JSON");
        merge_strict(tree, file, "");
    }
    for (const std::string& o : overrides) apply_override(tree, o);
    return ResolvedConfig{config_from_json(tree), tree};
}

}  // namespace cavent
