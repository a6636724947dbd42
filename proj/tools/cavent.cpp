// cavent: command-line front end.
//
// Exit codes: 0 success, 1 runtime error, 2 configuration/usage error,
// 3 calibration search found no passing q_scale (nearest miss is written).
// Only `point` writes to stdout; diagnostics go to stderr.

#include <unistd.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cavent/calibration.hpp"
#include "cavent/config.hpp"
#include "cavent/errors.hpp"
#include "cavent/plot.hpp"
#include "cavent/selfcheck.hpp"
#include "cavent/sweep.hpp"

namespace fs = std::filesystem;
using namespace cavent;

namespace {

constexpr int kExitOk = 0, kExitRuntime = 1, kExitConfig = 2, kExitCalibration = 3;

bool use_color() { return std::getenv("CAVENT_NO_COLOR") == nullptr && isatty(STDERR_FILENO); }

std::string paint(const std::string& text, const char* code) {
    return use_color() ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
}

void diag(const std::string& level, const char* color, const std::string& msg) {
    std::cerr << paint(level + ":", color) << ' ' << msg << '\n';
}

struct Options {
    std::optional<std::string> config;
    std::optional<std::string> preset;
    std::vector<std::string> sets;
    std::string out = "cavent_out";
    unsigned workers = 1;
    std::optional<bool> plot;
    std::vector<double> temps;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--preset", o.preset, "built-in preset")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
    sub->add_option("--set", o.sets, "dotted.path=value override (repeatable)");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--workers", o.workers, "parallel sweep workers")->check(CLI::PositiveNumber);
    sub->add_flag("--plot,!--no-plot", o.plot, "render SVG plots (default from config)");
}

ResolvedConfig load(const Options& o, std::vector<std::string> extra_sets = {}) {
    std::vector<std::string> sets = o.sets;
    sets.insert(sets.end(), extra_sets.begin(), extra_sets.end());
    ResolvedConfig rc = resolve_config(o.preset, o.config, sets);
    if (o.plot) {
        rc.config.plot = *o.plot;
        rc.tree["plot"] = *o.plot;
    }
    rc.config.calibration.workers = o.workers;
    return rc;
}

fs::path prepare_out(const Options& o, const ResolvedConfig& rc) {
    const fs::path dir(o.out);
    fs::create_directories(dir);
    std::ofstream(dir / "resolved_config.json") << rc.tree.dump(2) << '\n';
    return dir;
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!(f << body)) throw Error("cannot write " + path.string());
}

void try_plot(const fs::path& path, const PlotSpec& spec) {
    try {
        write_file(path, render_svg(spec));
    } catch (const std::exception& e) {
        diag("warning", "33", std::string("plot skipped: ") + e.what());
    }
}

std::string value_label(const std::string& name, double v, const std::string& unit) {
    std::ostringstream s;
    s << name << " = " << v;
    if (!unit.empty() && unit != "1") s << ' ' << unit;
    return s.str();
}

// ---- subcommands ------------------------------------------------------------

int cmd_photocurrent(const Options& o) {
    std::vector<std::string> extra;
    if (!o.temps.empty()) {
        nlohmann::json t = o.temps;
        extra.push_back("spectrum.temperatures=" + t.dump());
    }
    const ResolvedConfig rc = load(o, extra);
    const RunConfig& c = rc.config;
    const fs::path dir = prepare_out(o, rc);
    const auto rows = photocurrent_spectrum(c.spectrum.energies_ev, c.spectrum.temperatures, c.ledger.material,
                                            c.ledger.optical_drive().intensity, c.ledger.n_absorbers);
    std::ostringstream csv;
    write_spectrum_csv(csv, rows);
    write_file(dir / "photocurrent.csv", csv.str());

    if (c.plot) {
        PlotSpec spec{"Photocurrent spectrum", "photon energy (eV)", "photocurrent (uA)", {}, std::nullopt};
        const std::size_t nt = c.spectrum.temperatures.size();
        for (std::size_t t = 0; t < nt; ++t) {
            Series s{value_label("T", c.spectrum.temperatures[t], "K"), {}, {}};
            for (std::size_t e = 0; e < c.spectrum.energies_ev.size(); ++e) {
                s.x.push_back(rows[e * nt + t].energy_ev);
                s.y.push_back(rows[e * nt + t].current * 1e6);
            }
            spec.series.push_back(std::move(s));
        }
        try_plot(dir / "photocurrent.svg", spec);
    }
    diag("info", "36", "wrote " + std::to_string(rows.size()) + " rows to " + (dir / "photocurrent.csv").string());
    return kExitOk;
}

int cmd_entangle(const Options& o) {
    const ResolvedConfig rc = load(o);
    const RunConfig& c = rc.config;
    const SweepSpec spec = c.sweep_spec();
    spec.validate();
    const fs::path dir = prepare_out(o, rc);
    const auto rows = run_sweep(spec, o.workers);
    std::ostringstream csv;
    write_sweep_csv(csv, spec, rows);
    write_file(dir / "entangle.csv", csv.str());

    std::size_t missing = 0;
    for (const auto& r : rows)
        if (!r.result.two_eta) ++missing;
    if (missing)
        diag("warning", "33", std::to_string(missing) + " of " + std::to_string(rows.size()) +
                                  " points have no stationary state (see status column)");

    if (c.plot) {
        const Axis& x = spec.axes.back();
        const std::string xlabel = x.unit.empty() || x.unit == "1" ? x.name : x.name + " (" + x.unit + ")";
        PlotSpec ps{"Two-mode entanglement", xlabel, "2 eta", {}, 1.0};
        const std::size_t groups = spec.axes.size() == 2 ? spec.axes[0].values.size() : 1;
        for (std::size_t g = 0; g < groups; ++g) {
            Series s;
            if (spec.axes.size() == 2) s.label = value_label(spec.axes[0].name, spec.axes[0].values[g], spec.axes[0].unit);
            for (std::size_t i = 0; i < x.values.size(); ++i) {
                const auto& r = rows[g * x.values.size() + i];
                s.x.push_back(x.values[i]);
                s.y.push_back(r.result.two_eta.value_or(std::nan("")));
            }
            ps.series.push_back(std::move(s));
        }
        try_plot(dir / "entangle.svg", ps);
    }
    diag("info", "36", "wrote " + std::to_string(rows.size()) + " rows to " + (dir / "entangle.csv").string());
    return kExitOk;
}

std::string complex_str(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.9g %c %.9gi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
    return buf;
}

int cmd_point(const Options& o) {
    const ResolvedConfig rc = load(o);
    const Ledger& l = rc.config.ledger;
    const fs::path dir = prepare_out(o, rc);
    const PointResult r = run_point(l);

    std::ostringstream rep;
    char line[160];
    auto row = [&](const char* key, const std::string& value) {
        std::snprintf(line, sizeof line, "%-20s %s\n", key, value.c_str());
        rep << line;
    };
    row("q_oc (rad/s)", format_double(r.q_oc));
    row("photocurrent (A)", format_double(r.photocurrent));
    row("alpha", complex_str(r.alpha));
    row("beta", complex_str(r.beta));
    row("iterations", std::to_string(r.iterations) + (r.converged ? "" : " (not converged)"));
    if (r.converged) {
        row("linearization", r.linearization_valid ? "valid (|alpha|, |beta| >> 1)" : "questionable (small fields)");
        row("stability", r.stable ? (r.marginally_stable ? "stable (marginal)" : "stable") : "unstable");
        row("max Re lambda", format_double(r.max_real_part.value_or(std::nan(""))));
        for (std::size_t k = 0; k < 4; ++k)
            row(("lambda_" + std::to_string(k + 1)).c_str(), complex_str(r.eigenvalues[k]));
    }
    std::string verdict;
    if (r.two_eta) {
        char buf[96];
        const double te = *r.two_eta;
        const char* word = *r.entangled ? "entangled"
                           : std::abs(te - 1.0) <= kVerdictResolution ? "separable (boundary)"
                                                                       : "separable";
        std::snprintf(buf, sizeof buf, "2η = %.6f, %s", te, word);
        verdict = buf;
    } else if (r.status == PointStatus::unstable) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "no stationary state (max Re λ = %+.6g)", *r.max_real_part);
        verdict = buf;
    } else if (r.status == PointStatus::nonconverged) {
        verdict = "no stationary state (mean-field iteration did not converge)";
    } else {
        verdict = "no verdict (covariance could not be certified)";
    }
    row("verdict", verdict);
    std::cout << rep.str();

    nlohmann::json j;
    j["status"] = to_string(r.status);
    j["q_oc"] = r.q_oc;
    j["photocurrent"] = r.photocurrent;
    j["alpha"] = {r.alpha.real(), r.alpha.imag()};
    j["beta"] = {r.beta.real(), r.beta.imag()};
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["linearization_valid"] = r.linearization_valid;
    j["stable"] = r.stable;
    j["marginally_stable"] = r.marginally_stable;
    j["max_real_part"] = r.max_real_part ? nlohmann::json(*r.max_real_part) : nlohmann::json(nullptr);
    j["eigenvalues"] = nlohmann::json::array();
    if (r.converged)
        for (const cplx& e : r.eigenvalues) j["eigenvalues"].push_back({e.real(), e.imag()});
    j["two_eta"] = r.two_eta ? nlohmann::json(*r.two_eta) : nlohmann::json(nullptr);
    j["entangled"] = r.entangled ? nlohmann::json(*r.entangled) : nlohmann::json(nullptr);
    j["verdict"] = verdict;
    if (r.covariance) {
        nlohmann::json v = nlohmann::json::array();
        for (int i = 0; i < 4; ++i) {
            nlohmann::json rowj = nlohmann::json::array();
            for (int k = 0; k < 4; ++k) rowj.push_back(r.covariance->v(i, k));
            v.push_back(rowj);
        }
        j["covariance"] = v;
    }
    write_file(dir / "point.json", j.dump(2) + "\n");
    return kExitOk;
}

int cmd_calibrate(const Options& o) {
    const ResolvedConfig rc = load(o);
    const fs::path dir = prepare_out(o, rc);
    try {
        const CalibrationRecord rec = calibrate_defaults(rc.config.calibration);
        write_file(dir / "calibration.txt", format_record(rec));
        diag("info", "36", "calibrated q_scale = " + format_double(rec.q_scale));
        return kExitOk;
    } catch (const CalibrationFailure& f) {
        write_file(dir / "calibration.txt", format_record(f.nearest_miss));
        diag("error", "31", f.what());
        diag("info", "36", "nearest-miss record written to " + (dir / "calibration.txt").string());
        return kExitCalibration;
    }
}

int cmd_check() {
    bool all = true;
    for (const check::Outcome& c : check::run_all()) {
        all = all && c.passed;
        char buf[64];
        std::snprintf(buf, sizeof buf, " (%.2f s)", c.seconds);
        std::cerr << paint(c.passed ? "PASS" : "FAIL", c.passed ? "32" : "31") << "  " << c.name << ": "
                  << c.detail << buf << '\n';
    }
    return all ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-Kerr optical/microwave cavity entanglement toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* pc = app.add_subcommand("photocurrent", "photocurrent spectrum vs photon energy and temperature");
    add_common(pc, o);
    pc->add_option("--temps", o.temps, "temperatures (K), overrides spectrum.temperatures");
    auto* en = app.add_subcommand("entangle", "2 eta sweep over one or two axes");
    add_common(en, o);
    auto* pt = app.add_subcommand("point", "full report for a single operating point");
    add_common(pt, o);
    auto* ca = app.add_subcommand("calibrate", "search the coupling scale q_scale");
    add_common(ca, o);
    app.add_subcommand("check", "numerical self-test battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (pc->parsed()) return cmd_photocurrent(o);
        if (en->parsed()) return cmd_entangle(o);
        if (pt->parsed()) return cmd_point(o);
        if (ca->parsed()) return cmd_calibrate(o);
        return cmd_check();
    } catch (const ConfigError& e) {
        diag("error", "31", e.what());
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        diag("error", "31", std::string("config: ") + e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        diag("error", "31", e.what());
        return kExitRuntime;
    }
}
