// Acceptance battery: one PASS/FAIL line per criterion. Tolerances and
// runtime bounds are pinned below; nothing here is tuned to the outcome.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cavent/calibration.hpp"
#include "cavent/config.hpp"
#include "cavent/covariance.hpp"
#include "cavent/photodiode.hpp"
#include "cavent/physics.hpp"
#include "cavent/selfcheck.hpp"
#include "cavent/sweep.hpp"

using namespace cavent;
namespace fs = std::filesystem;

namespace {

constexpr double kSpectrumPeakWindowEv = 0.1;
constexpr double kLinearityRel = 1e-14;
constexpr double kSideDetuning = 0.5;
constexpr double kRuntimeC6 = 1.0, kRuntimeC7 = 30.0, kRuntimeC8 = 30.0, kRuntimeC9 = 60.0;

struct Result {
    bool passed = false;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

RunConfig preset(const char* name) { return resolve_config(std::string(name), std::nullopt, {}).config; }

// Index of the grid value closest to x.
std::size_t nearest(const std::vector<double>& grid, double x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - x) < std::abs(grid[best] - x)) best = i;
    return best;
}

double two_eta_or_nan(const SweepRow& r) {
    return r.result.two_eta ? *r.result.two_eta : std::numeric_limits<double>::quiet_NaN();
}

bool entangled(const SweepRow& r) { return r.result.entangled.value_or(false); }

Result from_check(const check::Outcome& o) { return {o.passed, o.detail}; }

Result runtime_guard(Result r, double seconds, double bound) {
    if (!(seconds < bound)) {
        r.passed = false;
        r.detail += "; runtime " + fmt(seconds) + " s exceeds " + fmt(bound) + " s";
    }
    return r;
}

Result c6_spectrum() {
    const auto t0 = std::chrono::steady_clock::now();
    const Ledger l = default_ledger();
    const std::vector<double> energies = linspace(0.8, 1.6, 81);
    const std::vector<double> temps{80, 180, 250, 298};
    const auto rows = photocurrent_spectrum(energies, temps, l.material, l.optical_drive().intensity, l.n_absorbers);
    auto at = [&](std::size_t e, std::size_t t) { return rows[e * temps.size() + t].current; };

    Result r{true, ""};
    std::vector<std::size_t> argmax(temps.size(), 0);
    for (std::size_t t = 0; t < temps.size(); ++t)
        for (std::size_t e = 1; e < energies.size(); ++e)
            if (at(e, t) > at(argmax[t], t)) argmax[t] = e;
    for (std::size_t t = 1; t < temps.size(); ++t)
        if (argmax[t] != argmax[0]) {
            r.passed = false;
            r.detail += "argmax moves at T=" + fmt(temps[t]) + "; ";
        }

    // independent location of the g_J * L peak on a 1e-5 eV grid
    double peak_ev = 0.0, peak = -1.0;
    for (double ev = 0.8; ev <= 1.6; ev += 1e-5) {
        const double v = joint_dos(ev_to_joule(ev), l.material) *
                         lorentzian(ev_to_omega(ev), l.material.line_center, l.material.linewidth);
        if (v > peak) peak = v, peak_ev = ev;
    }
    const double at_ev = energies[argmax[0]];
    if (!(std::abs(at_ev - peak_ev) <= kSpectrumPeakWindowEv)) {
        r.passed = false;
        r.detail += "argmax " + fmt(at_ev) + " eV is not within 0.1 eV of the gJ*L peak; ";
    }

    for (std::size_t e = 0; e < energies.size(); ++e)
        for (std::size_t t = 1; t < temps.size(); ++t)
            if (!(at(e, t - 1) >= at(e, t))) {
                r.passed = false;
                r.detail += "I(" + fmt(temps[t - 1]) + ") < I(" + fmt(temps[t]) + ") at " + fmt(energies[e]) + " eV; ";
            }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.passed)
        r.detail = "argmax " + fmt(at_ev) + " eV for all T, gJ*L peak " + fmt(peak_ev) + " eV, curves ordered";
    return runtime_guard(r, secs, kRuntimeC6);
}

Result c7_fig3() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig c = preset("fig3");
    const SweepSpec spec = c.sweep_spec();
    const auto rows = run_sweep(spec, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::vector<double> temps{80, 180, 250, 273, 298};
    const auto& tgrid = spec.axes[0].values;
    const auto& dgrid = spec.axes[1].values;
    const std::size_t nd = dgrid.size();
    const std::size_t i0 = nearest(dgrid, 0.0), ip = nearest(dgrid, kSideDetuning),
                      im = nearest(dgrid, -kSideDetuning);

    Result r{rows.size() == 1206, ""};
    std::string zero = "2eta(0):", side = "2eta(+-0.5):";
    bool all_entangled = true, monotone = true;
    double prev_p = -INFINITY, prev_m = -INFINITY;
    for (double t : temps) {
        const std::size_t it = nearest(tgrid, t);
        const SweepRow& z = rows[it * nd + i0];
        zero += " " + fmt(two_eta_or_nan(z));
        if (!entangled(z)) all_entangled = false;
        const double p = two_eta_or_nan(rows[it * nd + ip]), m = two_eta_or_nan(rows[it * nd + im]);
        side += " " + fmt(p) + "/" + fmt(m);
        if (!(p >= prev_p - kTrendSlack) || !(m >= prev_m - kTrendSlack)) monotone = false;
        prev_p = p, prev_m = m;
    }
    r.passed = r.passed && all_entangled && monotone;
    r.detail = std::string(all_entangled ? "entangled at 0" : "NOT entangled at 0") + " [" + zero + "]; " +
               (monotone ? "non-decreasing in T" : "NOT non-decreasing in T") + " [" + side + "]";
    return runtime_guard(r, secs, kRuntimeC7);
}

Result c8_fig4() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig c = preset("fig4");
    const SweepSpec spec = c.sweep_spec();
    const auto rows = run_sweep(spec, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto& cgrid = spec.axes[0].values;
    const auto& dgrid = spec.axes[1].values;
    const std::size_t nd = dgrid.size();
    double step = INFINITY;
    for (std::size_t i = 1; i < nd; ++i) step = std::min(step, dgrid[i] - dgrid[i - 1]);

    Result r{true, ""};
    for (double dc : {0.0, 0.1, 0.7}) {
        const std::size_t ic = nearest(cgrid, dc);
        std::size_t best = nd;
        for (std::size_t j = 0; j < nd; ++j) {
            const double v = two_eta_or_nan(rows[ic * nd + j]);
            if (std::isnan(v)) continue;
            if (best == nd || v < two_eta_or_nan(rows[ic * nd + best])) best = j;
        }
        const bool ok = best < nd && std::abs(dgrid[best] - dc) <= step * (1.0 + 1e-9);
        r.passed = r.passed && ok;
        if (!r.detail.empty()) r.detail += "; ";
        r.detail += "dc=" + fmt(dc) + ": argmin " + (best < nd ? fmt(dgrid[best]) : std::string("none")) +
                    (ok ? " ok" : " off");
    }
    return runtime_guard(r, secs, kRuntimeC8);
}

Result c9_fig5() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig c = preset("fig5");
    const SweepSpec spec = c.sweep_spec();
    const auto rows = run_sweep(spec, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto& pgrid = spec.axes[0].values;
    const auto& dgrid = spec.axes[1].values;
    const std::size_t nd = dgrid.size();
    const std::size_t i0 = nearest(dgrid, 0.0), ip = nearest(dgrid, kSideDetuning),
                      im = nearest(dgrid, -kSideDetuning);

    bool non_increasing = true, entangled_zero = true, linear = true;
    std::string side = "2eta(+-0.5):", zero = "2eta(0):";
    double prev_p = INFINITY, prev_m = INFINITY;
    const double slope0 = rows[0].result.photocurrent / pgrid[0];
    double worst_lin = 0.0;
    for (std::size_t ip_ = 0; ip_ < pgrid.size(); ++ip_) {
        const double p = two_eta_or_nan(rows[ip_ * nd + ip]), m = two_eta_or_nan(rows[ip_ * nd + im]);
        side += " " + fmt(p) + "/" + fmt(m);
        if (!(p <= prev_p + kTrendSlack) || !(m <= prev_m + kTrendSlack)) non_increasing = false;
        prev_p = p, prev_m = m;
        zero += " " + fmt(two_eta_or_nan(rows[ip_ * nd + i0]));
        if (!entangled(rows[ip_ * nd + i0])) entangled_zero = false;
        for (std::size_t j = 0; j < nd; ++j) {
            const double slope = rows[ip_ * nd + j].result.photocurrent / pgrid[ip_];
            worst_lin = std::max(worst_lin, std::abs(slope - slope0) / std::abs(slope0));
        }
    }
    linear = worst_lin <= kLinearityRel;
    Result r{non_increasing && entangled_zero && linear, ""};
    r.detail = std::string(non_increasing ? "non-increasing in P_c" : "NOT non-increasing in P_c") + " [" + side +
               "]; " + (entangled_zero ? "entangled at 0" : "NOT entangled at 0") + " [" + zero + "]; " +
               "photocurrent linearity rel err " + fmt(worst_lin) + (linear ? " ok" : " too large");
    return runtime_guard(r, secs, kRuntimeC9);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Result c10_determinism(const std::string& cli) {
    if (cli.empty()) return {false, "no --cli path given"};
    const fs::path root = fs::temp_directory_path() / ("cavent_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(root);
    auto run = [&](const std::string& tag, int workers) {
        const fs::path out = root / tag;
        const std::string cmd = "\"" + cli + "\" entangle --preset fig3 --no-plot --workers " +
                                std::to_string(workers) + " --out \"" + out.string() + "\" 2>/dev/null";
        const int rc = std::system(cmd.c_str());
        return rc == 0 ? slurp(out / "entangle.csv") : std::string();
    };
    const std::string w1 = run("w1", 1), w8 = run("w8", 8), again = run("again", 1);
    fs::remove_all(root);
    if (w1.empty() || w8.empty() || again.empty()) return {false, "CLI run failed"};
    const bool same = w1 == w8 && w1 == again;
    return {same, same ? std::to_string(w1.size()) + " bytes identical for 1 worker, 8 workers and a re-run"
                       : std::string("CSV differs between runs")};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavent acceptance battery"};
    int only = 0;
    std::string cli;
    app.add_option("--only", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    app.add_option("--cli", cli, "path to the cavent executable (criterion 10)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
        {"gaussian criterion exactness", [] { return from_check(check::gaussian_exactness()); }},
        {"lyapunov correctness", [] { return from_check(check::lyapunov_correctness()); }},
        {"decoupled closed form", [] { return from_check(check::decoupled_closed_form()); }},
        {"steady-state certificate", [] { return from_check(check::steady_state_certificate()); }},
        {"stability cross-check", [] { return from_check(check::stability_cross_check()); }},
        {"photocurrent spectrum trends", c6_spectrum},
        {"entanglement vs temperature trends", c7_fig3},
        {"optical detuning resonance", c8_fig4},
        {"optical power trends", c9_fig5},
        {"sweep determinism", [&] { return c10_determinism(cli); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i + 1) != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s c%zu %s (%.3f s): %s\n", r.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    return failed ? 1 : 0;
}
