#include "cavent/calibration.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "cavent/sweep.hpp"

namespace cavent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool non_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] >= xs[i - 1] - kTrendSlack)) return false;  // NaN fails too
    return true;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += format_double(xs[i]);
    }
    return out;
}

}  // namespace

CalibrationFailure::CalibrationFailure(CalibrationRecord nearest)
    : Error("no q_scale in [" + format_double(nearest.search.q_min) + ", " +
            format_double(nearest.search.q_max) +
            "] meets the calibration criteria; nearest miss q_scale = " +
            format_double(nearest.q_scale)),
      nearest_miss(std::move(nearest)) {}

std::vector<double> CalibrationSearch::candidates() const {
    if (!(q_min > 0.0) || !(q_max >= q_min) || points_per_decade == 0)
        throw ConfigError("calibration search needs 0 < q_min <= q_max and points_per_decade >= 1");
    const double lo = std::log10(q_min);
    const auto n = static_cast<std::size_t>(
        std::floor((std::log10(q_max) - lo) * points_per_decade + 1e-9));
    std::vector<double> out;
    for (std::size_t k = 0; k <= n; ++k)
        out.push_back(std::pow(10.0, lo + static_cast<double>(k) / points_per_decade));
    return out;
}

CandidateEvidence evaluate_candidate(const CalibrationSearch& search, double q_scale) {
    SweepSpec spec;
    spec.base = search.base;
    spec.base.q_scale = q_scale;
    spec.base.delta_c_over_w = 0.0;
    spec.axes = {Axis{"T", "K", search.temperatures},
                 Axis{"delta_w_over_w", "1", {0.0, search.side_detuning, -search.side_detuning}}};
    const auto rows = run_sweep(spec, search.workers);

    CandidateEvidence ev;
    ev.q_scale = q_scale;
    ev.entangled_at_zero = true;
    ev.zero_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < search.temperatures.size(); ++t) {
        const auto value = [&](std::size_t k) {
            const auto& r = rows[3 * t + k].result;
            return r.two_eta ? *r.two_eta : kNaN;
        };
        ev.two_eta_zero.push_back(value(0));
        ev.two_eta_plus.push_back(value(1));
        ev.two_eta_minus.push_back(value(2));
        const auto& zero = rows[3 * t].result;
        if (!zero.entangled.value_or(false)) ev.entangled_at_zero = false;
        const double v = std::isnan(value(0)) ? std::numeric_limits<double>::infinity()
                                              : value(0) - (1.0 - kVerdictResolution);
        ev.zero_violation = std::max(ev.zero_violation, v);
    }
    ev.monotone_in_t = non_decreasing(ev.two_eta_plus) && non_decreasing(ev.two_eta_minus);
    ev.criteria_met = static_cast<int>(ev.entangled_at_zero) + static_cast<int>(ev.monotone_in_t);
    return ev;
}

CalibrationRecord calibrate_defaults(const CalibrationSearch& search) {
    CalibrationRecord rec;
    rec.search = search;
    for (double q : search.candidates()) rec.candidates.push_back(evaluate_candidate(search, q));
    if (rec.candidates.empty()) throw ConfigError("calibration search range is empty");

    const auto full = std::find_if(rec.candidates.begin(), rec.candidates.end(),
                                   [](const CandidateEvidence& c) { return c.criteria_met == 2; });
    if (full != rec.candidates.end()) {
        rec.success = true;
        rec.chosen = static_cast<std::size_t>(full - rec.candidates.begin());
    } else {
        // violations are compared at 1e-12 resolution so that roundoff in
        // 2 eta near the separable boundary cannot pick the winner
        auto key = [](const CandidateEvidence& c) {
            const double v = std::isfinite(c.zero_violation)
                                 ? std::round(std::max(c.zero_violation, 0.0) * 1e12)
                                 : std::numeric_limits<double>::infinity();
            return std::make_tuple(-c.criteria_met, v, c.q_scale);
        };
        const auto best =
            std::min_element(rec.candidates.begin(), rec.candidates.end(),
                             [&](const auto& a, const auto& b) { return key(a) < key(b); });
        rec.chosen = static_cast<std::size_t>(best - rec.candidates.begin());
    }
    rec.q_scale = rec.candidates[rec.chosen].q_scale;
    rec.ledger = search.base;
    rec.ledger.q_scale = rec.q_scale;
    if (!rec.success) throw CalibrationFailure(rec);
    return rec;
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string format_record(const CalibrationRecord& rec) {
    std::ostringstream os;
    const Ledger& l = rec.ledger;
    const DetectorMaterial& m = l.material;
    auto kv = [&](const std::string& k, const std::string& v) { os << k << '=' << v << '\n'; };
    auto num = [&](const std::string& k, double v) { kv(k, format_double(v)); };

    kv("format", "cavent-calibration");
    kv("version", std::to_string(rec.version));
    kv("status", rec.success ? "success" : "failure");
    num("q_scale", rec.q_scale);
    kv("chosen_candidate", std::to_string(rec.chosen));

    num("ledger.optical_photon_energy_ev", l.optical_photon_energy_ev);
    num("ledger.optical_kappa", l.optical_kappa);
    num("ledger.optical_pump_power", l.optical_pump_power);
    num("ledger.microwave_omega", l.microwave_omega);
    num("ledger.microwave_kappa", l.microwave_kappa);
    num("ledger.microwave_pump_power", l.microwave_pump_power);
    num("ledger.material.gap_energy", m.gap_energy);
    num("ledger.material.reduced_mass", m.reduced_mass);
    num("ledger.material.momentum_sq", m.momentum_sq);
    num("ledger.material.linewidth", m.linewidth);
    num("ledger.material.line_center", m.line_center);
    num("ledger.material.activation_energy", m.temperature.activation_energy);
    num("ledger.material.escape_prefactor", m.temperature.prefactor);
    num("ledger.intensity_per_watt", l.intensity_per_watt);
    num("ledger.n_absorbers", l.n_absorbers);
    num("ledger.reference_energy_ev", l.reference_energy_ev);
    num("ledger.reference_temperature", l.reference_temperature);
    num("ledger.reference_power", l.reference_power);
    num("ledger.solver.tol", l.solver.tol);
    kv("ledger.solver.max_iter", std::to_string(l.solver.max_iter));
    num("ledger.solver.damping", l.solver.damping);

    num("search.q_min", rec.search.q_min);
    num("search.q_max", rec.search.q_max);
    kv("search.points_per_decade", std::to_string(rec.search.points_per_decade));
    kv("search.temperatures", join(rec.search.temperatures));
    num("search.side_detuning", rec.search.side_detuning);

    kv("candidates", std::to_string(rec.candidates.size()));
    for (std::size_t i = 0; i < rec.candidates.size(); ++i) {
        const CandidateEvidence& c = rec.candidates[i];
        const std::string p = "candidate." + std::to_string(i) + ".";
        num(p + "q_scale", c.q_scale);
        kv(p + "two_eta_zero", join(c.two_eta_zero));
        kv(p + "two_eta_plus", join(c.two_eta_plus));
        kv(p + "two_eta_minus", join(c.two_eta_minus));
        kv(p + "entangled_at_zero", c.entangled_at_zero ? "true" : "false");
        kv(p + "monotone_in_t", c.monotone_in_t ? "true" : "false");
        num(p + "zero_violation", c.zero_violation);
        kv(p + "criteria_met", std::to_string(c.criteria_met));
    }
    const std::string body = os.str();
    return body + "content_sha256=" + sha256_hex(body) + '\n';
}

std::map<std::string, std::string> parse_record(const std::string& text) {
    const std::string marker = "content_sha256=";
    const auto pos = text.rfind(marker);
    if (pos == std::string::npos || (pos != 0 && text[pos - 1] != '\n'))
        throw ConfigError("calibration record has no content hash");
    const std::string body = text.substr(0, pos);
    std::string stored = text.substr(pos + marker.size());
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
    if (stored != sha256_hex(body)) throw ConfigError("calibration record hash mismatch");

    std::map<std::string, std::string> out;
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed calibration line: " + line);
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

}  // namespace cavent
