#include "cavent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "cavent/errors.hpp"

namespace cavent {

const char* to_string(PointStatus s) {
    switch (s) {
        case PointStatus::ok: return "ok";
        case PointStatus::unstable: return "unstable";
        case PointStatus::nonconverged: return "nonconverged";
        case PointStatus::ill_conditioned: return "ill_conditioned";
    }
    return "unknown";
}

PointResult run_point(const Ledger& ledger) {
    ledger.validate();
    PointResult r;
    r.q_oc = ledger.coupling();
    r.photocurrent = photocurrent(ledger.optical_drive(), ledger.material, ledger.temperature,
                                  ledger.n_absorbers);
    r.params = ledger.system_params(r.q_oc);

    SteadyState s;
    try {
        s = solve_steady_state(r.params, ledger.solver);
        r.converged = true;
    } catch (const NonConvergence& nc) {
        s = nc.last;
        r.alpha = s.alpha;
        r.beta = s.beta;
        r.iterations = s.iterations;
        r.status = PointStatus::nonconverged;
        return r;
    }
    r.alpha = s.alpha;
    r.beta = s.beta;
    r.iterations = s.iterations;
    r.linearization_valid = linearization_valid(s);

    const EffectiveParams eff = effective_params(s, r.params);
    const QuadratureDrift a = to_quadrature(complex_drift(eff, r.params));
    const DiffusionMatrix d = diffusion(r.params);
    const StabilityReport st = stability(a);
    r.stable = st.stable;
    r.marginally_stable = st.marginal;
    r.max_real_part = st.max_real_part;
    r.eigenvalues = st.eigenvalues;
    if (!st.stable) {
        r.status = PointStatus::unstable;
        return r;
    }
    try {
        const CovarianceMatrix v = solve_lyapunov(a, d);
        const EntanglementVerdict verdict = symplectic_eigenvalue(v);
        r.covariance = v;
        r.two_eta = verdict.two_eta;
        r.entangled = verdict.entangled;
    } catch (const IllConditioned&) {
        r.status = PointStatus::ill_conditioned;
    }
    return r;
}

const std::vector<AxisInfo>& axis_registry() {
    static const std::vector<AxisInfo> registry{
        {"delta_w_over_w", "1"}, {"delta_c_over_w", "1"}, {"T", "K"},
        {"P_c", "W"},           {"P_w", "W"},           {"photon_energy_ev", "eV"},
        {"q_scale", "rad/s"},
    };
    return registry;
}

void apply_axis(Ledger& l, const std::string& name, double v) {
    if (name == "delta_w_over_w") l.delta_w_over_w = v;
    else if (name == "delta_c_over_w") l.delta_c_over_w = v;
    else if (name == "T") l.temperature = v;
    else if (name == "P_c") l.optical_pump_power = v;
    else if (name == "P_w") l.microwave_pump_power = v;
    else if (name == "photon_energy_ev") l.optical_photon_energy_ev = v;
    else if (name == "q_scale") l.q_scale = v;
    else throw ConfigError("unknown sweep axis '" + name + "'");
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2)
        throw ConfigError("a sweep needs one or two axes, got " + std::to_string(axes.size()));
    for (const Axis& ax : axes) {
        const auto& reg = axis_registry();
        const auto it = std::find_if(reg.begin(), reg.end(),
                                     [&](const AxisInfo& i) { return ax.name == i.name; });
        if (it == reg.end()) throw ConfigError("unknown sweep axis '" + ax.name + "'");
        if (!ax.unit.empty() && ax.unit != it->unit)
            throw ConfigError("axis '" + ax.name + "' has unit " + it->unit + ", not " + ax.unit);
        if (ax.values.empty()) throw ConfigError("axis '" + ax.name + "' has no values");
        for (double v : ax.values)
            if (!std::isfinite(v)) throw ConfigError("axis '" + ax.name + "' has a non-finite value");
    }
    if (axes.size() == 2 && axes[0].name == axes[1].name)
        throw ConfigError("sweep axes must differ");
    base.validate();
}

std::size_t SweepSpec::size() const {
    std::size_t n = 1;
    for (const Axis& ax : axes) n *= ax.values.size();
    return n;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers) {
    spec.validate();
    const std::size_t total = spec.size();
    std::vector<SweepRow> rows(total);

    auto compute = [&](std::size_t index) {
        // decompose the flat index; last axis fastest
        std::vector<double> coords(spec.axes.size());
        std::size_t rest = index;
        for (std::size_t k = spec.axes.size(); k-- > 0;) {
            const auto& vals = spec.axes[k].values;
            coords[k] = vals[rest % vals.size()];
            rest /= vals.size();
        }
        Ledger l = spec.base;
        for (std::size_t k = 0; k < coords.size(); ++k) apply_axis(l, spec.axes[k].name, coords[k]);
        rows[index] = SweepRow{std::move(coords), run_point(l)};
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
    if (workers == 1) {
        for (std::size_t i = 0; i < total; ++i) compute(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < total; i = next++) compute(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next = total;
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::vector<double> linspace(double first, double last, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {first};
    std::vector<double> out(n);
    const double span = last - first;
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = first + span * (static_cast<double>(i) / denom);
    out.back() = last;
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

template <class T, class F>
std::string optional_text(const std::optional<T>& v, F&& fmt) {
    return v ? fmt(*v) : std::string{};
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_field(fields[i]);
    }
    os << '\n';
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::vector<std::string> header;
    for (const Axis& ax : spec.axes) header.push_back(ax.name);
    for (const char* col :
         {"status", "q_oc", "photocurrent", "alpha_re", "alpha_im", "beta_re", "beta_im",
          "iterations", "linearization_valid", "stable", "marginally_stable", "max_real_part",
          "two_eta", "entangled", "optical_omega", "optical_kappa", "optical_pump_omega",
          "optical_pump_power", "microwave_omega", "microwave_kappa", "microwave_pump_omega",
          "microwave_pump_power", "delta_c", "delta_w", "temperature"})
        header.emplace_back(col);
    write_row(os, header);

    for (const SweepRow& row : rows) {
        const PointResult& r = row.result;
        const SystemParams& p = r.params;
        std::vector<std::string> f;
        for (double c : row.coords) f.push_back(format_double(c));
        f.emplace_back(to_string(r.status));
        f.push_back(format_double(r.q_oc));
        f.push_back(format_double(r.photocurrent));
        f.push_back(format_double(r.alpha.real()));
        f.push_back(format_double(r.alpha.imag()));
        f.push_back(format_double(r.beta.real()));
        f.push_back(format_double(r.beta.imag()));
        f.push_back(std::to_string(r.iterations));
        f.emplace_back(bool_text(r.linearization_valid));
        f.emplace_back(bool_text(r.stable));
        f.emplace_back(bool_text(r.marginally_stable));
        f.push_back(optional_text(r.max_real_part, format_double));
        f.push_back(optional_text(r.two_eta, format_double));
        f.push_back(optional_text(r.entangled, [](bool b) { return std::string(bool_text(b)); }));
        for (double x : {p.optical.omega, p.optical.kappa, p.optical.pump_omega,
                         p.optical.pump_power, p.microwave.omega, p.microwave.kappa,
                         p.microwave.pump_omega, p.microwave.pump_power, p.delta_c, p.delta_w,
                         p.temperature})
            f.push_back(format_double(x));
        write_row(os, f);
    }
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
    os << "energy_ev,temperature,photocurrent\n";
    for (const SpectrumRow& r : rows)
        os << format_double(r.energy_ev) << ',' << format_double(r.temperature) << ','
           << format_double(r.current) << '\n';
}

}  // namespace cavent
