#pragma once

// End-to-end pipeline for one operating point and grid sweeps over it.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cavent/covariance.hpp"
#include "cavent/ledger.hpp"
#include "cavent/lindyn.hpp"

namespace cavent {

enum class PointStatus { ok, unstable, nonconverged, ill_conditioned };

const char* to_string(PointStatus s);

struct PointResult {
    SystemParams params;  // echo, with the computed q_oc
    double q_oc = 0.0;
    double photocurrent = 0.0;
    cplx alpha;
    cplx beta;
    std::size_t iterations = 0;
    bool converged = false;
    bool linearization_valid = false;
    bool stable = false;
    bool marginally_stable = false;
    std::optional<double> max_real_part;
    std::array<cplx, 4> eigenvalues{};
    std::optional<double> two_eta;
    std::optional<bool> entangled;
    std::optional<CovarianceMatrix> covariance;
    PointStatus status = PointStatus::ok;
};

/// photodiode -> steady state -> drift -> diffusion -> stability ->
/// Lyapunov -> symplectic eigenvalue. Physical failures (instability,
/// non-convergence) are flagged in the result, never thrown.
PointResult run_point(const Ledger& ledger);

// ---- sweeps ---------------------------------------------------------------

struct AxisInfo {
    const char* name;
    const char* unit;
};

/// Parameters that may be swept.
const std::vector<AxisInfo>& axis_registry();

struct Axis {
    std::string name;
    std::string unit;
    std::vector<double> values;
};

struct SweepSpec {
    Ledger base;
    std::vector<Axis> axes;  // 1 or 2; the first varies slowest

    void validate() const;
    std::size_t size() const;
};

/// Sets the named registry parameter on a ledger.
void apply_axis(Ledger& ledger, const std::string& name, double value);

struct SweepRow {
    std::vector<double> coords;
    PointResult result;
};

/// One row per grid point in row-major axis order. Output order does not
/// depend on `workers`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers = 1);

std::vector<double> linspace(double first, double last, std::size_t n);

// ---- CSV ------------------------------------------------------------------

/// %.17g, the shortest form that round-trips every double.
std::string format_double(double x);
std::string csv_field(const std::string& raw);

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows);

}  // namespace cavent
