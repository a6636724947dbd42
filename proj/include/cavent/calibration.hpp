#pragma once

// Search for the coupling scale q_scale at which 2 eta(0) < 1 and the
// side-detuning values rise with temperature, and the key=value record
// that versions the result.

#include <map>
#include <string>
#include <vector>

#include "cavent/errors.hpp"
#include "cavent/ledger.hpp"

namespace cavent {

struct CalibrationSearch {
    Ledger base;
    double q_min = 1e-12;
    double q_max = 1e2;
    unsigned points_per_decade = 2;
    std::vector<double> temperatures{80.0, 180.0, 250.0, 273.0, 298.0};
    double side_detuning = 0.5;  // |delta_w / omega_w| of the monotonicity check
    unsigned workers = 1;

    std::vector<double> candidates() const;
};

struct CandidateEvidence {
    double q_scale = 0.0;
    // per temperature; NaN where no stationary state was found
    std::vector<double> two_eta_zero;
    std::vector<double> two_eta_plus;
    std::vector<double> two_eta_minus;
    bool entangled_at_zero = false;
    bool monotone_in_t = false;
    double zero_violation = 0.0;  // max_T two_eta(0) - (1 - resolution), >= 0 on miss
    int criteria_met = 0;
};

struct CalibrationRecord {
    int version = 1;
    bool success = false;
    double q_scale = 0.0;
    std::size_t chosen = 0;
    Ledger ledger;  // with q_scale applied
    CalibrationSearch search;
    std::vector<CandidateEvidence> candidates;
};

class CalibrationFailure : public Error {
public:
    explicit CalibrationFailure(CalibrationRecord nearest);
    CalibrationRecord nearest_miss;
};

/// Absolute slack on "non-decreasing" comparisons of 2 eta.
inline constexpr double kTrendSlack = 1e-12;

CandidateEvidence evaluate_candidate(const CalibrationSearch& search, double q_scale);

/// Returns the smallest q_scale meeting every criterion, or throws
/// CalibrationFailure carrying the nearest miss (most criteria met, then
/// smallest zero-detuning violation, then smallest q_scale).
CalibrationRecord calibrate_defaults(const CalibrationSearch& search);

/// key=value text, terminated by a content_sha256 line over everything above it.
std::string format_record(const CalibrationRecord& rec);

/// Parses a record, verifying its hash. Throws ConfigError on mismatch.
std::map<std::string, std::string> parse_record(const std::string& text);

std::string sha256_hex(const std::string& data);

}  // namespace cavent
