#pragma once

// Physical constants, unit conversions and cavity drive amplitudes.
// All frequencies are angular (rad/s), all energies in joules, SI throughout.

namespace cavent {

struct PhysicalConstants {
    double hbar;      // J s
    double kB;        // J / K
    double e_charge;  // C
    double m0;        // kg, free electron mass
};

/// CODATA 2018 values (hbar derived from the exact h).
inline constexpr PhysicalConstants kCodata{
    1.054571817e-34,
    1.380649e-23,
    1.602176634e-19,
    9.1093837015e-31,
};

inline constexpr double kPi = 3.14159265358979323846;

/// One bosonic cavity mode and its coherent pump.
struct ModeSpec {
    double omega = 0.0;       // resonance, rad/s
    double kappa = 0.0;       // amplitude decay rate, rad/s
    double pump_omega = 0.0;  // pump carrier, rad/s
    double pump_power = 0.0;  // W

    /// Throws DomainError unless omega > 0, kappa > 0, pump_omega > 0, pump_power >= 0.
    void validate() const;
};

/// Bose-Einstein occupation [exp(hbar w / kB T) - 1]^-1; exactly 0 at T = 0.
double thermal_occupation(double omega, double temperature);

/// Pump amplitude E = sqrt(2 kappa P / (hbar w_pump)) in sqrt(photons/s) units,
/// i.e. the rate entering d<a>/dt.
double drive_amplitude(const ModeSpec& mode);

double ev_to_omega(double ev);
double omega_to_ev(double omega);
double ev_to_joule(double ev);

}  // namespace cavent
