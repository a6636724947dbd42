#include "cavent/physics.hpp"

#include <cmath>
#include <string>

#include "cavent/errors.hpp"

namespace cavent {

void ModeSpec::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("mode omega must be positive, got " + std::to_string(omega));
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw DomainError("mode kappa must be positive, got " + std::to_string(kappa));
    if (!(pump_omega > 0.0) || !std::isfinite(pump_omega))
        throw DomainError("pump omega must be positive, got " + std::to_string(pump_omega));
    if (!(pump_power >= 0.0) || !std::isfinite(pump_power))
        throw DomainError("pump power must be non-negative, got " + std::to_string(pump_power));
}

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("thermal_occupation: omega must be positive");
    if (!(temperature >= 0.0)) throw DomainError("thermal_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = kCodata.hbar * omega / (kCodata.kB * temperature);
    // expm1 keeps full precision in the classical limit x << 1 and
    // overflows cleanly to +inf (N = 0) for x > ~709.
    return 1.0 / std::expm1(x);
}

double drive_amplitude(const ModeSpec& mode) {
    mode.validate();
    return std::sqrt(2.0 * mode.kappa * mode.pump_power / (kCodata.hbar * mode.pump_omega));
}

double ev_to_joule(double ev) { return ev * kCodata.e_charge; }

double ev_to_omega(double ev) {
    if (!(ev > 0.0)) throw DomainError("ev_to_omega: energy must be positive");
    return ev * kCodata.e_charge / kCodata.hbar;
}

double omega_to_ev(double omega) {
    if (!(omega > 0.0)) throw DomainError("omega_to_ev: omega must be positive");
    return omega * kCodata.hbar / kCodata.e_charge;
}

}  // namespace cavent
