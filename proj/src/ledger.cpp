#include "cavent/ledger.hpp"

#include <cmath>

#include "cavent/errors.hpp"

namespace cavent {

Ledger default_ledger() { return Ledger{}; }

void Ledger::validate() const {
    if (!(optical_photon_energy_ev > 0.0)) throw DomainError("optical photon energy must be > 0");
    if (!(microwave_omega > 0.0)) throw DomainError("microwave omega must be > 0");
    if (!(intensity_per_watt > 0.0)) throw DomainError("intensity_per_watt must be > 0");
    if (!(n_absorbers > 0.0)) throw DomainError("n_absorbers must be > 0");
    if (!(q_scale >= 0.0)) throw DomainError("q_scale must be >= 0");
    if (!(reference_power > 0.0)) throw DomainError("reference power must be > 0");
    if (!std::isfinite(delta_c_over_w) || !std::isfinite(delta_w_over_w))
        throw DomainError("detunings must be finite");
    material.validate();
    system_params(0.0).validate();
}

OpticalDrive Ledger::optical_drive() const {
    return OpticalDrive{ev_to_omega(optical_photon_energy_ev),
                        intensity_per_watt * optical_pump_power};
}

CouplingModel Ledger::coupling_model() const {
    return CouplingModel{q_scale, CouplingReference{reference_energy_ev, reference_temperature,
                                                    intensity_per_watt * reference_power}};
}

double Ledger::coupling() const {
    return coupling_rate(optical_drive(), material, temperature, coupling_model());
}

SystemParams Ledger::system_params(double q_oc) const {
    SystemParams p;
    const double wc = ev_to_omega(optical_photon_energy_ev);
    p.optical = ModeSpec{wc, optical_kappa, wc, optical_pump_power};
    p.microwave = ModeSpec{microwave_omega, microwave_kappa, microwave_omega, microwave_pump_power};
    p.delta_c = delta_c_over_w * microwave_omega;
    p.delta_w = delta_w_over_w * microwave_omega;
    p.q_oc = q_oc;
    p.temperature = temperature;
    return p;
}

}  // namespace cavent
