#pragma once

// Default operating point. Device numbers with no measured source live
// here, versioned together with the calibration record in
// data/calibration.txt.

#include "cavent/photodiode.hpp"
#include "cavent/physics.hpp"
#include "cavent/steady_state.hpp"

namespace cavent {

struct Ledger {
    // optical cavity: pump and resonance at the same photon energy
    double optical_photon_energy_ev = 1.12;
    double optical_kappa = 2.0 * kPi * 1.0e6;
    double optical_pump_power = 0.010;
    // microwave LC cavity
    double microwave_omega = 2.0 * kPi * 10.0e9;
    double microwave_kappa = 2.0 * kPi * 1.0e6;
    double microwave_pump_power = 0.010;
    // detunings in units of microwave_omega
    double delta_c_over_w = 0.0;
    double delta_w_over_w = 0.0;
    double temperature = 298.0;

    DetectorMaterial material = silicon();
    /// A0^2 per watt of optical pump power.
    double intensity_per_watt = 3.3e-34;
    double n_absorbers = 1.0e10;
    /// rad/s; nearest miss of the default calibration search
    double q_scale = 3.1622776601683795;
    double reference_energy_ev = 1.2;
    double reference_temperature = 80.0;
    double reference_power = 0.010;

    SolverOptions solver;

    SystemParams system_params(double q_oc) const;
    OpticalDrive optical_drive() const;
    CouplingModel coupling_model() const;
    /// q_oc at this ledger's photon energy, pump power and temperature.
    double coupling() const;

    void validate() const;
};

Ledger default_ledger();

}  // namespace cavent
