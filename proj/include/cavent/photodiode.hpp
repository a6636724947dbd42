#pragma once

// Photodetector transition rate from Fermi's golden rule, and the
// OC -> MW coupling rate and photocurrent derived from it.

#include <vector>

namespace cavent {

/// Thermally activated carrier escape competing with capture:
/// f(T) = 1 / (1 + prefactor * exp(-activation_energy / kB T)).
struct TemperatureModel {
    double activation_energy = 0.0;  // J
    double prefactor = 0.0;
};

struct DetectorMaterial {
    double gap_energy = 0.0;    // J
    double reduced_mass = 0.0;  // kg, electron-hole effective mass
    double momentum_sq = 0.0;   // |P_cv|^2, (kg m/s)^2
    double linewidth = 0.0;     // Lorentzian full width, rad/s
    double line_center = 0.0;   // transition line center, rad/s
    TemperatureModel temperature;

    void validate() const;
};

/// Silicon defaults: 1.1 eV gap, 0.156 m0 reduced mass, 20 eV Kane energy,
/// 0.1 eV linewidth centered on the gap, escape barrier 0.2 eV with prefactor 1e4.
DetectorMaterial silicon();

/// Optical field incident on the detector.
struct OpticalDrive {
    double omega = 0.0;      // rad/s
    double intensity = 0.0;  // A0^2, proportional to optical power
};

/// Normalized Lorentzian, unit integral over omega, peak 2/(pi gamma).
double lorentzian(double omega, double center, double gamma);

/// Interband joint density of states; zero at and below the gap.
double joint_dos(double photon_energy, const DetectorMaterial& mat);

double temperature_factor(double temperature, const TemperatureModel& model);

/// Golden-rule transition rate per absorber (before any coupling scale).
double transition_rate(const OpticalDrive& drive, const DetectorMaterial& mat, double temperature);

/// Operating point against which transition rates are normalized.
struct CouplingReference {
    double photon_energy_ev = 1.2;
    double temperature = 80.0;
    double intensity = 0.0;  // A0^2 of the reference drive
};

/// Maps the golden-rule rate onto the cross-Kerr rate q_oc of the two-mode
/// Hamiltonian: q_oc = g_scale * rate / rate(reference).
struct CouplingModel {
    double g_scale = 0.0;  // rad/s
    CouplingReference reference;
};

double coupling_rate(const OpticalDrive& drive, const DetectorMaterial& mat, double temperature,
                     const CouplingModel& model);

/// One elementary charge per transition, n_absorbers effective absorbing states.
double photocurrent(const OpticalDrive& drive, const DetectorMaterial& mat, double temperature,
                    double n_absorbers);

struct SpectrumRow {
    double energy_ev;
    double temperature;
    double current;  // A
};

/// Row-major table, energies outer and temperatures inner.
std::vector<SpectrumRow> photocurrent_spectrum(const std::vector<double>& energies_ev,
                                               const std::vector<double>& temperatures,
                                               const DetectorMaterial& mat, double intensity,
                                               double n_absorbers);

}  // namespace cavent
