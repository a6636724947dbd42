#include "cavent/photodiode.hpp"

#include <cmath>
#include <sstream>

#include "cavent/errors.hpp"
#include "cavent/physics.hpp"

namespace cavent {

void DetectorMaterial::validate() const {
    if (!(gap_energy > 0.0)) throw DomainError("detector gap energy must be positive");
    if (!(reduced_mass > 0.0)) throw DomainError("detector reduced mass must be positive");
    if (!(momentum_sq >= 0.0)) throw DomainError("detector |P_cv|^2 must be non-negative");
    if (!(linewidth > 0.0)) throw DomainError("detector linewidth must be positive");
    if (!(line_center > 0.0)) throw DomainError("detector line center must be positive");
    if (!(temperature.prefactor >= 0.0)) throw DomainError("temperature prefactor must be >= 0");
    if (!(temperature.activation_energy >= 0.0))
        throw DomainError("activation energy must be >= 0");
}

DetectorMaterial silicon() {
    DetectorMaterial m;
    m.gap_energy = ev_to_joule(1.1);
    m.reduced_mass = 0.156 * kCodata.m0;
    // Kane energy E_P = 2 |P_cv|^2 / m0
    m.momentum_sq = 0.5 * ev_to_joule(20.0) * kCodata.m0;
    m.linewidth = ev_to_omega(0.1);
    m.line_center = m.gap_energy / kCodata.hbar;
    m.temperature = TemperatureModel{ev_to_joule(0.20), 1.0e4};
    return m;
}

double lorentzian(double omega, double center, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("lorentzian: linewidth must be positive");
    const double d = omega - center;
    const double h = 0.5 * gamma;
    return (gamma / (2.0 * kPi)) / (d * d + h * h);
}

double joint_dos(double photon_energy, const DetectorMaterial& mat) {
    if (!(photon_energy > 0.0)) throw DomainError("joint_dos: photon energy must be positive");
    const double excess = photon_energy - mat.gap_energy;
    if (excess <= 0.0) return 0.0;
    const double k = 2.0 * mat.reduced_mass / (kCodata.hbar * kCodata.hbar);
    return (1.0 / (2.0 * kPi * kPi)) * std::pow(k, 1.5) * std::sqrt(excess);
}

double temperature_factor(double temperature, const TemperatureModel& model) {
    if (!(temperature >= 0.0)) throw DomainError("temperature_factor: T must be >= 0");
    if (temperature == 0.0 || model.prefactor == 0.0) return 1.0;
    const double boltzmann = std::exp(-model.activation_energy / (kCodata.kB * temperature));
    return 1.0 / (1.0 + model.prefactor * boltzmann);
}

double transition_rate(const OpticalDrive& drive, const DetectorMaterial& mat, double temperature) {
    mat.validate();
    if (!(drive.omega > 0.0)) throw DomainError("optical drive frequency must be positive");
    if (!(drive.intensity >= 0.0)) throw DomainError("optical drive intensity must be >= 0");
    const double g = joint_dos(kCodata.hbar * drive.omega, mat);
    if (g == 0.0) return 0.0;
    const double e = kCodata.e_charge;
    const double m0 = kCodata.m0;
    const double matrix_element = e * e * drive.intensity / (4.0 * m0 * m0) * mat.momentum_sq;
    return (2.0 * kPi / kCodata.hbar) * matrix_element * g *
           lorentzian(drive.omega, mat.line_center, mat.linewidth) *
           temperature_factor(temperature, mat.temperature);
}

double coupling_rate(const OpticalDrive& drive, const DetectorMaterial& mat, double temperature,
                     const CouplingModel& model) {
    if (!(model.g_scale >= 0.0)) throw DomainError("coupling scale must be >= 0");
    const OpticalDrive ref{ev_to_omega(model.reference.photon_energy_ev), model.reference.intensity};
    const double ref_rate = transition_rate(ref, mat, model.reference.temperature);
    if (!(ref_rate > 0.0))
        throw DomainError("coupling reference point has zero transition rate (below gap?)");
    return model.g_scale * transition_rate(drive, mat, temperature) / ref_rate;
}

double photocurrent(const OpticalDrive& drive, const DetectorMaterial& mat, double temperature,
                    double n_absorbers) {
    if (!(n_absorbers > 0.0)) throw DomainError("photocurrent: absorber count must be positive");
    return kCodata.e_charge * transition_rate(drive, mat, temperature) * n_absorbers;
}

std::vector<SpectrumRow> photocurrent_spectrum(const std::vector<double>& energies_ev,
                                               const std::vector<double>& temperatures,
                                               const DetectorMaterial& mat, double intensity,
                                               double n_absorbers) {
    if (energies_ev.empty() || temperatures.empty())
        throw DomainError("photocurrent_spectrum: empty energy or temperature grid");
    std::vector<SpectrumRow> rows;
    rows.reserve(energies_ev.size() * temperatures.size());
    for (double ev : energies_ev) {
        for (double t : temperatures) {
            try {
                const OpticalDrive drive{ev_to_omega(ev), intensity};
                rows.push_back({ev, t, photocurrent(drive, mat, t, n_absorbers)});
            } catch (const DomainError& err) {
                std::ostringstream msg;
                msg << "photocurrent_spectrum at (E = " << ev << " eV, T = " << t
                    << " K): " << err.what();
                throw DomainError(msg.str());
            }
        }
    }
    return rows;
}

}  // namespace cavent
