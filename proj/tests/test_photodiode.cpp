#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "cavent/errors.hpp"
#include "cavent/ledger.hpp"
#include "cavent/oracles.hpp"
#include "cavent/photodiode.hpp"
#include "cavent/sweep.hpp"
#include "support.hpp"

using namespace cavent;
using testing::rel_err;

namespace {

OpticalDrive drive_at(double ev, double intensity = default_ledger().optical_drive().intensity) {
    return OpticalDrive{ev_to_omega(ev), intensity};
}

}  // namespace

TEST_SUITE("photodiode") {

TEST_CASE("lorentzian peak, half width and normalization") {
    const double w0 = 3e15, g = 1.5e14;
    const double peak = 2.0 / (kPi * g);
    CHECK(rel_err(lorentzian(w0, w0, g), peak) < 1e-15);
    CHECK(rel_err(lorentzian(w0 + g / 2, w0, g), peak / 2) < 1e-15);
    CHECK(rel_err(lorentzian(w0 - g / 2, w0, g), peak / 2) < 1e-15);
    const double area = oracle::trapezoid([&](double w) { return lorentzian(w, w0, g); }, w0 - 50 * g,
                                          w0 + 50 * g, 200000);
    CHECK(area == doctest::Approx(1.0).epsilon(0.01));
    CHECK_THROWS_AS(lorentzian(w0, w0, 0.0), DomainError);
}

TEST_CASE("joint density of states") {
    const DetectorMaterial si = silicon();
    CHECK(joint_dos(si.gap_energy, si) == 0.0);
    CHECK(joint_dos(si.gap_energy / 2, si) == 0.0);
    CHECK_THROWS_AS(joint_dos(0.0, si), DomainError);
    testing::Gen g(21);
    for (int trial = 0; trial < 100; ++trial) {
        const double x = g.log_uniform(1e-25, 1e-19);
        // excess energies as actually represented above the gap
        const double e1 = si.gap_energy + x, e4 = si.gap_energy + 4 * x;
        const double want = std::sqrt((e4 - si.gap_energy) / (e1 - si.gap_energy));
        CHECK(rel_err(joint_dos(e4, si) / joint_dos(e1, si), want) < 1e-12);
    }
    // closed form with hand-assembled prefactor
    const double x = ev_to_joule(0.05);
    const double k = 2.0 * si.reduced_mass / (kCodata.hbar * kCodata.hbar);
    CHECK(rel_err(joint_dos(si.gap_energy + x, si), std::sqrt(k * k * k) * std::sqrt(x) / (2 * kPi * kPi)) < 1e-12);
}

TEST_CASE("temperature factor") {
    const TemperatureModel m = silicon().temperature;
    CHECK(temperature_factor(0.0, m) == 1.0);
    CHECK(temperature_factor(1e-3, m) == 1.0);
    CHECK(temperature_factor(300.0, TemperatureModel{m.activation_energy, 0.0}) == 1.0);
    const double t_half = m.activation_energy / (kCodata.kB * std::log(m.prefactor));
    CHECK(temperature_factor(t_half, m) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(temperature_factor(-1.0, m), DomainError);

    // substantial drop across the operating range
    CHECK(temperature_factor(80.0, m) > 0.99);
    CHECK(temperature_factor(310.0, m) < 0.25);

    testing::Gen g(22);
    for (int trial = 0; trial < 300; ++trial) {
        const TemperatureModel r{g.uniform(0.0, 1e-19), g.log_uniform(1e-3, 1e8)};
        const double t1 = g.uniform(0.0, 500.0), t2 = t1 + g.uniform(0.0, 100.0);
        const double f1 = temperature_factor(t1, r), f2 = temperature_factor(t2, r);
        CHECK(f1 > 0.0);
        CHECK(f1 <= 1.0);
        CHECK(f2 <= f1);
    }
}

TEST_CASE("transition rate assembles the golden-rule product") {
    const DetectorMaterial si = silicon();
    const OpticalDrive d = drive_at(1.2, 2.5e-35);
    const double e = kCodata.e_charge, m0 = kCodata.m0;
    const double expect = (2 * kPi / kCodata.hbar) * (e * e * d.intensity / (4 * m0 * m0)) * si.momentum_sq *
                          joint_dos(kCodata.hbar * d.omega, si) * lorentzian(d.omega, si.line_center, si.linewidth) *
                          temperature_factor(150.0, si.temperature);
    CHECK(rel_err(transition_rate(d, si, 150.0), expect) < 1e-14);
}

TEST_CASE("coupling rate") {
    const Ledger l = default_ledger();
    const DetectorMaterial si = l.material;
    const CouplingModel model = l.coupling_model();
    CHECK(coupling_rate(drive_at(1.0), si, 80.0, model) == 0.0);

    // normalization: the reference point maps onto g_scale
    const OpticalDrive ref{ev_to_omega(model.reference.photon_energy_ev), model.reference.intensity};
    CHECK(rel_err(coupling_rate(ref, si, model.reference.temperature, model), model.g_scale) < 1e-15);

    const OpticalDrive d = drive_at(1.15);
    OpticalDrive d2 = d;
    d2.intensity *= 2.0;
    CHECK(rel_err(coupling_rate(d2, si, 200.0, model), 2.0 * coupling_rate(d, si, 200.0, model)) < 1e-14);
    CHECK(coupling_rate(d, si, 80.0, model) > coupling_rate(d, si, 298.0, model));
}

TEST_CASE("property: coupling and photocurrent non-increasing in T, linear in intensity and |P_cv|^2") {
    testing::Gen g(23);
    const Ledger l = default_ledger();
    for (int trial = 0; trial < 200; ++trial) {
        const OpticalDrive d = drive_at(g.uniform(0.8, 1.6), g.log_uniform(1e-40, 1e-30));
        const double t1 = g.uniform(0.0, 400.0), t2 = t1 + g.uniform(0.0, 100.0);
        CHECK(coupling_rate(d, l.material, t2, l.coupling_model()) <= coupling_rate(d, l.material, t1, l.coupling_model()));
        CHECK(photocurrent(d, l.material, t2, 1e10) <= photocurrent(d, l.material, t1, 1e10));

        const double s = g.log_uniform(1e-3, 1e3);
        OpticalDrive ds = d;
        ds.intensity *= s;
        DetectorMaterial ms = l.material;
        ms.momentum_sq *= s;
        const double base = photocurrent(d, l.material, t1, 1e10);
        CHECK(photocurrent(ds, l.material, t1, 1e10) == doctest::Approx(s * base).epsilon(1e-13));
        CHECK(photocurrent(d, ms, t1, 1e10) == doctest::Approx(s * base).epsilon(1e-13));
    }
}

TEST_CASE("property: rate is continuous across the gap edge") {
    const DetectorMaterial si = silicon();
    const double gap_w = si.gap_energy / kCodata.hbar;
    double prev = INFINITY;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
        const double above = transition_rate(OpticalDrive{gap_w * (1 + eps), 1e-34}, si, 80.0);
        CHECK(above < prev);
        prev = above;
        CHECK(transition_rate(OpticalDrive{gap_w * (1 - eps), 1e-34}, si, 80.0) == 0.0);
    }
    // sqrt onset: eight decades of detuning cost four of rate
    CHECK(prev < 2e-4 * transition_rate(OpticalDrive{gap_w * 1.01, 1e-34}, si, 80.0));
}

TEST_CASE("photocurrent") {
    const Ledger l = default_ledger();
    CHECK(photocurrent(drive_at(0.9), l.material, 80.0, 1e10) == 0.0);
    const double i1 = photocurrent(drive_at(1.13), l.material, 80.0, 1e10);
    CHECK(rel_err(photocurrent(drive_at(1.13), l.material, 80.0, 3e10), 3 * i1) < 1e-15);
    CHECK_THROWS_AS(photocurrent(drive_at(1.13), l.material, 80.0, 0.0), DomainError);
    // ledger scale: microamp peak at 80 K, 10 mW
    CHECK(i1 > 1e-6);
    CHECK(i1 < 1e-5);
}

TEST_CASE("photocurrent spectrum") {
    const Ledger l = default_ledger();
    const double inten = l.optical_drive().intensity;
    const auto one = photocurrent_spectrum({1.2}, {250.0}, l.material, inten, l.n_absorbers);
    REQUIRE(one.size() == 1);
    CHECK(one[0].current == photocurrent(drive_at(1.2, inten), l.material, 250.0, l.n_absorbers));

    const std::vector<double> energies = linspace(0.8, 1.6, 81);
    const std::vector<double> temps{80, 180, 250, 273, 298, 310};
    const auto rows = photocurrent_spectrum(energies, temps, l.material, inten, l.n_absorbers);
    REQUIRE(rows.size() == energies.size() * temps.size());
    // energies outer, temperatures inner
    CHECK(rows[1].energy_ev == energies[0]);
    CHECK(rows[1].temperature == temps[1]);
    CHECK(rows[temps.size()].energy_ev == energies[1]);

    // I(80) >= I(298) everywhere; peak cell identical for every T and near the g_J L maximum
    std::vector<std::size_t> argmax(temps.size(), 0);
    for (std::size_t e = 0; e < energies.size(); ++e) {
        CHECK(rows[e * temps.size() + 0].current >= rows[e * temps.size() + 4].current);
        for (std::size_t t = 0; t < temps.size(); ++t)
            if (rows[e * temps.size() + t].current > rows[argmax[t] * temps.size() + t].current) argmax[t] = e;
    }
    for (std::size_t t = 1; t < temps.size(); ++t) CHECK(argmax[t] == argmax[0]);
    std::size_t shape_max = 0;
    double best = -1;
    for (std::size_t e = 0; e < energies.size(); ++e) {
        const double w = ev_to_omega(energies[e]);
        const double s = joint_dos(kCodata.hbar * w, l.material) * lorentzian(w, l.material.line_center, l.material.linewidth);
        if (s > best) best = s, shape_max = e;
    }
    CHECK(argmax[0] == shape_max);
    CHECK(std::abs(energies[shape_max] - 1.1) <= 0.1);

    CHECK_THROWS_AS(photocurrent_spectrum({}, {80.0}, l.material, inten, 1e10), DomainError);
    try {
        photocurrent_spectrum({1.2}, {-5.0}, l.material, inten, 1e10);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("T = -5") != std::string::npos);
    }
}

}  // TEST_SUITE
