#include <doctest.h>

#include <cmath>

#include "cavent/errors.hpp"
#include "cavent/oracles.hpp"
#include "cavent/physics.hpp"
#include "support.hpp"

using namespace cavent;
using testing::rel_err;

TEST_SUITE("physics") {

TEST_CASE("constants are positive CODATA values") {
    CHECK(kCodata.hbar == 1.054571817e-34);
    CHECK(kCodata.kB == 1.380649e-23);
    CHECK(kCodata.e_charge == 1.602176634e-19);
    CHECK(kCodata.m0 == 9.1093837015e-31);
}

TEST_CASE("thermal occupation: zero temperature is exactly zero") {
    for (double w : {1e3, 2 * kPi * 10e9, 1e16}) CHECK(thermal_occupation(w, 0.0) == 0.0);
}

TEST_CASE("thermal occupation: hbar w = kB T ln 2 gives one photon") {
    const double t = 37.0;
    const double w = kCodata.kB * t * std::log(2.0) / kCodata.hbar;
    CHECK(thermal_occupation(w, t) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("thermal occupation at 10 GHz against the high-precision reference") {
    const double w = 2 * kPi * 10e9;
    // 40-digit evaluation of 1/expm1(hbar w / kB T) with the same constants
    CHECK(rel_err(thermal_occupation(w, 298.0), 620.4313844626333519) < 1e-13);
    CHECK(rel_err(thermal_occupation(w, 80.0), 166.1934530096098668) < 1e-13);
    // long-double oracle agrees
    CHECK(rel_err(thermal_occupation(w, 298.0), double(oracle::bose_reference(w, 298.0L))) < 1e-13);
    // classical limit kB T / hbar w - 1/2
    const double classical = kCodata.kB * 298.0 / (kCodata.hbar * w) - 0.5;
    CHECK(rel_err(thermal_occupation(w, 298.0), classical) < 1e-4);
}

TEST_CASE("thermal occupation domain errors") {
    CHECK_THROWS_AS(thermal_occupation(0.0, 10.0), DomainError);
    CHECK_THROWS_AS(thermal_occupation(-1.0, 10.0), DomainError);
    CHECK_THROWS_AS(thermal_occupation(1e9, -1.0), DomainError);
}

TEST_CASE("thermal occupation: optical mode is frozen out at room temperature") {
    const double n = thermal_occupation(ev_to_omega(1.12), 298.0);
    CHECK(n > 0.0);
    CHECK(rel_err(n, 1.144331325397108946e-19) < 1e-12);
}

TEST_CASE("property: N increases with T and decreases with omega") {
    testing::Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double w = g.log_uniform(1e8, 1e15);
        const double t1 = g.log_uniform(1e-2, 1e3);
        const double t2 = t1 * g.uniform(1.001, 3.0);
        const double n1 = thermal_occupation(w, t1), n2 = thermal_occupation(w, t2);
        if (n1 > 0.0) CHECK(n2 > n1);
        const double w2 = w * g.uniform(1.001, 3.0);
        const double m2 = thermal_occupation(w2, t1);
        if (n1 > 0.0) CHECK(m2 < n1);
    }
}

TEST_CASE("property: high-temperature expansion") {
    testing::Gen g(12);
    for (int trial = 0; trial < 200; ++trial) {
        const double w = g.log_uniform(1e8, 1e12);
        const double ratio = g.log_uniform(100.0, 1e6);  // kB T / hbar w
        const double t = ratio * kCodata.hbar * w / kCodata.kB;
        const double n = thermal_occupation(w, t);
        CHECK(std::abs(n - (ratio - 0.5)) / n < 1e-4);
    }
}

TEST_CASE("drive amplitude") {
    ModeSpec m{2 * kPi * 10e9, 2 * kPi * 1e6, 2 * kPi * 10e9, 0.010};
    // hand-evaluated sqrt(2 kappa P / hbar w) at 40 digits
    CHECK(rel_err(drive_amplitude(m), 137713627272520.9432) < 1e-14);

    m.pump_power = 0.0;
    CHECK(drive_amplitude(m) == 0.0);

    m.pump_power = -1e-3;
    CHECK_THROWS_AS(drive_amplitude(m), DomainError);
    m.pump_power = 1e-3;
    m.kappa = 0.0;
    CHECK_THROWS_AS(drive_amplitude(m), DomainError);
}

TEST_CASE("property: quadrupling the pump doubles the amplitude") {
    testing::Gen g(13);
    for (int trial = 0; trial < 200; ++trial) {
        ModeSpec m{g.log_uniform(1e9, 1e16), g.log_uniform(1e3, 1e9), g.log_uniform(1e9, 1e16),
                   g.log_uniform(1e-9, 10.0)};
        ModeSpec m4 = m;
        m4.pump_power *= 4.0;
        CHECK(rel_err(drive_amplitude(m4), 2.0 * drive_amplitude(m)) < 1e-12);
    }
}

TEST_CASE("eV conversions") {
    CHECK(ev_to_omega(1.0) == 1.602176634e-19 / 1.054571817e-34);
    CHECK(rel_err(ev_to_omega(1.1), 1671194193690461.576) < 1e-15);
    CHECK(omega_to_ev(ev_to_omega(1.1)) == doctest::Approx(1.1).epsilon(1e-14));
    CHECK_THROWS_AS(ev_to_omega(0.0), DomainError);
    CHECK_THROWS_AS(omega_to_ev(-5.0), DomainError);

    testing::Gen g(14);
    for (int trial = 0; trial < 500; ++trial) {
        const double ev = g.log_uniform(1e-9, 1e3);
        CHECK(rel_err(omega_to_ev(ev_to_omega(ev)), ev) <= 1e-14);
    }
}

}  // TEST_SUITE
