#pragma once

// Shared helpers for the unit tests: relative comparison and a small
// seeded generator for property tests.

#include <cmath>
#include <cstdint>
#include <random>

#include "cavent/ledger.hpp"
#include "cavent/steady_state.hpp"

namespace testing {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

    /// Ledger-shaped SystemParams with randomized rates, detunings, pumps and coupling.
    cavent::SystemParams system(double q_lo = 1e-12, double q_hi = 1e-7) {
        cavent::SystemParams p = cavent::default_ledger().system_params(0.0);
        p.optical.kappa = log_uniform(1e5, 1e8);
        p.microwave.kappa = log_uniform(1e5, 1e8);
        p.optical.pump_power = log_uniform(1e-4, 1e-1);
        p.microwave.pump_power = log_uniform(1e-4, 1e-1);
        p.delta_c = uniform(-3.0, 3.0) * p.optical.kappa;
        p.delta_w = uniform(-3.0, 3.0) * p.microwave.kappa;
        p.q_oc = log_uniform(q_lo, q_hi);
        p.temperature = uniform(0.0, 320.0);
        return p;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testing
