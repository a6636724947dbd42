#pragma once

// Numerical self-test battery: closed-form Gaussian states, Lyapunov solver
// against time integration, the decoupled pipeline, steady-state
// certificates and the stability verdict against ODE behaviour.
// Tolerances are fixed here; `cavent check` and the acceptance suite share them.

#include <string>
#include <vector>

namespace cavent::check {

struct Outcome {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr double kGaussianTol = 1e-12;
inline constexpr double kSqueezedTol = 1e-10;
inline constexpr int kLyapunovPairs = 50;
inline constexpr double kLyapunovResidual = 1e-9;  // times ||D||_max
inline constexpr double kLyapunovVsOde = 1e-6;     // times max(1, ||V||_max)
inline constexpr double kDecayTimes = 20.0;
inline constexpr double kDecoupledTol = 1e-9;
inline constexpr double kSteadyResidual = 1e-12;  // times max(1, |E|)
inline constexpr double kSteadyVsOde = 1e-6;      // relative
inline constexpr int kStabilityPerClass = 100;

Outcome gaussian_exactness();
Outcome lyapunov_correctness();
Outcome decoupled_closed_form();
Outcome steady_state_certificate();
Outcome stability_cross_check();

std::vector<Outcome> run_all();

}  // namespace cavent::check
