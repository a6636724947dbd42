#pragma once

// Mean-field steady state of the cross-Kerr coupled optical (a) and
// microwave (b) cavities:
//   0 = -(i D_c + k_c) a + i q a |b|^2 + E_c
//   0 = -(i D_w + k_w) b + i q b |a|^2 + E_w

#include <complex>
#include <cstddef>
#include <utility>

#include "cavent/errors.hpp"
#include "cavent/physics.hpp"

namespace cavent {

using cplx = std::complex<double>;

struct SystemParams {
    ModeSpec optical;
    ModeSpec microwave;
    double delta_c = 0.0;  // optical detuning, rad/s
    double delta_w = 0.0;  // microwave detuning, rad/s
    double q_oc = 0.0;     // cross-Kerr rate, rad/s
    double temperature = 0.0;
    /// Complex pump amplitudes; default phase 0 so E = drive_amplitude(mode).
    double optical_drive_phase = 0.0;

    void validate() const;
    cplx optical_drive() const;
    cplx microwave_drive() const;
};

struct SteadyState {
    cplx alpha;
    cplx beta;
    cplx residual_a;
    cplx residual_b;
    std::size_t iterations = 0;
};

struct SolverOptions {
    double tol = 1e-12;
    std::size_t max_iter = 10000;
    double damping = 0.5;  // weight of the previous iterate
};

class NonConvergence : public Error {
public:
    NonConvergence(double last_residual, std::size_t iterations, SteadyState last);
    double last_residual;
    std::size_t iterations;
    SteadyState last;
};

/// Damped fixed-point iteration of alpha = E_c / (k_c + i(D_c - q|b|^2)),
/// beta = E_w / (k_w + i(D_w - q|a|^2)), started from the decoupled solution.
/// Both updates use the previous iterate. Throws NonConvergence if the
/// residual certificate is not met within max_iter.
SteadyState solve_steady_state(const SystemParams& params, const SolverOptions& opts = {});

/// Left-hand sides of the steady-state equations at (alpha, beta).
std::pair<cplx, cplx> residual(cplx alpha, cplx beta, const SystemParams& params);

/// True when both residuals are below tol * max(1, |E|).
bool is_certified(const SteadyState& s, const SystemParams& params, double tol);

/// Linearization coefficients around a steady state.
struct EffectiveParams {
    double delta_c_eff = 0.0;  // D_c - q|b|^2
    double delta_w_eff = 0.0;  // D_w - q|a|^2
    cplx g_bs;                 // q a conj(b), beam-splitter coupling
    cplx g_tm;                 // q a b, two-mode squeezing coupling
};

EffectiveParams effective_params(const SteadyState& s, const SystemParams& params);

/// Record of the |alpha|, |beta| >> 1 assumption behind linearization.
inline constexpr double kLinearizationThreshold = 10.0;
bool linearization_valid(const SteadyState& s);

}  // namespace cavent
