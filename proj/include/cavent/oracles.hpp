#pragma once

// Reference computations that share no code path with the production
// solvers. Used by the test suites and by `cavent check`.

#include <functional>
#include <random>
#include <utility>

#include "cavent/covariance.hpp"
#include "cavent/steady_state.hpp"

namespace cavent::oracle {

struct DriftPair {
    Matrix4 a;
    Matrix4 d;
};

/// A = -S + K with S symmetric positive definite and K skew, so every
/// eigenvalue has real part <= -lambda_min(S); D = C C^T + eps I.
DriftPair random_stable_pair(std::mt19937_64& rng);

/// Real matrix P diag(2x2 rotation-scaling blocks) P^-1 with prescribed
/// real parts. `unstable` puts one block in the right half plane. Every
/// |Re lambda| is >= margin.
Matrix4 random_drift_with_margin(std::mt19937_64& rng, bool unstable, double margin);

/// Integrates Phi' = A Phi from the identity to `horizon` with RK4 and
/// reports whether ||Phi||_max decayed below 1.
bool ode_decays(const Matrix4& a, double horizon);

/// Time-domain mean-field equations from zero fields, RK4 to t_end.
std::pair<cplx, cplx> integrate_mean_field(const SystemParams& params, double t_end, double dt);

/// Bose occupation evaluated in long double.
long double bose_reference(long double omega, long double temperature);

double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t n);

/// Smallest symplectic eigenvalue of the partial transpose, from the
/// spectrum of i Omega V~ (no invariants formula).
double pt_symplectic_min(const Matrix4& v);

/// Two-mode squeezed vacuum covariance, vacuum = I/2.
Matrix4 tmsv_covariance(double r);

}  // namespace cavent::oracle
