#pragma once

// Stationary covariance of the quadrature fluctuations and the two-mode
// Gaussian entanglement test (smallest symplectic eigenvalue of the
// partially transposed covariance matrix).

#include "cavent/errors.hpp"
#include "cavent/lindyn.hpp"

namespace cavent {

/// Covariance of (X_a, P_a, X_b, P_b); vacuum = I/2.
struct CovarianceMatrix {
    Matrix4 v;
};

struct EntanglementVerdict {
    double eta_minus = 0.0;    // smallest PT symplectic eigenvalue
    double two_eta = 0.0;
    bool entangled = false;    // two_eta < 1 - kVerdictResolution
    double sigma_tilde = 0.0;  // det A + det B - 2 det C
    double det_v = 0.0;
};

struct PhysicalityReport {
    bool physical = false;
    bool symmetric = false;
    double asymmetry = 0.0;
    double nu_minus = 0.0;  // symplectic eigenvalues of V itself (sqrt(eps)-accurate when degenerate)
    double nu_plus = 0.0;
};

class UnstableSystem : public Error {
public:
    using Error::Error;
};
class IllConditioned : public Error {
public:
    using Error::Error;
};
class StepSizeError : public Error {
public:
    using Error::Error;
};
class NonPhysical : public Error {
public:
    using Error::Error;
};

/// Values of 2 eta within this distance below 1 are indistinguishable from
/// the separable boundary at double precision through the full pipeline.
inline constexpr double kVerdictResolution = 1e-9;

/// Solves A V + V A^T + D = 0 through the 16x16 Kronecker system.
/// Throws UnstableSystem for a non-Hurwitz A, IllConditioned when the
/// residual bound 1e-9 ||D||_max cannot be met.
CovarianceMatrix solve_lyapunov(const QuadratureDrift& a, const DiffusionMatrix& d);

/// Residual max-abs entry of A V + V A^T + D.
double lyapunov_residual(const Matrix4& a, const Matrix4& v, const Matrix4& d);

/// Classical RK4 on dV/dt = A V + V A^T + D with symmetrization each step.
/// Requires dt < 0.1 / ||A||_inf.
CovarianceMatrix integrate_covariance(const QuadratureDrift& a, const DiffusionMatrix& d,
                                      const CovarianceMatrix& v0, double t_end, double dt);

EntanglementVerdict symplectic_eigenvalue(const CovarianceMatrix& v);

PhysicalityReport physicality_check(const CovarianceMatrix& v);

}  // namespace cavent
