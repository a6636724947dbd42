#pragma once

// Linearized fluctuation dynamics: drift matrix in the ladder basis
// (da, da+, db, db+) and in the quadrature basis (X_a, P_a, X_b, P_b),
// thermal diffusion, and the eigenvalue stability test.

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "cavent/errors.hpp"
#include "cavent/steady_state.hpp"

namespace cavent {

using Matrix4 = Eigen::Matrix4d;
using CMatrix4 = Eigen::Matrix4cd;

struct ComplexDrift {
    CMatrix4 m;
};

struct QuadratureDrift {
    Matrix4 m;
};

struct DiffusionMatrix {
    Matrix4 d;
};

struct StabilityReport {
    bool stable = false;
    bool marginal = false;  // stable but within 1e-9 ||A|| of the imaginary axis
    double max_real_part = 0.0;
    std::array<cplx, 4> eigenvalues{};
};

class BasisError : public Error {
public:
    using Error::Error;
};

class EigenFailure : public Error {
public:
    using Error::Error;
};

/// Drift built term by term from the linearized Langevin equations:
///   d(da)/dt = -(k_c + i D_c')da + i g_bs db + i g_tm db+
///   d(db)/dt = -(k_w + i D_w')db + i conj(g_bs) da + i g_tm da+
/// with the daggered rows as complex conjugates.
ComplexDrift complex_drift(const EffectiveParams& eff, const SystemParams& params);

/// Similarity transform to X = (a + a+)/sqrt2, P = -i(a - a+)/sqrt2 per mode.
/// Throws BasisError if the result carries an imaginary part above 1e-10 ||A||.
QuadratureDrift to_quadrature(const ComplexDrift& cd);

/// diag(k_c(2N_c+1), k_c(2N_c+1), k_w(2N_w+1), k_w(2N_w+1)); baths independent,
/// occupations at each mode's resonance.
DiffusionMatrix diffusion(const SystemParams& params);

StabilityReport stability(const QuadratureDrift& qd);

/// Relative margin below which a stable drift is flagged marginal.
inline constexpr double kMarginalTolerance = 1e-9;

/// Max-abs entry.
double max_abs(const Matrix4& m);

}  // namespace cavent
