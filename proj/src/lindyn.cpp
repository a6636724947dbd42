#include "cavent/lindyn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cavent/physics.hpp"

namespace cavent {

namespace {
constexpr cplx kI{0.0, 1.0};

// Rows of the ladder-basis drift for one mode; partner is the other mode.
// index layout: 0 = da, 1 = da+, 2 = db, 3 = db+
void fill_mode(CMatrix4& m, int self, int other, double kappa, double delta_eff, cplx g_bs,
               cplx g_tm) {
    m(self, self) = -kappa - kI * delta_eff;
    m(self, other) = kI * g_bs;
    m(self, other + 1) = kI * g_tm;
    // conjugate row: swap daggered/undaggered columns
    m(self + 1, self + 1) = std::conj(m(self, self));
    m(self + 1, self) = std::conj(m(self, self + 1));
    m(self + 1, other + 1) = std::conj(m(self, other));
    m(self + 1, other) = std::conj(m(self, other + 1));
}

CMatrix4 quadrature_basis() {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix4 t = CMatrix4::Zero();
    for (int k = 0; k < 4; k += 2) {
        t(k, k) = s;
        t(k, k + 1) = s;
        t(k + 1, k) = -kI * s;
        t(k + 1, k + 1) = kI * s;
    }
    return t;
}
}  // namespace

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

ComplexDrift complex_drift(const EffectiveParams& eff, const SystemParams& p) {
    ComplexDrift cd{CMatrix4::Zero()};
    fill_mode(cd.m, 0, 2, p.optical.kappa, eff.delta_c_eff, eff.g_bs, eff.g_tm);
    fill_mode(cd.m, 2, 0, p.microwave.kappa, eff.delta_w_eff, std::conj(eff.g_bs), eff.g_tm);
    return cd;
}

QuadratureDrift to_quadrature(const ComplexDrift& cd) {
    static const CMatrix4 t = quadrature_basis();
    static const CMatrix4 t_inv = t.inverse();
    const CMatrix4 a = t * cd.m * t_inv;
    const double scale = cd.m.cwiseAbs().maxCoeff();
    const double imag = a.imag().cwiseAbs().maxCoeff();
    if (imag > 1e-10 * scale)
        throw BasisError("quadrature drift has imaginary residue " + std::to_string(imag) +
                         " (ladder drift lacks conjugation symmetry)");
    return QuadratureDrift{a.real()};
}

DiffusionMatrix diffusion(const SystemParams& p) {
    const double nc = thermal_occupation(p.optical.omega, p.temperature);
    const double nw = thermal_occupation(p.microwave.omega, p.temperature);
    const double dc = p.optical.kappa * (2.0 * nc + 1.0);
    const double dw = p.microwave.kappa * (2.0 * nw + 1.0);
    DiffusionMatrix out{Matrix4::Zero()};
    out.d.diagonal() << dc, dc, dw, dw;
    return out;
}

StabilityReport stability(const QuadratureDrift& qd) {
    if (!qd.m.allFinite()) throw EigenFailure("stability: drift matrix has non-finite entries");
    Eigen::EigenSolver<Matrix4> solver(qd.m, false);
    if (solver.info() != Eigen::Success) throw EigenFailure("stability: eigen solver failed");
    StabilityReport r;
    const Eigen::Vector4cd ev = solver.eigenvalues();
    r.max_real_part = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        r.eigenvalues[static_cast<std::size_t>(i)] = ev(i);
        r.max_real_part = std::max(r.max_real_part, ev(i).real());
    }
    r.stable = r.max_real_part < 0.0;
    r.marginal = r.stable && r.max_real_part >= -kMarginalTolerance * max_abs(qd.m);
    return r;
}

}  // namespace cavent
