#include "cavent/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace cavent {

namespace {

using Matrix16 = Eigen::Matrix<double, 16, 16>;
using Vector16 = Eigen::Matrix<double, 16, 1>;

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kRadicandTolerance = 1e-12;
constexpr double kPhysicalSlack = 1e-9;

double det2(const Eigen::Matrix2d& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

double asymmetry(const Matrix4& v) { return max_abs(v - v.transpose()); }

// Smaller root of x^2 - s x + p = 0 written without cancellation:
// (s - sqrt(s^2 - 4p))/2 = 2p / (s + sqrt(s^2 - 4p)).
double smaller_root_sq(double s, double p, double& radicand) {
    radicand = s * s - 4.0 * p;
    const double r = std::sqrt(std::max(radicand, 0.0));
    if (s + r == 0.0) return 0.0;
    return 2.0 * p / (s + r);
}

Matrix4 rhs(const Matrix4& a, const Matrix4& v, const Matrix4& d) {
    return a * v + v * a.transpose() + d;
}

}  // namespace

double lyapunov_residual(const Matrix4& a, const Matrix4& v, const Matrix4& d) {
    return max_abs(rhs(a, v, d));
}

CovarianceMatrix solve_lyapunov(const QuadratureDrift& a, const DiffusionMatrix& d) {
    const StabilityReport st = stability(a);
    if (!st.stable) {
        std::ostringstream os;
        os << "no stationary state: max Re(lambda) = " << st.max_real_part;
        throw UnstableSystem(os.str());
    }

    // Column-major vec: vec(A V + V A^T) = (I (x) A + A (x) I) vec(V)
    Matrix16 k = Matrix16::Zero();
    for (int col = 0; col < 4; ++col) k.block<4, 4>(4 * col, 4 * col) += a.m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) k.block<4, 4>(4 * i, 4 * j) += a.m(i, j) * Matrix4::Identity();

    const Vector16 b = -Eigen::Map<const Vector16>(d.d.data());
    const Eigen::FullPivLU<Matrix16> lu(k);
    Vector16 x = lu.solve(b);
    // one step of iterative refinement
    x += lu.solve(b - k * x);

    CovarianceMatrix out{Eigen::Map<const Matrix4>(x.data())};
    const double scale = std::max(1.0, max_abs(out.v));
    const double asym = asymmetry(out.v);
    if (asym > kSymmetryTolerance * scale) {
        std::ostringstream os;
        os << "Lyapunov solution asymmetric by " << asym;
        throw IllConditioned(os.str());
    }
    out.v = (0.5 * (out.v + out.v.transpose())).eval();

    // Symmetrizing moves V by up to the asymmetry, which ||A|| can amplify
    // past the bound for strongly detuned drifts; refine with symmetric
    // corrections.
    const double bound = 1e-9 * max_abs(d.d);
    double res = lyapunov_residual(a.m, out.v, d.d);
    for (int sweep = 0; sweep < 3 && !(res < bound); ++sweep) {
        const Matrix4 r = rhs(a.m, out.v, d.d);
        const Vector16 dx = lu.solve(-Eigen::Map<const Vector16>(r.data()));
        const Matrix4 dv = Eigen::Map<const Matrix4>(dx.data());
        out.v += 0.5 * (dv + dv.transpose());
        res = lyapunov_residual(a.m, out.v, d.d);
    }
    if (!(res < bound)) {
        std::ostringstream os;
        os << "Lyapunov residual " << res << " exceeds " << bound
           << (st.marginal ? " (marginally stable drift)" : "");
        throw IllConditioned(os.str());
    }
    return out;
}

CovarianceMatrix integrate_covariance(const QuadratureDrift& a, const DiffusionMatrix& d,
                                      const CovarianceMatrix& v0, double t_end, double dt) {
    if (!(t_end > 0.0)) throw StepSizeError("integrate_covariance: t_end must be positive");
    const double norm = a.m.cwiseAbs().rowwise().sum().maxCoeff();
    if (!(dt > 0.0) || (norm > 0.0 && !(dt < 0.1 / norm))) {
        std::ostringstream os;
        os << "integrate_covariance: dt = " << dt << " violates dt < 0.1/||A|| = "
           << (norm > 0.0 ? 0.1 / norm : INFINITY);
        throw StepSizeError(os.str());
    }
    const auto steps = static_cast<long>(std::ceil(t_end / dt));
    const double h = t_end / static_cast<double>(steps);
    Matrix4 v = v0.v;
    for (long n = 0; n < steps; ++n) {
        const Matrix4 k1 = rhs(a.m, v, d.d);
        const Matrix4 k2 = rhs(a.m, v + 0.5 * h * k1, d.d);
        const Matrix4 k3 = rhs(a.m, v + 0.5 * h * k2, d.d);
        const Matrix4 k4 = rhs(a.m, v + h * k3, d.d);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        v = (0.5 * (v + v.transpose())).eval();
    }
    return CovarianceMatrix{v};
}

EntanglementVerdict symplectic_eigenvalue(const CovarianceMatrix& cov) {
    const Matrix4& v = cov.v;
    const Eigen::Matrix2d a = v.block<2, 2>(0, 0);
    const Eigen::Matrix2d b = v.block<2, 2>(2, 2);
    const Eigen::Matrix2d c = v.block<2, 2>(0, 2);

    EntanglementVerdict out;
    out.sigma_tilde = det2(a) + det2(b) - 2.0 * det2(c);
    out.det_v = v.determinant();
    if (!(out.det_v > 0.0) || !std::isfinite(out.sigma_tilde))
        throw NonPhysical("covariance matrix is not positive definite");

    double radicand = 0.0;
    const double eta_sq = smaller_root_sq(out.sigma_tilde, out.det_v, radicand);
    if (radicand < -kRadicandTolerance * std::max(1.0, out.sigma_tilde * out.sigma_tilde)) {
        std::ostringstream os;
        os << "partial-transpose radicand " << radicand << " is negative";
        throw NonPhysical(os.str());
    }
    out.eta_minus = std::sqrt(eta_sq);
    out.two_eta = 2.0 * out.eta_minus;
    out.entangled = out.two_eta < 1.0 - kVerdictResolution;
    return out;
}

PhysicalityReport physicality_check(const CovarianceMatrix& cov) {
    const Matrix4& v = cov.v;
    PhysicalityReport r;
    r.asymmetry = asymmetry(v);
    r.symmetric = r.asymmetry <= kSymmetryTolerance * std::max(1.0, max_abs(v));
    const double det_v = v.determinant();
    const double delta = det2(v.block<2, 2>(0, 0)) + det2(v.block<2, 2>(2, 2)) +
                         2.0 * det2(v.block<2, 2>(0, 2));
    if (!(det_v > 0.0) || !std::isfinite(delta)) return r;
    double radicand = 0.0;
    const double nu_sq = smaller_root_sq(delta, det_v, radicand);
    r.nu_minus = std::sqrt(nu_sq);
    r.nu_plus = std::sqrt(0.5 * (delta + std::sqrt(std::max(radicand, 0.0))));
    // Robertson-Schroedinger form V + i Omega/2 >= 0. Its smallest eigenvalue
    // is accurate to eps ||V||, whereas nu_minus from the invariants is only
    // good to sqrt(eps) near pure states.
    Eigen::Matrix4cd h = v.cast<std::complex<double>>();
    for (int k = 0; k < 2; ++k) {
        h(2 * k, 2 * k + 1) += std::complex<double>(0.0, 0.5);
        h(2 * k + 1, 2 * k) -= std::complex<double>(0.0, 0.5);
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
    r.physical = r.symmetric && es.eigenvalues().minCoeff() >= -kPhysicalSlack * std::max(1.0, max_abs(v));
    return r;
}

}  // namespace cavent
