#include "cavent/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace cavent::oracle {

namespace {

Matrix4 gaussian_matrix(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = n(rng);
    return m;
}

}  // namespace

DriftPair random_stable_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    const Matrix4 b = gaussian_matrix(rng);
    const Matrix4 s = b * b.transpose() + 0.1 * Matrix4::Identity();
    const Matrix4 g = gaussian_matrix(rng);
    const Matrix4 k = g - g.transpose();
    const Matrix4 c = gaussian_matrix(rng);
    const double sa = scale(rng);
    return DriftPair{sa * (-s + k), c * c.transpose() + 1e-3 * Matrix4::Identity()};
}

Matrix4 random_drift_with_margin(std::mt19937_64& rng, bool unstable, double margin) {
    std::uniform_real_distribution<double> re(margin, 20.0 * margin);
    std::uniform_real_distribution<double> im(0.0, 5.0);
    std::uniform_int_distribution<int> which(0, 1);
    Matrix4 blocks = Matrix4::Zero();
    const int bad = which(rng);
    for (int k = 0; k < 2; ++k) {
        const double sign = (unstable && k == bad) ? 1.0 : -1.0;
        const double a = sign * re(rng), w = im(rng);
        blocks.block<2, 2>(2 * k, 2 * k) << a, w, -w, a;
    }
    // well-conditioned similarity
    const Matrix4 p = Matrix4::Identity() + 0.3 * gaussian_matrix(rng) / 4.0;
    return p * blocks * p.inverse();
}

bool ode_decays(const Matrix4& a, double horizon) {
    const double norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
    const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon * norm_inf / 0.05));
    const double h = horizon / static_cast<double>(steps);
    Matrix4 phi = Matrix4::Identity();
    for (std::size_t i = 0; i < steps; ++i) {
        const Matrix4 k1 = a * phi;
        const Matrix4 k2 = a * (phi + 0.5 * h * k1);
        const Matrix4 k3 = a * (phi + 0.5 * h * k2);
        const Matrix4 k4 = a * (phi + h * k3);
        phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!phi.allFinite() || phi.cwiseAbs().maxCoeff() > 1e12) return false;
    }
    return phi.cwiseAbs().maxCoeff() < 1.0;
}

std::pair<cplx, cplx> integrate_mean_field(const SystemParams& p, double t_end, double dt) {
    const cplx i(0.0, 1.0);
    const cplx ec = p.optical_drive(), ew = p.microwave_drive();
    auto rhs = [&](cplx a, cplx b) {
        const cplx da = -(i * p.delta_c + p.optical.kappa) * a + i * p.q_oc * a * std::norm(b) + ec;
        const cplx db = -(i * p.delta_w + p.microwave.kappa) * b + i * p.q_oc * b * std::norm(a) + ew;
        return std::pair{da, db};
    };
    const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt));
    const double h = t_end / static_cast<double>(steps);
    cplx a = 0.0, b = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        const auto [a1, b1] = rhs(a, b);
        const auto [a2, b2] = rhs(a + 0.5 * h * a1, b + 0.5 * h * b1);
        const auto [a3, b3] = rhs(a + 0.5 * h * a2, b + 0.5 * h * b2);
        const auto [a4, b4] = rhs(a + h * a3, b + h * b3);
        a += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        b += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }
    return {a, b};
}

long double bose_reference(long double omega, long double temperature) {
    if (temperature == 0.0L) return 0.0L;
    const long double hbar = 1.054571817e-34L, kb = 1.380649e-23L;
    return 1.0L / std::expm1(hbar * omega / (kb * temperature));
}

double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = 0.5 * (f(a) + f(b));
    for (std::size_t k = 1; k < n; ++k) sum += f(a + h * static_cast<double>(k));
    return sum * h;
}

double pt_symplectic_min(const Matrix4& v) {
    Matrix4 flip = Matrix4::Identity();
    flip(3, 3) = -1.0;  // P_b -> -P_b
    const Matrix4 vt = flip * v * flip;
    Matrix4 omega = Matrix4::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    const Eigen::EigenSolver<Matrix4> es(omega * vt);
    double lo = std::abs(es.eigenvalues()(0));
    for (int k = 1; k < 4; ++k) lo = std::min(lo, std::abs(es.eigenvalues()(k)));
    return lo;
}

Matrix4 tmsv_covariance(double r) {
    const double c = 0.5 * std::cosh(2.0 * r), s = 0.5 * std::sinh(2.0 * r);
    Matrix4 v = Matrix4::Zero();
    v.diagonal().setConstant(c);
    v(0, 2) = v(2, 0) = s;
    v(1, 3) = v(3, 1) = -s;
    return v;
}

}  // namespace cavent::oracle
