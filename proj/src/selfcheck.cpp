#include "cavent/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "cavent/covariance.hpp"
#include "cavent/ledger.hpp"
#include "cavent/oracles.hpp"
#include "cavent/sweep.hpp"

namespace cavent::check {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome timed(std::string name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    o.name = std::move(name);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.passed = false;
        o.detail = std::string("exception: ") + e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

}  // namespace

Outcome gaussian_exactness() {
    return timed("gaussian criterion exactness", [](Outcome& o) {
        double worst_sq = 0.0;
        auto two_eta = [](const Matrix4& v) { return symplectic_eigenvalue(CovarianceMatrix{v}).two_eta; };
        double worst = std::abs(two_eta(0.5 * Matrix4::Identity()) - 1.0);
        for (double n : {0.5, 1.0, 5.0})
            worst = std::max(worst, std::abs(two_eta((n + 0.5) * Matrix4::Identity()) - (2 * n + 1)));
        for (double r : {0.5, 1.0, 2.0})
            worst_sq = std::max(worst_sq, std::abs(two_eta(oracle::tmsv_covariance(r)) - std::exp(-2 * r)));
        o.passed = worst <= kGaussianTol && worst_sq <= kSqueezedTol;
        o.detail = fmt("max |err| vacuum/thermal %.3g, squeezed %.3g", worst, worst_sq);
    });
}

Outcome lyapunov_correctness() {
    return timed("lyapunov correctness", [](Outcome& o) {
        std::mt19937_64 rng(20240611);
        double worst_res = 0.0, worst_ode = 0.0;
        for (int k = 0; k < kLyapunovPairs; ++k) {
            const auto [a, d] = oracle::random_stable_pair(rng);
            const CovarianceMatrix v = solve_lyapunov(QuadratureDrift{a}, DiffusionMatrix{d});
            worst_res = std::max(worst_res, lyapunov_residual(a, v.v, d) / max_abs(d));

            const Eigen::EigenSolver<Matrix4> es(a, false);
            double slowest = std::abs(es.eigenvalues()(0).real());
            for (int i = 1; i < 4; ++i) slowest = std::min(slowest, std::abs(es.eigenvalues()(i).real()));
            const double norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
            const CovarianceMatrix vt =
                integrate_covariance(QuadratureDrift{a}, DiffusionMatrix{d}, CovarianceMatrix{Matrix4::Zero()},
                                     kDecayTimes / slowest, 0.05 / norm_inf);
            worst_ode = std::max(worst_ode, max_abs(vt.v - v.v) / std::max(1.0, max_abs(v.v)));
        }
        o.passed = worst_res < kLyapunovResidual && worst_ode < kLyapunovVsOde;
        o.detail = fmt("%g pairs; max residual/||D|| %.3g, max |V - V_ode| %.3g", double(kLyapunovPairs), worst_res,
                       worst_ode);
    });
}

Outcome decoupled_closed_form() {
    return timed("decoupled closed form", [](Outcome& o) {
        double worst_v = 0.0, worst_eta = 0.0;
        for (double t : {0.0, 80.0, 298.0}) {
            Ledger l = default_ledger();
            l.q_scale = 0.0;
            l.temperature = t;
            const PointResult r = run_point(l);
            if (!r.covariance || !r.two_eta) throw Error("decoupled point produced no covariance");
            const double nc = thermal_occupation(r.params.optical.omega, t);
            const double nw = thermal_occupation(r.params.microwave.omega, t);
            Matrix4 expect = Matrix4::Zero();
            expect.diagonal() << nc + 0.5, nc + 0.5, nw + 0.5, nw + 0.5;
            worst_v = std::max(worst_v, max_abs(r.covariance->v - expect));
            worst_eta = std::max(worst_eta, std::abs(*r.two_eta - (2 * std::min(nc, nw) + 1)));
        }
        o.passed = worst_v < kDecoupledTol && worst_eta < kDecoupledTol;
        o.detail = fmt("T in {0, 80, 298} K; max |V - V_closed| %.3g, max |2eta - closed| %.3g", worst_v,
                       worst_eta);
    });
}

Outcome steady_state_certificate() {
    return timed("steady-state certificate", [](Outcome& o) {
        // certificate over a coupled sweep
        Ledger base = default_ledger();
        base.q_scale = 1e-8;
        SweepSpec spec{base, {Axis{"T", "K", {80.0, 298.0}}, Axis{"delta_w_over_w", "1", linspace(-1, 1, 41)}}};
        std::size_t converged = 0;
        double worst_cert = 0.0;
        for (const SweepRow& row : run_sweep(spec)) {
            if (!row.result.converged) continue;
            ++converged;
            const SystemParams& p = row.result.params;
            const auto [ra, rb] = residual(row.result.alpha, row.result.beta, p);
            worst_cert = std::max({worst_cert, std::abs(ra) / std::max(1.0, std::abs(p.optical_drive())),
                                   std::abs(rb) / std::max(1.0, std::abs(p.microwave_drive()))});
        }
        // time-domain oracle at three coupled points
        const double k = base.optical_kappa;
        const struct {
            double q, dc, dw;
        } points[] = {{1e-8, 0.0, 0.0}, {2e-8, 2 * k, -k}, {3e-8, -k, 0.5 * k}};
        double worst_ode = 0.0;
        for (const auto& pt : points) {
            SystemParams p = base.system_params(pt.q);
            p.delta_c = pt.dc;
            p.delta_w = pt.dw;
            const SteadyState s = solve_steady_state(p, base.solver);
            const double rate = p.optical.kappa + p.microwave.kappa + std::abs(pt.dc) + std::abs(pt.dw) +
                                pt.q * (std::norm(s.alpha) + std::norm(s.beta));
            const double kmin = std::min(p.optical.kappa, p.microwave.kappa);
            const auto [a, b] = oracle::integrate_mean_field(p, 60.0 / kmin, 0.01 / rate);
            worst_ode = std::max({worst_ode, std::abs(a - s.alpha) / std::abs(s.alpha),
                                  std::abs(b - s.beta) / std::abs(s.beta)});
        }
        o.passed = converged > 0 && worst_cert < kSteadyResidual && worst_ode < kSteadyVsOde;
        o.detail = fmt("%g converged solves, max residual/max(1,|E|) %.3g; RK4 oracle max rel err %.3g",
                       static_cast<double>(converged), worst_cert, worst_ode);
    });
}

Outcome stability_cross_check() {
    return timed("stability cross-check", [](Outcome& o) {
        std::mt19937_64 rng(77);
        constexpr double margin = 0.25;
        int disagreements = 0, total = 0;
        for (bool unstable : {false, true}) {
            for (int k = 0; k < kStabilityPerClass; ++k) {
                const Matrix4 a = oracle::random_drift_with_margin(rng, unstable, margin);
                const bool verdict = stability(QuadratureDrift{a}).stable;
                const bool decays = oracle::ode_decays(a, kDecayTimes / margin);
                if (verdict != decays || verdict == unstable) ++disagreements;
                ++total;
            }
        }
        o.passed = disagreements == 0;
        o.detail = fmt("%g matrices, %g disagreements", total, disagreements);
    });
}

std::vector<Outcome> run_all() {
    return {gaussian_exactness(), lyapunov_correctness(), decoupled_closed_form(), steady_state_certificate(),
            stability_cross_check()};
}

}  // namespace cavent::check
