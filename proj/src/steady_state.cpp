#include "cavent/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cavent {

namespace {
constexpr cplx kI{0.0, 1.0};

std::string nonconvergence_message(double r, std::size_t n) {
    std::ostringstream os;
    os << "steady state did not converge after " << n << " iterations (residual " << r << ")";
    return os.str();
}
}  // namespace

NonConvergence::NonConvergence(double r, std::size_t n, SteadyState s)
    : Error(nonconvergence_message(r, n)), last_residual(r), iterations(n), last(s) {}

void SystemParams::validate() const {
    optical.validate();
    microwave.validate();
    if (!(q_oc >= 0.0) || !std::isfinite(q_oc)) throw DomainError("q_oc must be >= 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw DomainError("temperature must be >= 0");
    if (!std::isfinite(delta_c) || !std::isfinite(delta_w))
        throw DomainError("detunings must be finite");
}

cplx SystemParams::optical_drive() const {
    return std::polar(drive_amplitude(optical), optical_drive_phase);
}

cplx SystemParams::microwave_drive() const { return drive_amplitude(microwave); }

std::pair<cplx, cplx> residual(cplx alpha, cplx beta, const SystemParams& p) {
    const double na = std::norm(alpha);
    const double nb = std::norm(beta);
    const cplx ra = -(kI * p.delta_c + p.optical.kappa) * alpha + kI * p.q_oc * alpha * nb +
                    p.optical_drive();
    const cplx rb = -(kI * p.delta_w + p.microwave.kappa) * beta + kI * p.q_oc * beta * na +
                    p.microwave_drive();
    return {ra, rb};
}

bool is_certified(const SteadyState& s, const SystemParams& p, double tol) {
    const auto [ra, rb] = residual(s.alpha, s.beta, p);
    return std::abs(ra) <= tol * std::max(1.0, std::abs(p.optical_drive())) &&
           std::abs(rb) <= tol * std::max(1.0, std::abs(p.microwave_drive()));
}

SteadyState solve_steady_state(const SystemParams& p, const SolverOptions& opts) {
    p.validate();
    if (!(opts.tol > 0.0)) throw DomainError("solver tolerance must be positive");
    if (opts.max_iter < 1) throw DomainError("solver max_iter must be >= 1");
    if (!(opts.damping >= 0.0 && opts.damping < 1.0))
        throw DomainError("solver damping must lie in [0, 1)");

    const cplx ec = p.optical_drive();
    const cplx ew = p.microwave_drive();
    const double ka = p.optical.kappa;
    const double kb = p.microwave.kappa;
    const double scale_a = std::max(1.0, std::abs(ec));
    const double scale_b = std::max(1.0, std::abs(ew));

    SteadyState s;
    s.alpha = ec / (ka + kI * p.delta_c);
    s.beta = ew / (kb + kI * p.delta_w);

    const double w = opts.damping;
    double worst = 0.0;
    for (std::size_t k = 1; k <= opts.max_iter; ++k) {
        const cplx a_map = ec / (ka + kI * (p.delta_c - p.q_oc * std::norm(s.beta)));
        const cplx b_map = ew / (kb + kI * (p.delta_w - p.q_oc * std::norm(s.alpha)));
        s.alpha = w * s.alpha + (1.0 - w) * a_map;
        s.beta = w * s.beta + (1.0 - w) * b_map;
        std::tie(s.residual_a, s.residual_b) = residual(s.alpha, s.beta, p);
        s.iterations = k;
        const double ea = std::abs(s.residual_a) / scale_a;
        const double eb = std::abs(s.residual_b) / scale_b;
        worst = std::max(ea, eb);
        if (!std::isfinite(worst)) break;
        if (ea <= opts.tol && eb <= opts.tol) return s;
    }
    throw NonConvergence(worst, s.iterations, s);
}

EffectiveParams effective_params(const SteadyState& s, const SystemParams& p) {
    EffectiveParams e;
    e.delta_c_eff = p.delta_c - p.q_oc * std::norm(s.beta);
    e.delta_w_eff = p.delta_w - p.q_oc * std::norm(s.alpha);
    e.g_bs = p.q_oc * s.alpha * std::conj(s.beta);
    e.g_tm = p.q_oc * s.alpha * s.beta;
    return e;
}

bool linearization_valid(const SteadyState& s) {
    return std::abs(s.alpha) > kLinearizationThreshold &&
           std::abs(s.beta) > kLinearizationThreshold;
}

}  // namespace cavent
