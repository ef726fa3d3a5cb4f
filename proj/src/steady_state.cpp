#include "optomech/steady_state.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>

#include "optomech/error.hpp"
#include "optomech/linear_dynamics.hpp"
#include "optomech/polynomial.hpp"

namespace optomech {

Complex BranchPoint::alpha() const { return std::sqrt(a_sq); }

double BranchPoint::alpha_population_mismatch() const { return std::abs(a_sq) - n_cav; }

namespace {

Complex shared_denominator(double z, const EffectiveParams& p) {
    const double g2 = p.G0 * p.G0;
    return {p.gamma_m * p.kappa - p.delta * p.Omega_M + g2 * z, p.gamma_m * p.delta + p.kappa * p.Omega_M};
}

}  // namespace

std::array<double, 4> population_cubic(const EffectiveParams& p) {
    const double g2 = p.G0 * p.G0;
    const double a = g2 * g2;
    const double b = 2.0 * g2 * (p.gamma_m * p.kappa - p.delta * p.Omega_M);
    const double c = (p.gamma_m * p.gamma_m + p.Omega_M * p.Omega_M) * (p.delta * p.delta + p.kappa * p.kappa);
    const double drive = std::norm(p.F) * g2;
    return {a, b - a, c - b - drive, -c};
}

std::vector<double> population_cubic_roots(const EffectiveParams& params) {
    if (params.G0 == 0.0 || std::norm(params.F) == 0.0) return {1.0};
    const auto coeffs = population_cubic(params);
    std::vector<double> roots;
    for (double z : real_polynomial_roots(coeffs)) {
        if (z >= 1.0 - 1e-12) roots.push_back(std::max(z, 1.0));
    }
    // The cubic is negative at z = 1 and positive at infinity, so a root >= 1
    // always exists; an empty set only arises from a lost near-tangent pair.
    if (roots.empty()) {
        throw Error(ErrorCode::EigenFailure, "population cubic returned no root z >= 1");
    }
    return roots;
}

MeanFieldState mean_fields(double z, const EffectiveParams& p) {
    const Complex den = shared_denominator(z, p);
    if (std::abs(den) < 1e-300) {
        throw Error(ErrorCode::SingularDenominator, "mean-field denominator vanishes at z = " + std::to_string(z));
    }
    MeanFieldState s;
    s.n = 0.5 * (z - 1.0);
    s.a_sq = -p.F * p.G0 * z / (2.0 * den);
    s.beta = -p.F * Complex(-p.delta, p.kappa) / (2.0 * den);
    return s;
}

MeanFieldState mean_field_rhs(const MeanFieldState& s, const EffectiveParams& p) {
    constexpr Complex i{0.0, 1.0};
    MeanFieldState d;
    d.n = -4.0 * p.G0 * (s.a_sq * std::conj(s.beta)).imag() - 2.0 * p.kappa * s.n;
    d.a_sq = -2.0 * i * p.delta * s.a_sq - 2.0 * i * p.G0 * (2.0 * s.n + 1.0) * s.beta - 2.0 * p.kappa * s.a_sq;
    d.beta = -i * (p.Omega_M * s.beta + p.G0 * s.a_sq + 0.5 * p.F) - p.gamma_m * s.beta;
    return d;
}

std::vector<BranchPoint> classify_and_solve(const EffectiveParams& params) {
    const std::vector<double> roots = population_cubic_roots(params);
    std::vector<BranchPoint> points;
    points.reserve(roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const MeanFieldState fields = mean_fields(roots[k], params);
        BranchPoint bp;
        bp.z = roots[k];
        bp.n_cav = fields.n;
        bp.a_sq = fields.a_sq;
        bp.beta = fields.beta;
        if (roots.size() == 3) {
            bp.branch = k == 0 ? Branch::Lower : (k == 1 ? Branch::Middle : Branch::Upper);
        } else if (roots.size() == 2) {
            bp.branch = k == 0 ? Branch::Lower : Branch::Upper;
        } else {
            bp.branch = Branch::Lower;
        }
        bp.stable = is_stable(build_drift(bp, params));
        points.push_back(bp);
    }
    return points;
}

namespace {

using State5 = Eigen::Matrix<double, 5, 1>;

State5 pack(const MeanFieldState& s) {
    State5 v;
    v << s.n, s.a_sq.real(), s.a_sq.imag(), s.beta.real(), s.beta.imag();
    return v;
}

MeanFieldState unpack(const State5& v) { return {v(0), {v(1), v(2)}, {v(3), v(4)}}; }

}  // namespace

MeanFieldState relax_mean_field(const EffectiveParams& params, const MeanFieldState& initial,
                                const RelaxOptions& options) {
    const double fastest = std::max({params.kappa, std::abs(params.Omega_M), std::abs(params.delta), params.gamma_m});
    const double dt = options.dt > 0.0 ? options.dt : 0.05 / fastest;
    if (!(dt < 0.1 / fastest)) {
        throw Error(ErrorCode::InvalidArgument, "time step too large for the fastest rate " + std::to_string(fastest));
    }
    if (options.check_every < 1 || !(options.t_max > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "relaxation needs t_max > 0 and check_every >= 1");
    }

    auto f = [&](const State5& v) { return pack(mean_field_rhs(unpack(v), params)); };

    State5 y = pack(initial);
    State5 checkpoint = y;
    const double window = dt * options.check_every;
    double t = 0.0;
    long step = 0;
    while (t < options.t_max) {
        const State5 k1 = f(y);
        const State5 k2 = f(y + 0.5 * dt * k1);
        const State5 k3 = f(y + 0.5 * dt * k2);
        const State5 k4 = f(y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
        if (!y.allFinite()) {
            throw Error(ErrorCode::NoConvergence, "mean-field trajectory diverged at t = " + std::to_string(t));
        }
        if (++step % options.check_every == 0) {
            const double rate = (y - checkpoint).norm() / window;
            if (rate < options.tolerance * std::max(1.0, y.norm())) return unpack(y);
            checkpoint = y;
        }
    }
    throw Error(ErrorCode::NoConvergence, "mean field did not settle before t_max = " + std::to_string(options.t_max));
}

}  // namespace optomech
