#include "optomech/spectra.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "optomech/error.hpp"

namespace optomech {

Matrix4c transfer_matrix(const DriftMatrix& drift, double omega) {
    Matrix4c shifted = drift.entries.cast<Complex>();
    shifted.diagonal().array() += Complex(0.0, omega);
    const Eigen::PartialPivLU<Matrix4c> lu(shifted);
    if (!(lu.rcond() > 1e-12)) {
        throw Error(ErrorCode::SingularAtFrequency, "iω + A is ill-conditioned at ω = " + std::to_string(omega));
    }
    return lu.inverse();
}

Matrix4c spectral_covariance(const DriftMatrix& drift, const NoiseMatrix& noise, double omega) {
    const Matrix4c M = transfer_matrix(drift, omega);
    return M * noise.diagonal.cast<Complex>().asDiagonal() * M.adjoint();
}

namespace {

struct Resonance {
    double center;
    double width;
};

std::vector<Resonance> resonances(const DriftMatrix& drift) {
    const Matrix4& A = drift.entries;
    const double kappa = -0.5 * (A(0, 0) + A(1, 1));
    const double gamma = -0.5 * (A(2, 2) + A(3, 3));
    const double delta = 0.5 * (A(0, 1) - A(1, 0));
    const double omega_m = 0.5 * (A(2, 3) - A(3, 2));

    std::vector<Resonance> out;
    // iω + A is singular at ω = iλ, i.e. Re ω = -Im λ with half width |Re λ|.
    for (const Complex& lambda : eigenvalues(drift)) {
        out.push_back({-lambda.imag(), std::abs(lambda.real())});
        out.push_back({lambda.imag(), std::abs(lambda.real())});
    }
    for (double sign : {-1.0, 1.0}) {
        out.push_back({sign * omega_m, std::abs(gamma)});
        out.push_back({sign * delta, std::abs(kappa)});
    }
    return out;
}

double half_span(const DriftMatrix& drift, double span_factor) {
    const Matrix4& A = drift.entries;
    const double scale = std::max({std::abs(0.5 * (A(0, 0) + A(1, 1))), std::abs(0.5 * (A(2, 2) + A(3, 3))),
                                   std::abs(0.5 * (A(0, 1) - A(1, 0))), std::abs(0.5 * (A(2, 3) - A(3, 2)))});
    return span_factor * scale;
}

std::vector<double> breakpoints(const DriftMatrix& drift, double L) {
    std::vector<double> points{-L, 0.0, L};
    for (const Resonance& r : resonances(drift)) {
        if (std::abs(r.center) >= L) continue;
        const double width = std::max(r.width, 1e-9 * L);
        points.push_back(r.center);
        for (double s = 0.5; s * width < 2.0 * L; s *= 2.0) {
            points.push_back(r.center - s * width);
            points.push_back(r.center + s * width);
        }
    }
    std::vector<double> clipped;
    for (double x : points)
        if (x >= -L && x <= L) clipped.push_back(x);
    std::sort(clipped.begin(), clipped.end());
    std::vector<double> unique;
    for (double x : clipped) {
        if (unique.empty() || x - unique.back() > 1e-12 * L) unique.push_back(x);
    }
    unique.front() = -L;
    unique.back() = L;
    return unique;
}

double max_abs(const Matrix4c& M) { return M.cwiseAbs().maxCoeff(); }

struct Panel {
    double a, b;
};

class AdaptiveBuilder {
public:
    AdaptiveBuilder(const DriftMatrix& drift, const NoiseMatrix& noise, double L)
        : drift_(drift), noise_(noise), L_(L) {}

    Matrix4c eval(double w) const { return spectral_covariance(drift_, noise_, w); }

    void subdivide(double a, double b, const Matrix4c& fa, const Matrix4c& fm, const Matrix4c& fb, double tol,
                   int depth, std::vector<Panel>& leaves) const {
        const double h = b - a;
        const double m = 0.5 * (a + b);
        const Matrix4c fl = eval(a + 0.25 * h);
        const Matrix4c fr = eval(a + 0.75 * h);
        const Matrix4c whole = (h / 6.0) * (fa + 4.0 * fm + fb);
        const Matrix4c halves = (h / 12.0) * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
        if (depth >= 48 || h < 1e-12 * L_ || max_abs(halves - whole) <= 15.0 * tol) {
            leaves.push_back({a, b});
            return;
        }
        subdivide(a, m, fa, fl, fm, tol, depth + 1, leaves);
        subdivide(m, b, fm, fr, fb, tol, depth + 1, leaves);
    }

private:
    const DriftMatrix& drift_;
    const NoiseMatrix& noise_;
    double L_;
};

}  // namespace

SpectralGrid sample_spectral_covariance(const DriftMatrix& drift, const NoiseMatrix& noise,
                                        const SpectrumOptions& options) {
    if (!is_stable(drift)) {
        throw Error(ErrorCode::UnstableDrift, "spectra require a stable drift matrix");
    }
    if (options.refine < 1 || !(options.span_factor > 0.0) || !(options.rel_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "invalid spectrum options");
    }
    const double L = half_span(drift, options.span_factor);
    const std::vector<double> cuts = breakpoints(drift, L);
    const AdaptiveBuilder builder(drift, noise, L);

    std::vector<Matrix4c> at_cuts;
    at_cuts.reserve(cuts.size());
    for (double x : cuts) at_cuts.push_back(builder.eval(x));

    // Coarse Simpson pass sets the absolute tolerance scale.
    std::vector<Matrix4c> at_mids;
    Matrix4c coarse = Matrix4c::Zero();
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        at_mids.push_back(builder.eval(0.5 * (cuts[k] + cuts[k + 1])));
        coarse += ((cuts[k + 1] - cuts[k]) / 6.0) * (at_cuts[k] + 4.0 * at_mids.back() + at_cuts[k + 1]);
    }
    const double tol = options.rel_tol * max_abs(coarse);

    std::vector<Panel> leaves;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        builder.subdivide(cuts[k], cuts[k + 1], at_cuts[k], at_mids[k], at_cuts[k + 1], tol, 0, leaves);
    }

    SpectralGrid grid;
    grid.half_span = L;
    static constexpr double kBoole[5] = {7.0, 32.0, 12.0, 32.0, 7.0};
    for (const Panel& leaf : leaves) {
        const double h = (leaf.b - leaf.a) / options.refine;
        for (int s = 0; s < options.refine; ++s) {
            const double a = leaf.a + s * h;
            const double b = (s + 1 == options.refine) ? leaf.b : leaf.a + (s + 1) * h;
            const double step = b - a;
            for (int j = 0; j < 5; ++j) {
                const double x = j == 4 ? b : a + 0.25 * j * step;
                const double w = step * kBoole[j] / 90.0;
                if (j == 0 && !grid.omegas.empty()) {
                    grid.weights.back() += w;
                    continue;
                }
                grid.omegas.push_back(x);
                grid.weights.push_back(w);
            }
        }
    }
    grid.covariances.reserve(grid.omegas.size());
    for (double x : grid.omegas) grid.covariances.push_back(builder.eval(x));
    return grid;
}

Matrix4 integrate_covariance(const SpectralGrid& grid) {
    Matrix4 total = Matrix4::Zero();
    for (std::size_t k = 0; k < grid.omegas.size(); ++k) total += grid.weights[k] * grid.covariances[k].real();
    return total / (2.0 * std::numbers::pi);
}

namespace {

// For real A, Ṽ(-ω) = conj Ṽ(ω), so the ±ω symmetrized quadratic form of a
// real vector is the real part of the form at +ω.
double projected(const Matrix4c& V, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex forward = c * c * V(2, 2) + s * s * V(3, 3) + c * s * (V(2, 3) + V(3, 2));
    return 0.5 * (forward + std::conj(forward)).real();
}

}  // namespace

SpectrumScan quadrature_spectrum(const SpectralGrid& grid, double theta) {
    SpectrumScan scan;
    scan.theta = theta;
    scan.omegas = grid.omegas;
    scan.weights = grid.weights;
    scan.s_theta.reserve(grid.omegas.size());
    for (const Matrix4c& V : grid.covariances) scan.s_theta.push_back(projected(V, theta));
    integrate_variance(scan);
    return scan;
}

SpectrumScan quadrature_spectrum(const DriftMatrix& drift, const NoiseMatrix& noise, double theta,
                                 const SpectrumOptions& options) {
    return quadrature_spectrum(sample_spectral_covariance(drift, noise, options), theta);
}

SpectrumScan quadrature_spectrum(const DriftMatrix& drift, const NoiseMatrix& noise, double theta,
                                 std::span<const double> omegas) {
    if (!is_stable(drift)) throw Error(ErrorCode::UnstableDrift, "spectra require a stable drift matrix");
    if (omegas.size() < 2 || !std::is_sorted(omegas.begin(), omegas.end())) {
        throw Error(ErrorCode::InvalidArgument, "frequency grid must be ascending with at least two points");
    }
    const double span = omegas.back() - omegas.front();
    if (std::abs(omegas.front() + omegas.back()) > 1e-9 * span) {
        throw Error(ErrorCode::InvalidArgument, "frequency grid must be symmetric about 0");
    }
    SpectrumScan scan;
    scan.theta = theta;
    scan.omegas.assign(omegas.begin(), omegas.end());
    scan.weights.assign(omegas.size(), 0.0);
    for (std::size_t k = 0; k + 1 < omegas.size(); ++k) {
        const double h = omegas[k + 1] - omegas[k];
        scan.weights[k] += 0.5 * h;
        scan.weights[k + 1] += 0.5 * h;
    }
    for (double w : omegas) scan.s_theta.push_back(projected(spectral_covariance(drift, noise, w), theta));
    integrate_variance(scan);
    return scan;
}

double integrate_variance(SpectrumScan& scan) {
    if (scan.omegas.empty()) {
        scan.integrated_variance = 0.0;
        return 0.0;
    }
    const double edge = 0.99 * std::max(std::abs(scan.omegas.front()), std::abs(scan.omegas.back()));
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < scan.omegas.size(); ++k) {
        const double piece = scan.weights[k] * scan.s_theta[k];
        total += piece;
        if (std::abs(scan.omegas[k]) > edge) tail += piece;
    }
    scan.integrated_variance = total / (2.0 * std::numbers::pi);
    scan.tail_fraction = total != 0.0 ? std::abs(tail / total) : 0.0;
    scan.tail_warning = scan.tail_fraction > 1e-4;
    return scan.integrated_variance;
}

}  // namespace optomech
