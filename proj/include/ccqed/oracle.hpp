#pragma once

// Brute-force reference paths. These deliberately avoid the closed forms used by the
// model modules so that the two can be compared.

#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include "ccqed/error.hpp"
#include "ccqed/linear_response.hpp"

namespace ccqed::oracle {

/// Dense complex system M x = rhs of fixed size N.
template <std::size_t N>
struct DenseSystem {
    std::array<std::array<cplx, N>, N> matrix{};
    std::array<cplx, N> rhs{};
};

/// Variable order (a1, a2, b, sigma1, sigma2).
using LinearSystem = DenseSystem<5>;

/// Stationarity conditions of the five linear equations of motion, written as M x = rhs.
inline LinearSystem build_linear_system(const DerivedRates& r, const ProbeSettings& p, double g1,
                                        double g2) {
    const cplx i(0.0, 1.0);
    LinearSystem sys;
    auto& m = sys.matrix;
    // Row k holds the coefficients of -d/dt of variable k.
    m[0][0] = r.kappa_1p + i * p.delta_c;
    m[0][2] = i * r.v1;
    m[0][3] = i * g1;
    m[1][1] = r.kappa_2p + i * p.delta_c;
    m[1][2] = i * r.v2;
    m[1][4] = i * g2;
    m[2][2] = r.kappa_b + i * p.delta_c;
    m[2][0] = i * r.v1;
    m[2][1] = i * r.v2;
    m[3][3] = r.gamma_perp + i * p.delta_a;
    m[3][0] = i * g1;
    m[4][4] = r.gamma_perp + i * p.delta_a;
    m[4][1] = i * g2;
    sys.rhs[0] = -i * p.drive_E1;
    return sys;
}

/// Gaussian elimination with partial pivoting.
template <std::size_t N>
std::array<cplx, N> solve_dense(DenseSystem<N> sys) {
    auto& a = sys.matrix;
    auto& b = sys.rhs;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < N; ++row)
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        if (std::abs(a[piv][col]) < 1e-300) throw NumericError("singular matrix in dense solve");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t row = col + 1; row < N; ++row) {
            const cplx f = a[row][col] / a[col][col];
            if (f == cplx(0.0)) continue;
            for (std::size_t k = col; k < N; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::array<cplx, N> x{};
    for (std::size_t k = N; k-- > 0;) {
        cplx acc = b[k];
        for (std::size_t j = k + 1; j < N; ++j) acc -= a[k][j] * x[j];
        x[k] = acc / a[k][k];
    }
    return x;
}

inline SteadyStateAmplitudes to_amplitudes(const std::array<cplx, 5>& x) {
    return {x[0], x[1], x[2], x[3], x[4]};
}

inline SteadyStateAmplitudes solve_linear_system(const LinearSystem& sys) {
    return to_amplitudes(solve_dense(sys));
}

/// max_i |(M x - rhs)_i|
template <std::size_t N>
double residual_inf(const DenseSystem<N>& sys, const std::array<cplx, N>& x) {
    double worst = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        cplx acc = -sys.rhs[r];
        for (std::size_t c = 0; c < N; ++c) acc += sys.matrix[r][c] * x[c];
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

template <std::size_t N>
double norm_inf(const std::array<cplx, N>& v) {
    double worst = 0.0;
    for (const auto& e : v) worst = std::max(worst, std::abs(e));
    return worst;
}

/// Largest componentwise deviation between two amplitude sets, relative to the
/// largest amplitude of the reference.
inline double relative_difference(const SteadyStateAmplitudes& a, const SteadyStateAmplitudes& ref) {
    const std::array<cplx, 5> x{a.a1, a.a2, a.b, a.s1, a.s2};
    const std::array<cplx, 5> y{ref.a1, ref.a2, ref.b, ref.s1, ref.s2};
    double diff = 0.0;
    for (std::size_t k = 0; k < 5; ++k) diff = std::max(diff, std::abs(x[k] - y[k]));
    const double scale = norm_inf(y);
    return scale > 0.0 ? diff / scale : diff;
}

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                           double fb, double m, double fm, double whole, double tol, int depth,
                           double& err) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (depth <= 0) throw NumericError("adaptive quadrature did not converge within depth 40");
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, err) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, err);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. The interval is pre-split into
/// `panels` pieces to avoid false convergence on narrow features.
inline QuadratureResult adaptive_quadrature(const std::function<double(double)>& f, double a,
                                            double b, double tol, int panels = 16) {
    if (!(b > a)) throw ValidationError("quadrature interval must have b > a");
    QuadratureResult out;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h, hi = (k + 1 == panels) ? b : a + (k + 1) * h;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fhi = f(hi), fmid = f(mid);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        out.value += detail::simpson_step(f, lo, flo, hi, fhi, mid, fmid, whole, tol / panels, 40,
                                          out.error_estimate);
    }
    return out;
}

/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, integrated until the integrand
/// drops below e^-50 of its peak.
inline double bessel_k_integral(int order, double x, double tol = 1e-14) {
    if (!(x > 0.0)) throw ValidationError("bessel_k_integral requires x > 0");
    // x (cosh t - 1) = 50 + nu t bounds the tail.
    double t_max = std::acosh(1.0 + (50.0 + order * 10.0) / x);
    while (x * (std::cosh(t_max) - 1.0) - order * t_max < 50.0) t_max *= 1.1;
    auto f = [x, order](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(order * t); };
    // `tol` is relative; a coarse composite Simpson pass sets the scale.
    constexpr int coarse = 512;
    const double h = t_max / coarse;
    double scale = f(0.0) + f(t_max);
    for (int k = 1; k < coarse; ++k) scale += (k % 2 ? 4.0 : 2.0) * f(k * h);
    scale *= h / 3.0;
    return std::exp(-x) * adaptive_quadrature(f, 0.0, t_max, tol * scale, 32).value;
}

}  // namespace ccqed::oracle
