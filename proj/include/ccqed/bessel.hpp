#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "ccqed/error.hpp"

namespace ccqed {

namespace detail {

struct BesselK01 {
    double k0;
    double k1;
};

// Series about x = 0, used for x <= 2:
//   K0 = -(ln(x/2) + gamma) I0 + sum_k t^k/(k!)^2 H_k
//   K1 = 1/x + ln(x/2) I1 - (x/4) sum_k t^k/(k!(k+1)!) (psi(k+1) + psi(k+2))
// with t = x^2/4 and H_k the harmonic numbers.
inline BesselK01 bessel_k01_series(double x) {
    constexpr double euler = std::numbers::egamma;
    const double t = 0.25 * x * x;
    const double lg = std::log(0.5 * x);

    double term0 = 1.0;  // t^k/(k!)^2
    double term1 = 1.0;  // t^k/(k!(k+1)!)
    double harmonic = 0.0;
    double i0 = 1.0, sum0 = 0.0;
    double i1 = 1.0, sum1 = -2.0 * euler + 1.0;  // psi(1) + psi(2)
    for (int k = 1; k < 60; ++k) {
        term0 *= t / (static_cast<double>(k) * k);
        term1 *= t / (static_cast<double>(k) * (k + 1));
        const double h_next = harmonic + 1.0 / k;
        i0 += term0;
        sum0 += term0 * h_next;
        i1 += term1;
        // psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
        sum1 += term1 * (-2.0 * euler + 2.0 * h_next + 1.0 / (k + 1));
        harmonic = h_next;
        if (term0 < 1e-18 * i0 && term1 < 1e-18 * i1) break;
    }
    i1 *= 0.5 * x;  // I1 = (x/2) sum t^k/(k!(k+1)!)
    return {-(lg + euler) * i0 + sum0, 1.0 / x + lg * i1 - 0.25 * x * sum1};
}

// Steed's continued fraction (Temme's normalization) for x > 2, order 0 and 1.
inline BesselK01 bessel_k01_cf(double x) {
    constexpr double eps = 1e-16;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

inline BesselK01 bessel_k01(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw ValidationError("modified Bessel K requires x > 0, got " + std::to_string(x));
    return x <= 2.0 ? bessel_k01_series(x) : bessel_k01_cf(x);
}

}  // namespace detail

/// Modified Bessel functions of the second kind, orders 0 to 2. K2 comes from
/// the upward recurrence K2 = K0 + (2/x) K1.
inline double bessel_k(int order, double x) {
    const auto k = detail::bessel_k01(x);
    switch (order) {
        case 0: return k.k0;
        case 1: return k.k1;
        case 2: return k.k0 + 2.0 / x * k.k1;
        default: throw ValidationError("bessel_k supports orders 0, 1, 2");
    }
}

struct BesselK012 {
    double k0, k1, k2;
};

inline BesselK012 bessel_k012(double x) {
    const auto k = detail::bessel_k01(x);
    return {k.k0, k.k1, k.k0 + 2.0 / x * k.k1};
}

}  // namespace ccqed
