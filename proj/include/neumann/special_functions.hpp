#pragma once

// Bessel functions of real order and real argument, and the first zero of
// the radial derivative that fixes the Neumann spectrum of the unit ball.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "neumann/error.hpp"

namespace neumann {

// Order of a Bessel function: finite and non-negative.
class BesselOrder {
public:
    BesselOrder(double nu) : nu_(nu) { // NOLINT(google-explicit-constructor)
        if (!std::isfinite(nu) || nu < 0.0)
            throw DomainError("Bessel order must be finite and non-negative, got " + std::to_string(nu));
    }
    double value() const { return nu_; }
    operator double() const { return nu_; } // NOLINT(google-explicit-constructor)

private:
    double nu_;
};

// Interval [lo, hi] over which f changes sign.
struct RootBracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    static RootBracket make(const std::function<double(double)>& f, double lo, double hi) {
        return RootBracket{lo, hi, f(lo), f(hi)};
    }
    bool valid() const {
        return std::isfinite(lo) && std::isfinite(hi) && lo < hi && f_lo * f_hi < 0.0;
    }
};

// Largest argument accepted by bessel_i before exp(x) leaves double range.
inline constexpr double kBesselIOverflowArgument = 700.0;

namespace detail {

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
inline constexpr std::array<double, 29> kReciprocalGammaTaylor = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
};

// Temme's auxiliary gamma quantities for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu),
//   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2.
struct TemmeGamma {
    double gam1;
    double gam2;
    double gampl; // 1/Gamma(1+mu)
    double gammi; // 1/Gamma(1-mu)
};

inline TemmeGamma temme_gamma(double mu) {
    double even = 0.0;
    double odd = 0.0;
    double power = 1.0;
    for (std::size_t k = 0; k < kReciprocalGammaTaylor.size(); ++k) {
        if (k % 2 == 0) {
            even += kReciprocalGammaTaylor[k] * power;
        } else {
            odd += kReciprocalGammaTaylor[k] * power;
            power *= mu * mu;
        }
    }
    // even = sum c_{2j} mu^{2j}, odd = sum c_{2j+1} mu^{2j}
    const double gam1 = -odd;
    const double gam2 = even;
    return {gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1};
}

inline double scaled_power_over_gamma(double half_x, double nu) {
    if (nu <= 100.0) return std::pow(half_x, nu) / std::tgamma(nu + 1.0);
    return std::exp(nu * std::log(half_x) - std::lgamma(nu + 1.0));
}

inline void check_argument(double x, const char* fn) {
    if (!std::isfinite(x)) throw DomainError(std::string(fn) + ": argument must be finite");
}

// Power series; accurate to ~1e-14 absolute for x <= 8.
inline double bessel_j_series(double nu, double x) {
    const double q = 0.25 * x * x;
    double term = scaled_power_over_gamma(0.5 * x, nu);
    double sum = term;
    for (int m = 1; m < 500; ++m) {
        term *= -q / (m * (m + nu));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && m > q) break;
    }
    return sum;
}

// Miller's backward recurrence from a high order, normalized with
// (x/2)^mu = sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu + 2k}(x), 0 <= mu < 1.
inline double bessel_j_miller(double nu, double x) {
    const double base = std::floor(nu);
    const double mu = nu - base;
    const int order = static_cast<int>(base);
    int top = order + static_cast<int>(x) + 60;
    if (top % 2 != 0) ++top;

    std::vector<double> f(static_cast<std::size_t>(top) + 2, 0.0);
    f[static_cast<std::size_t>(top)] = 1e-30;
    for (int k = top; k >= 1; --k) {
        const auto ku = static_cast<std::size_t>(k);
        f[ku - 1] = 2.0 * (mu + k) / x * f[ku] - f[ku + 1];
        if (std::abs(f[ku - 1]) > 1e250) {
            for (std::size_t i = ku - 1; i < f.size(); ++i) f[i] *= 1e-250;
        }
    }

    const double gamma1 = std::tgamma(1.0 + mu);
    double norm = gamma1 * f[0];
    double g = gamma1; // Gamma(mu + j) / j!
    for (int j = 1; 2 * j <= top; ++j) {
        norm += (mu + 2.0 * j) * g * f[static_cast<std::size_t>(2 * j)];
        g *= (mu + j) / (j + 1.0);
    }
    return std::pow(0.5 * x, mu) / norm * f[static_cast<std::size_t>(order)];
}

// Temme series (x < 2) or Steed's continued fraction (x >= 2) for K_mu and
// K_{mu+1}, |mu| <= 1/2, followed by forward recurrence.
inline double bessel_k_temme(double nu, double x) {
    constexpr double eps = 1e-16;
    constexpr int max_iter = 10000;
    constexpr double pi = std::numbers::pi;

    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;

    double k_mu = 0.0;
    double k_mu1 = 0.0;
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = pi * mu;
        const double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = mu * d;
        const double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
        const TemmeGamma tg = temme_gamma(mu);
        double ff = fact * (tg.gam1 * std::cosh(e) + tg.gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / tg.gampl;
        double q = 0.5 / (e * tg.gammi);
        double c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= max_iter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
            c *= d / i;
            p /= i - mu;
            q /= i + mu;
            const double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * eps) break;
        }
        if (i > max_iter) throw NumericalError("bessel_k: Temme series did not converge");
        k_mu = sum;
        k_mu1 = sum1 * xi2;
    } else {
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double delh = d;
        double h = d;
        double q1 = 0.0;
        double q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1;
        double c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 2;
        for (; i <= max_iter; ++i) {
            a -= 2.0 * (i - 1);
            c = -a * c / i;
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
        if (i > max_iter) throw NumericalError("bessel_k: continued fraction did not converge");
        h *= a1;
        k_mu = std::sqrt(pi / (2.0 * x)) * std::exp(-x) / s;
        k_mu1 = k_mu * (mu + x + 0.5 - h) * xi;
    }
    for (int i = 1; i <= nl; ++i) {
        const double next = (mu + i) * xi2 * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    return k_mu;
}

} // namespace detail

// Bessel function of the first kind. Power series for x <= 8, Miller's
// backward recurrence beyond; absolute error below 1e-12 for x <= 50.
inline double bessel_j(BesselOrder order, double x) {
    detail::check_argument(x, "bessel_j");
    if (x < 0.0) throw DomainError("bessel_j: argument must be non-negative");
    const double nu = order;
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x <= 8.0) return detail::bessel_j_series(nu, x);
    return detail::bessel_j_miller(nu, x);
}

// Modified Bessel function of the first kind,
//   I_nu(x) = sum_m (x/2)^{2m+nu} / (m! Gamma(m+nu+1)).
// Every term is positive, so the series is used for all accepted x.
// Throws RangeError for x > kBesselIOverflowArgument.
inline double bessel_i(BesselOrder order, double x) {
    detail::check_argument(x, "bessel_i");
    if (x < 0.0) throw DomainError("bessel_i: argument must be non-negative");
    if (x > kBesselIOverflowArgument)
        throw RangeError("bessel_i: argument " + std::to_string(x) + " exceeds overflow threshold 700");
    const double nu = order;
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double q = 0.25 * x * x;
    double term = detail::scaled_power_over_gamma(0.5 * x, nu);
    double sum = term;
    for (int m = 1; m < 5000; ++m) {
        term *= q / (m * (m + nu));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Modified Bessel function of the second kind. Integer orders are handled
// as the exact limit through Temme's series, not the reflection formula
// (pi/2)(I_{-nu} - I_nu)/sin(nu pi).
inline double bessel_k(BesselOrder order, double x) {
    detail::check_argument(x, "bessel_k");
    if (x <= 0.0) throw DomainError("bessel_k: argument must be positive");
    return detail::bessel_k_temme(order, x);
}

// I_{l+1/2}(x) from sinh/cosh closed forms and recurrence.
inline double bessel_i_half_integer(int l, double x) {
    if (l < 0) throw DomainError("bessel_i_half_integer: l must be non-negative");
    if (x <= 0.0) throw DomainError("bessel_i_half_integer: argument must be positive");
    const double scale = std::sqrt(2.0 / (std::numbers::pi * x));
    double prev = scale * std::cosh(x); // I_{-1/2}
    double cur = scale * std::sinh(x);  // I_{1/2}
    for (int k = 0; k < l; ++k) {
        const double next = prev - (2.0 * (k + 0.5) / x) * cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

// K_{l+1/2}(x) from the exponential closed form and recurrence.
inline double bessel_k_half_integer(int l, double x) {
    if (l < 0) throw DomainError("bessel_k_half_integer: l must be non-negative");
    if (x <= 0.0) throw DomainError("bessel_k_half_integer: argument must be positive");
    const double k_half = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
    double prev = k_half; // K_{-1/2}
    double cur = k_half;  // K_{1/2}
    for (int k = 0; k < l; ++k) {
        const double next = prev + (2.0 * (k + 0.5) / x) * cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Bisection on a sign-changing bracket until its width is at most tol.
inline double find_root(const std::function<double(double)>& f, RootBracket bracket, double tol) {
    if (!bracket.valid()) throw PreconditionError("find_root: bracket must satisfy lo < hi and f(lo) f(hi) < 0");
    if (!(tol > 0.0)) throw PreconditionError("find_root: tolerance must be positive");
    double lo = bracket.lo;
    double hi = bracket.hi;
    double f_lo = bracket.f_lo;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// First positive zero p_{n/2} of (t^{1-n/2} J_{n/2}(t))'.
//
// With nu = n/2, d/dt[t^{-nu} J_nu] = -t^{-nu} J_{nu+1} gives
//   (t^{1-nu} J_nu)' = t^{-nu} (J_nu(t) - t J_{nu+1}(t)),
// so the zero is the first root of J_nu(t) - t J_{nu+1}(t). The first sign
// change on a 0.05 grid over (0, 20] is bisected.
inline double p_zero(int n) {
    if (n < 2) throw PreconditionError("p_zero: dimension must be at least 2, got " + std::to_string(n));
    const double nu = 0.5 * n;
    const auto f = [nu](double t) { return bessel_j(nu, t) - t * bessel_j(nu + 1.0, t); };
    constexpr double step = 0.05;
    double lo = step;
    double f_lo = f(lo);
    for (int k = 2; k <= 400; ++k) {
        const double hi = step * k;
        const double f_hi = f(hi);
        if (f_lo * f_hi < 0.0) return find_root(f, RootBracket{lo, hi, f_lo, f_hi}, 1e-13);
        if (f_hi == 0.0) return hi;
        lo = hi;
        f_lo = f_hi;
    }
    throw NumericalError("p_zero: no sign change in (0, 20] for n = " + std::to_string(n));
}

} // namespace neumann
