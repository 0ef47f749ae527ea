#include "hs/distributions.hpp"

#include <cmath>
#include <limits>

#include "hs/error.hpp"

namespace hs::dist {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) (Numerical Recipes' betacf), valid for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEpsilon) return h;
    }
    throw Error(ErrorKind::InvalidArgument, "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_beta(double a, double b, double x, double y) {
    if (!(a > 0.0) || !(b > 0.0))
        throw Error(ErrorKind::InvalidArgument, "incomplete beta needs a > 0 and b > 0");
    if (std::isnan(x) || std::isnan(y))
        throw Error(ErrorKind::InvalidArgument, "incomplete beta argument is NaN");
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log(y);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

double f_survival(double f, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw Error(ErrorKind::DegenerateDf, "F distribution needs positive degrees of freedom");
    if (std::isnan(f)) throw Error(ErrorKind::InvalidArgument, "F statistic is NaN");
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    // P(F > f) = I_{d2/(d2 + d1 f)}(d2/2, d1/2)
    const double denom = d2 + d1 * f;
    return regularized_beta(d2 / 2.0, d1 / 2.0, d2 / denom, d1 * f / denom);
}

double t_survival(double t, double nu) {
    if (!(nu > 0.0)) throw Error(ErrorKind::DegenerateDf, "t distribution needs nu > 0");
    if (std::isnan(t)) throw Error(ErrorKind::InvalidArgument, "t statistic is NaN");
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double t2 = t * t;
    const double denom = nu + t2;
    const double tail = 0.5 * regularized_beta(nu / 2.0, 0.5, nu / denom, t2 / denom);
    return t >= 0.0 ? tail : 1.0 - tail;
}

}  // namespace hs::dist
