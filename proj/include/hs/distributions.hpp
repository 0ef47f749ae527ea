#pragma once

namespace hs::dist {

// Regularized incomplete beta I_x(a, b), evaluated with the continued
// fraction expansion (modified Lentz). `y` must equal 1 - x; passing it
// separately avoids cancellation when x is close to 1.
double regularized_beta(double a, double b, double x, double y);
inline double regularized_beta(double a, double b, double x) {
    return regularized_beta(a, b, x, 1.0 - x);
}

// P(F > f) for F ~ F(d1, d2).
double f_survival(double f, double d1, double d2);

// P(T > t) for T ~ Student t with nu degrees of freedom.
double t_survival(double t, double nu);

}  // namespace hs::dist
