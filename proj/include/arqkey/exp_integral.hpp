#ifndef ARQKEY_EXP_INTEGRAL_HPP
#define ARQKEY_EXP_INTEGRAL_HPP

namespace arqkey {

// Exponential integral
//
//                  inf
//                   /  exp(-t)
//        E1(x) =   |   ------- dt ,   x > 0
//                  /      t
//                  x
//
// Power series for x <= 1, continued fraction for x > 1.
// Throws std::domain_error for x <= 0 or NaN.
double exp_integral_e1(double x);

// exp(x) * E1(x), stable for large x where E1 underflows; ~1/x - 1/x^2
// asymptotically. Same domain restrictions as exp_integral_e1.
double exp_integral_e1_scaled(double x);

} // namespace arqkey

#endif
