#pragma once

namespace swiptsim {

// Regularized lower incomplete gamma P(n+1, a) = gamma(n+1, a) / n!.
// Equals the probability that a Poisson(a) variable exceeds n, which is how
// the spectral code consumes it.  n >= 0 (integer order), a >= 0.
// Throws std::domain_error on negative arguments.
double regularized_gamma_p(int n, double a);

// log of the regularized upper tail Q(n+1, a) = 1 - P(n+1, a), computed
// directly so that values like 1 - P = 4e-18 survive.  Needed for products of
// (1 - lambda_n) where lambda_n rounds to 1 in double precision.
double log_regularized_gamma_q(int n, double a);

// ln(n!) exact-table below 21, lgamma above.  n >= 0.
double log_factorial(int n);

}  // namespace swiptsim
