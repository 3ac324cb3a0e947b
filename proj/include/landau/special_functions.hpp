#ifndef LANDAU_SPECIAL_FUNCTIONS_HPP
#define LANDAU_SPECIAL_FUNCTIONS_HPP

#include <cstdint>

#include "landau/log_scalar.hpp"

namespace landau {

/// Generalized Laguerre parameters: degree q, superscript m.
/// Convention: q * L_{q-1} == 0 when q == 0.
struct LaguerreParams {
    int degree = 0;       // q >= 0
    int superscript = 0;  // m >= 0
};

/// L_q^{(m)}(t) by the stable three-term recurrence.  Total function.
double laguerre(const LaguerreParams& p, double t);
double laguerre(int degree, int superscript, double t);

/// ln Gamma(x) for x > 0 (Lanczos series; no reflection).
double log_gamma(double x);

/// E_rho(k) = integral_0^rho e^{-t} t^k dt, in log domain.  k > -1, rho > 0.
LogScalar log_lower_incomplete(double k, double rho);

/// integral_rho^infinity e^{-t} t^k dt, in log domain (companion tail).
LogScalar log_upper_incomplete(double k, double rho);

/// J_{beta,mu}(k) = integral_0^infinity e^{-mu t^beta - t} t^k dt, in log
/// domain.  Quadrature is centered at the maximizer of the log-integrand
/// (the Laplace point); relative accuracy ~1e-12 up to k ~ 1e4.
LogScalar log_j_integral(double beta, double mu, double k);

}  // namespace landau

#endif
