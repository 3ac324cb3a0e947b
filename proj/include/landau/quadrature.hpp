#ifndef LANDAU_QUADRATURE_HPP
#define LANDAU_QUADRATURE_HPP

#include <functional>
#include <stdexcept>

#include "landau/log_scalar.hpp"

namespace landau {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrand split as prefactor(t) * exp(log_weight(t)).
///
/// log_weight carries the exponentially varying part (k ln t - t - mu t^beta
/// and friends) and must be concave in u = ln t on (t_lo, t_hi); prefactor is
/// a smooth, polynomially bounded, possibly signed factor evaluated directly.
struct LogIntegrand {
    std::function<double(double)> log_weight;
    std::function<double(double)> prefactor;  // null -> 1
};

/// integral_{t_lo}^{t_hi} prefactor(t) exp(log_weight(t)) dt in log domain.
///
/// Substitutes t = exp(u), locates the maximizer of log_weight(e^u) + u, and
/// lays adaptive Gauss-Legendre panels outward until panel contributions fall
/// below 1e-16 of the running log-sum.  t_lo may be 0, t_hi may be +inf.
/// Throws QuadratureError (with the achieved bound) on non-convergence.
LogScalar log_integrate(const LogIntegrand& f, double t_lo, double t_hi);

}  // namespace landau

#endif
