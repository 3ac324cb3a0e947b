#include "landau/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "landau/quadrature.hpp"

namespace landau {

double laguerre(const LaguerreParams& p, double t) {
    return laguerre(p.degree, p.superscript, t);
}

double laguerre(int degree, int superscript, double t) {
    if (degree < 0 || superscript < 0)
        throw std::domain_error("laguerre: degree and superscript must be >= 0");
    if (degree == 0) return 1.0;
    const double m = superscript;
    double prev = 1.0;
    double cur = 1.0 + m - t;
    for (int n = 1; n < degree; ++n) {
        double next = ((2.0 * n + m + 1.0 - t) * cur - (n + m) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    // Lanczos, g = 7, 9 terms.
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(a);
}

namespace {

LogIntegrand gamma_kernel(double k) {
    LogIntegrand f;
    f.log_weight = [k](double t) { return k * std::log(t) - t; };
    return f;
}

}  // namespace

LogScalar log_lower_incomplete(double k, double rho) {
    if (!(k > -1.0)) throw std::domain_error("log_lower_incomplete: requires k > -1");
    if (!(rho > 0.0)) throw std::domain_error("log_lower_incomplete: requires rho > 0");
    return log_integrate(gamma_kernel(k), 0.0, rho);
}

LogScalar log_upper_incomplete(double k, double rho) {
    if (!(k > -1.0)) throw std::domain_error("log_upper_incomplete: requires k > -1");
    if (!(rho > 0.0)) throw std::domain_error("log_upper_incomplete: requires rho > 0");
    return log_integrate(gamma_kernel(k), rho, std::numeric_limits<double>::infinity());
}

LogScalar log_j_integral(double beta, double mu, double k) {
    if (!(beta > 0.0)) throw std::domain_error("log_j_integral: requires beta > 0");
    if (!(mu > 0.0)) throw std::domain_error("log_j_integral: requires mu > 0");
    if (!(k > -1.0)) throw std::domain_error("log_j_integral: requires k > -1");
    LogIntegrand f;
    f.log_weight = [beta, mu, k](double t) {
        double lt = std::log(t);
        double p = beta * lt;
        double decay = (p > 700.0) ? std::numeric_limits<double>::infinity()
                                   : mu * std::exp(p);
        return k * lt - t - decay;
    };
    return log_integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

}  // namespace landau
