#ifndef LANDAU_ASYMPTOTICS_HPP
#define LANDAU_ASYMPTOTICS_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "landau/log_scalar.hpp"
#include "landau/power_series.hpp"

namespace landau {

enum class RemainderClass { LogK, K, One };

std::string remainder_label(RemainderClass r);

/// Structured expansion alpha k ln k + sum c_e k^e + remainder band.
struct AsymptoticExpansion {
    double kloglog = 0.0;
    struct Term {
        double exponent;
        double coeff;
    };
    std::vector<Term> terms;  // exponents strictly decreasing
    RemainderClass remainder = RemainderClass::LogK;

    double evaluate(double k) const;

    nlohmann::json to_json() const;
    static AsymptoticExpansion from_json(const nlohmann::json& j);
};

enum class MinimizerKind { F, G };

/// Positive stationary point of the rate function: solves s = 1 - eps beta mu s^beta
/// (F) or beta mu s^beta = 1 - eps s (G) by the contracting fixed point,
/// polished by Newton.  Throws when the iteration does not contract.
double solve_minimizer(MinimizerKind kind, double beta, double mu, double eps);

/// Rate-function value at the minimizer, as a function of eps.
double minimized_value(MinimizerKind kind, double beta, double mu, double eps);

/// Taylor coefficients f_0..f_J of the slow-decay rate function (beta in (0,1)).
PowerSeries f_series(double beta, double mu, int J);

/// Taylor coefficients g_0..g_J of the fast-decay rate function (beta > 1).
PowerSeries g_series(double beta, double mu, int J);

double mu_from_decay(double gamma, double beta, double b);

/// Predicted expansion of ln nu_k for exponential-decay profiles; dispatches
/// on beta < 1, == 1, > 1.
AsymptoticExpansion theorem2_expansion(double beta, double mu);

struct PredictionBand {
    double main = 0.0;
    RemainderClass band = RemainderClass::LogK;
};

/// Main terms of ln L(k) for the normalized moment ratio; delta and the
/// truncated-moment correction only move the O(ln k) band.
PredictionBand lnL_prediction(double beta, double mu, double rho, double delta, double k);

/// Leading term of the disk eigenvalue law at level m, log domain.
LogScalar disk_prediction(int m, double rho, double k);

/// Compact support law: -k ln k with O(k) band.
AsymptoticExpansion theorem1_prediction();

/// Disk refinement: -k ln k + (1 + ln rho) k with O(ln k) band.
AsymptoticExpansion theorem1_disk_prediction(double rho);

}  // namespace landau

#endif
