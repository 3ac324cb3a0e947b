#include "landau/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "landau/special_functions.hpp"

namespace landau {

std::string remainder_label(RemainderClass r) {
    switch (r) {
        case RemainderClass::LogK: return "O(log k)";
        case RemainderClass::K: return "O(k)";
        case RemainderClass::One: return "O(1)";
    }
    return "O(1)";
}

double AsymptoticExpansion::evaluate(double k) const {
    double v = kloglog * k * std::log(k);
    for (const auto& t : terms) v += t.coeff * std::pow(k, t.exponent);
    return v;
}

nlohmann::json AsymptoticExpansion::to_json() const {
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& t : terms) jt.push_back({t.exponent, t.coeff});
    return {{"kloglog", kloglog}, {"terms", jt}, {"remainder", remainder_label(remainder)}};
}

AsymptoticExpansion AsymptoticExpansion::from_json(const nlohmann::json& j) {
    AsymptoticExpansion e;
    e.kloglog = j.at("kloglog").get<double>();
    for (const auto& t : j.at("terms"))
        e.terms.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    std::string r = j.at("remainder").get<std::string>();
    if (r == "O(log k)") e.remainder = RemainderClass::LogK;
    else if (r == "O(k)") e.remainder = RemainderClass::K;
    else if (r == "O(1)") e.remainder = RemainderClass::One;
    else throw std::invalid_argument("unknown remainder class: " + r);
    return e;
}

namespace {

// residual of the defining stationarity equation, and the fixed-point map
double stationarity(MinimizerKind kind, double beta, double mu, double eps, double s) {
    if (kind == MinimizerKind::F) return s - 1.0 + eps * beta * mu * std::pow(s, beta);
    return beta * mu * std::pow(s, beta) - 1.0 + eps * s;
}

}  // namespace

double solve_minimizer(MinimizerKind kind, double beta, double mu, double eps) {
    if (!(beta > 0.0) || !(mu > 0.0))
        throw std::invalid_argument("solve_minimizer: beta, mu must be > 0");

    double s = (kind == MinimizerKind::F) ? 1.0 : std::pow(beta * mu, -1.0 / beta);
    double prev_step = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < 400; ++it) {
        double next = (kind == MinimizerKind::F)
                          ? 1.0 - eps * beta * mu * std::pow(s, beta)
                          : std::pow((1.0 - eps * s) / (beta * mu), 1.0 / beta);
        if (!(next > 0.0) || !std::isfinite(next))
            throw std::domain_error("solve_minimizer: iteration left the positive axis");
        double step = std::abs(next - s);
        if (it > 4 && step > prev_step * 1.5 && step > 1e-12)
            throw std::domain_error("solve_minimizer: fixed point does not contract (eps too large)");
        s = next;
        if (step < 1e-15 * std::max(1.0, s)) {
            converged = true;
            break;
        }
        prev_step = std::max(step, 1e-300);
    }
    if (!converged) throw std::domain_error("solve_minimizer: no convergence");

    // Newton polish on the stationarity equation
    for (int it = 0; it < 8; ++it) {
        double h = stationarity(kind, beta, mu, eps, s);
        double dh = (kind == MinimizerKind::F)
                        ? 1.0 + eps * beta * beta * mu * std::pow(s, beta - 1.0)
                        : beta * beta * mu * std::pow(s, beta - 1.0) + eps;
        if (dh == 0.0) break;
        s -= h / dh;
    }
    // the scaled residual equals dF/ds (resp. dG/ds) at s
    if (std::abs(stationarity(kind, beta, mu, eps, s) / s) > 1e-10)
        throw std::runtime_error("solve_minimizer: stationarity check failed");
    return s;
}

double minimized_value(MinimizerKind kind, double beta, double mu, double eps) {
    double s = solve_minimizer(kind, beta, mu, eps);
    if (kind == MinimizerKind::F) return s - std::log(s) + eps * mu * std::pow(s, beta);
    return mu * std::pow(s, beta) - std::log(s) + eps * s;
}

namespace {

constexpr int kMaxSeriesOrder = 30;

PowerSeries solve_series_fixed_point(double beta, double mu, int J, MinimizerKind kind) {
    PowerSeries s = PowerSeries::constant(
        kind == MinimizerKind::F ? 1.0 : std::pow(beta * mu, -1.0 / beta), J);
    for (int it = 0; it < 4 * (J + 2); ++it) {
        PowerSeries next = (kind == MinimizerKind::F)
                               ? PowerSeries::constant(1.0, J) -
                                     (beta * mu) * s.pow(beta).shifted(1)
                               : ((1.0 / (beta * mu)) *
                                  (PowerSeries::constant(1.0, J) - s.shifted(1)))
                                     .pow(1.0 / beta);
        double delta = next.max_abs_diff(s);
        s = next;
        if (delta < 1e-14) return s;
    }
    throw std::runtime_error("series fixed point did not converge");
}

}  // namespace

PowerSeries f_series(double beta, double mu, int J) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("f_series: beta must lie in (0,1)");
    if (!(mu > 0.0)) throw std::invalid_argument("f_series: mu must be > 0");
    if (J < 0 || J > kMaxSeriesOrder) throw std::invalid_argument("f_series: 0 <= J <= 30");
    PowerSeries s = solve_series_fixed_point(beta, mu, J, MinimizerKind::F);
    return s - s.log() + mu * s.pow(beta).shifted(1);
}

PowerSeries g_series(double beta, double mu, int J) {
    if (!(beta > 1.0)) throw std::invalid_argument("g_series: beta must be > 1");
    if (!(mu > 0.0)) throw std::invalid_argument("g_series: mu must be > 0");
    if (J < 0 || J > kMaxSeriesOrder) throw std::invalid_argument("g_series: 0 <= J <= 30");
    PowerSeries s = solve_series_fixed_point(beta, mu, J, MinimizerKind::G);
    return mu * s.pow(beta) - s.log() + s.shifted(1);
}

double mu_from_decay(double gamma, double beta, double b) {
    if (!(gamma > 0.0) || !(beta > 0.0) || !(b > 0.0))
        throw std::invalid_argument("mu_from_decay: gamma, beta, b must be > 0");
    return gamma * std::pow(2.0 / b, beta);
}

namespace {

// largest integer j with j < bound (half-open range exactly as the law states)
int terms_below(double bound) {
    int j = static_cast<int>(std::floor(bound - 1e-12));
    return std::max(j, 0);
}

}  // namespace

AsymptoticExpansion theorem2_expansion(double beta, double mu) {
    if (!(beta > 0.0) || !(mu > 0.0))
        throw std::invalid_argument("theorem2_expansion: beta, mu must be > 0");
    AsymptoticExpansion e;
    e.remainder = RemainderClass::LogK;
    if (beta == 1.0) {
        e.terms.push_back({1.0, -std::log1p(mu)});
        return e;
    }
    if (beta < 1.0) {
        int jmax = terms_below(1.0 / (1.0 - beta));
        PowerSeries f = f_series(beta, mu, jmax);
        for (int j = 1; j <= jmax; ++j) e.terms.push_back({(beta - 1.0) * j + 1.0, -f[j]});
        return e;
    }
    e.kloglog = -(beta - 1.0) / beta;
    e.terms.push_back({1.0, (beta - 1.0 - std::log(mu * beta)) / beta});
    int jmax = terms_below(beta / (beta - 1.0));
    PowerSeries g = g_series(beta, mu, jmax);
    for (int j = 1; j <= jmax; ++j) e.terms.push_back({(1.0 / beta - 1.0) * j + 1.0, -g[j]});
    std::sort(e.terms.begin(), e.terms.end(),
              [](const auto& a, const auto& b) { return a.exponent > b.exponent; });
    return e;
}

PredictionBand lnL_prediction(double beta, double mu, double rho, double delta, double k) {
    if (!(rho > 0.0)) throw std::invalid_argument("lnL_prediction: rho must be > 0");
    (void)delta;  // enters the band only
    PredictionBand outp;
    outp.main = theorem2_expansion(beta, mu).evaluate(k);
    outp.band = RemainderClass::LogK;
    return outp;
}

LogScalar disk_prediction(int m, double rho, double k) {
    if (m < 0) throw std::invalid_argument("disk_prediction: m must be >= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("disk_prediction: rho must be > 0");
    double ln = -rho + (1.0 - m) * std::log(rho) + (2.0 * m - 1.0) * std::log(k) +
                k * std::log(rho) - log_gamma(m + 1.0) - log_gamma(k + 1.0);
    return LogScalar::from_log(1, ln);
}

AsymptoticExpansion theorem1_prediction() {
    AsymptoticExpansion e;
    e.kloglog = -1.0;
    e.remainder = RemainderClass::K;
    return e;
}

AsymptoticExpansion theorem1_disk_prediction(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("theorem1_disk_prediction: rho must be > 0");
    AsymptoticExpansion e;
    e.kloglog = -1.0;
    e.terms.push_back({1.0, 1.0 + std::log(rho)});
    e.remainder = RemainderClass::LogK;
    return e;
}

}  // namespace landau
