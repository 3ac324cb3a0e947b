#include "landau/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace landau {

void CountingCurve::write_csv(std::ostream& os) const {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "# source=%s\n", source.c_str());
    os << buf << "lambda,count,predicted,ratio\n";
    for (const auto& s : samples) {
        double ratio = s.predicted != 0.0 ? static_cast<double>(s.count) / s.predicted : 0.0;
        std::snprintf(buf, sizeof(buf), "%.17g,%lld,%.17g,%.17g\n", s.lambda, s.count,
                      s.predicted, ratio);
        os << buf;
    }
}

long long count_above(const EigenvalueSequence& seq, const LogScalar& lambda) {
    if (!(lambda.sign() > 0)) throw std::invalid_argument("count_above: lambda must be > 0");
    // values are non-increasing: first position with value <= lambda
    auto it = std::lower_bound(seq.values.begin(), seq.values.end(), lambda,
                               [](const LogScalar& v, const LogScalar& x) { return x < v; });
    return static_cast<long long>(it - seq.values.begin());
}

long long count_above(const EigenvalueSequence& seq, double lambda) {
    return count_above(seq, LogScalar::from_value(lambda));
}

bool count_is_floored(const EigenvalueSequence& seq, const LogScalar& lambda) {
    if (seq.values.empty()) return true;
    return !(lambda > seq.values.back());
}

long long count_above_monotone(const std::function<LogScalar(long long)>& nu,
                               const LogScalar& lambda, long long k_hint) {
    if (!(lambda.sign() > 0))
        throw std::invalid_argument("count_above_monotone: lambda must be > 0");
    if (!(nu(0) > lambda)) return 0;
    // exponential bracket: nu(lo) > lambda >= nu(hi)
    long long lo = 0, hi = std::max<long long>(k_hint, 2);
    while (nu(hi) > lambda) {
        lo = hi;
        if (hi > (1LL << 56)) throw std::runtime_error("count_above_monotone: no crossing found");
        hi *= 2;
    }
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        if (nu(mid) > lambda) lo = mid;
        else hi = mid;
    }
    return hi;  // indices 0..hi-1 are strictly above
}

double phi_volume(const RadialSymbol& psi, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("phi_volume: lambda must be > 0");
    // find the outer crossing radius of the (eventually non-increasing) profile
    double r_hi = 1.0;
    int doublings = 0;
    while (psi(r_hi) > lambda) {
        r_hi *= 2.0;
        if (++doublings > 360)
            throw std::invalid_argument("phi_volume: profile does not decay below lambda");
    }
    if (r_hi == 1.0) {
        // already below at r = 1: superlevel set may still live inside
        bool any = false;
        for (int i = 0; i <= 1000; ++i)
            if (psi(i / 1000.0) > lambda) {
                any = true;
                r_hi = 1.0;
                break;
            }
        if (!any) return 0.0;
    }
    double r_lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (r_lo + r_hi);
        if (psi(mid) > lambda) r_lo = mid;
        else r_hi = mid;
    }
    double r_star = 0.5 * (r_lo + r_hi);
    return M_PI * r_star * r_star;
}

double cq_constant(const std::function<double(double)>& tau_theta, double rho,
                   const MagneticContext& ctx) {
    if (!(rho > 0.0)) throw std::invalid_argument("cq_constant: rho must be > 0");
    const int n = 512;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double theta = 2.0 * M_PI * i / n;
        double tau = tau_theta(theta);
        if (!(tau > 0.0)) throw std::invalid_argument("cq_constant: tau must be > 0");
        sum += std::pow(tau, 2.0 / rho);
    }
    return ctx.b / (4.0 * M_PI) * (2.0 * M_PI / n) * sum;
}

double cq_constant(double tau, double rho, const MagneticContext& ctx) {
    return cq_constant([tau](double) { return tau; }, rho, ctx);
}

double predicted_counts(DecayKind kind, const CountingParams& p, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("predicted_counts: lambda must lie in (0, 1)");
    double al = std::abs(std::log(lambda));
    switch (kind) {
        case DecayKind::CompactSupport:
            return al / std::log(al);
        case DecayKind::Exponential:
            if (p.beta < 1.0) return std::pow(p.mu, -1.0 / p.beta) * std::pow(al, 1.0 / p.beta);
            if (p.beta == 1.0) return al / std::log1p(p.mu);
            return p.beta / (p.beta - 1.0) * al / std::log(al);
        case DecayKind::PowerLaw:
            throw std::invalid_argument("predicted_counts: power-law prediction needs the symbol");
    }
    return 0.0;
}

double predicted_counts_power(const RadialSymbol& tq, const MagneticContext& ctx,
                              double lambda) {
    return ctx.b / (2.0 * M_PI) * phi_volume(tq, lambda);
}

}  // namespace landau
