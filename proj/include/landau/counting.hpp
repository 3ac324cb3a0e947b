#ifndef LANDAU_COUNTING_HPP
#define LANDAU_COUNTING_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "landau/log_scalar.hpp"
#include "landau/radial_symbol.hpp"
#include "landau/toeplitz.hpp"

namespace landau {

/// Samples of an eigenvalue counting function, with predictions attached.
struct CountingCurve {
    struct Sample {
        double lambda;
        long long count;
        double predicted;
    };
    std::vector<Sample> samples;
    std::string source;

    void write_csv(std::ostream& os) const;  // lambda,count,predicted,ratio
};

/// Strict count #{k : nu_k > lambda} on a sorted sequence.
long long count_above(const EigenvalueSequence& seq, const LogScalar& lambda);
long long count_above(const EigenvalueSequence& seq, double lambda);

/// True when lambda is at or below the computed truncation floor, i.e. the
/// returned count is only a lower bound.
bool count_is_floored(const EigenvalueSequence& seq, const LogScalar& lambda);

/// Strict count on a lazily evaluated non-increasing sequence, by exponential
/// bracketing plus binary search.  nu(k) must be non-increasing in k.
long long count_above_monotone(const std::function<LogScalar(long long)>& nu,
                               const LogScalar& lambda, long long k_hint = 64);

/// Area of the superlevel set { psi > lambda } of a positive, eventually
/// non-increasing radial profile.  Rejects non-decaying profiles.
double phi_volume(const RadialSymbol& psi, double lambda);

/// Semiclassical constant for power-law tails: (b/4pi) * integral of
/// tau(theta)^{2/rho} over the circle.
double cq_constant(const std::function<double(double)>& tau_theta, double rho,
                   const MagneticContext& ctx);
double cq_constant(double tau, double rho, const MagneticContext& ctx);

enum class DecayKind { CompactSupport, Exponential, PowerLaw };

struct CountingParams {
    double beta = 1.0;  // exponential kind
    double mu = 1.0;    // exponential kind
};

/// Leading-order counting prediction as lambda -> 0 for the given decay class.
double predicted_counts(DecayKind kind, const CountingParams& p, double lambda);

/// Power-law prediction through the phase-space volume of the effective symbol.
double predicted_counts_power(const RadialSymbol& tq, const MagneticContext& ctx, double lambda);

}  // namespace landau

#endif
