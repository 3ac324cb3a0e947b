#ifndef LANDAU_GALERKIN_HPP
#define LANDAU_GALERKIN_HPP

#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include "landau/radial_symbol.hpp"
#include "landau/toeplitz.hpp"

namespace landau {

/// Truncated Landau basis {phi_{s,k} : s <= max_level, k <= max_index};
/// matrix dimension (max_level+1)(max_index+1).
struct TruncationSpec {
    int level_q = 0;    // target cluster level
    int max_level = 2;  // >= level_q + 2
    int max_index = 20;

    int dimension() const { return (max_level + 1) * (max_index + 1); }
    int flat(int s, int k) const { return s * (max_index + 1) + k; }
};

/// Full truncated perturbed Hamiltonian: Landau levels on the diagonal plus
/// (sign) times the metric quadratic form in the ladder variables.
/// sign = -1 requires sup |m| < 1.
Eigen::MatrixXcd assemble_full(const MagneticContext& ctx, const HermitianSymbolMatrix& m,
                               const TruncationSpec& spec, int sign);

struct ClusterWindow {
    double lo;
    double hi;
};

/// Eigenvalues of the assembled matrix inside the window, as signed shifts
/// from Lambda_q, ordered by |shift| descending.
EigenvalueSequence cluster_near(const MagneticContext& ctx, const Eigen::MatrixXcd& h, int q,
                                ClusterWindow window);

struct SandwichReport {
    struct Entry {
        int k;
        double shift;        // sign * (lambda - Lambda_q)
        double lower_bound;  // c_lo * nu_{k+k0}
        double upper_bound;  // c_hi * nu_{k-k0}
        bool pass;
    };
    int q = 0;
    int sign = +1;
    int k0 = -1;  // smallest shift that validates every tested k; -1 = none
    double c_lo = 0.0, c_hi = 0.0;
    std::vector<Entry> entries;           // at the chosen k0
    std::vector<double> first_order_dev;  // |shift/toeplitz_half - 1| on top values
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Two-sided eigenvalue sandwich between the pointwise-eigenvalue Toeplitz
/// sequences and the cluster shifts, with the fixed epsilon = 1/2 constants;
/// scans k0 = 0..3 and reports the smallest that validates.
SandwichReport sandwich_check(const MagneticContext& ctx, const HermitianSymbolMatrix& m, int q,
                              const TruncationSpec& spec, int sign, int tested_k = 0);

}  // namespace landau

#endif
