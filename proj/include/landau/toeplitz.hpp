#ifndef LANDAU_TOEPLITZ_HPP
#define LANDAU_TOEPLITZ_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "landau/log_scalar.hpp"
#include "landau/radial_symbol.hpp"

namespace landau {

struct MagneticContext {
    double b = 1.0;  // constant magnetic field, > 0
};

/// Basis label (level q, index k); angular momentum is k - q.
struct BasisIndex {
    int level = 0;
    int index = 0;
    int angular_momentum() const { return index - level; }
};

/// Ordered positive eigenvalues with provenance.
struct EigenvalueSequence {
    std::vector<LogScalar> values;   // non-increasing
    std::vector<int> origin_index;   // basis index that produced each value
    std::string operator_desc;
    int truncation = 0;
    double b = 0.0;
    int q = 0;
    bool truncation_warning = false;

    std::size_t size() const { return values.size(); }

    void write_csv(std::ostream& os) const;  // columns k, sign, ln_abs_value
    static EigenvalueSequence read_csv(std::istream& is);
};

double landau_level(const MagneticContext& ctx, int q);

enum class LadderDirection { Raise, Lower };
double ladder_coeff(const MagneticContext& ctx, int q, LadderDirection dir);

/// <V phi_{m,k}, phi_{s,l}> for radial V, in the rephased angular-momentum
/// basis (the level-dependent unit phase is divided out, so radial symbols
/// give real, signed values; spectra are unchanged).  Exactly zero unless
/// k - m == l - s.  Indices k, l may exceed 2^32 (lazy counting probes that
/// deep); levels stay small.
LogScalar matrix_element(const MagneticContext& ctx, const RadialSymbol& V, int m, int s,
                         long long k, long long l);

/// <z^w g phi_{0,k}, phi_{0,k+w}>, w >= 0: matrix element of an angular
/// symbol in the lowest-level basis.
LogScalar weight_element(const MagneticContext& ctx, const RadialSymbol& g, int w, int k);

/// First K diagonal values <V phi_{q,k}, phi_{q,k}>, sorted non-increasing.
/// For q = 0 these are the explicit moment integrals of the radial profile.
/// Requires V >= 0 pointwise.
EigenvalueSequence toeplitz_eigs_radial(const MagneticContext& ctx, const RadialSymbol& V,
                                        int q, int K);

/// Eigenvalues of the K x K finite section of the level-q ladder quadratic
/// form with matrix Omega (diagonal entries couple k to itself; the
/// off-diagonal entry couples k to k-2).
EigenvalueSequence quadratic_form_eigs(const MagneticContext& ctx,
                                       const HermitianSymbolMatrix& omega, int q, int K);

/// Same spectrum through the reduced lowest-level route: eigenvalues of the
/// K x K finite section of the reduced symbol on level 0.
EigenvalueSequence wq_route_eigs(const MagneticContext& ctx, const HermitianSymbolMatrix& omega,
                                 int q, int K);

/// All eigenvalues of a real symmetric matrix, ascending.  Rejects
/// non-symmetric input.
std::vector<double> symmetric_eigensolve(const Eigen::MatrixXd& a);

/// All eigenvalues of a complex Hermitian matrix, ascending.
std::vector<double> hermitian_eigensolve(const Eigen::MatrixXcd& a);

}  // namespace landau

#endif
