#ifndef LANDAU_RADIAL_SYMBOL_HPP
#define LANDAU_RADIAL_SYMBOL_HPP

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace landau {

// Closed term algebra for radial symbols on R^2.  A term is
//   c * t^a * exp(-gamma * t^beta),   t = r^2,
// i.e. c |x|^{2a} exp(-gamma |x|^{2 beta}).  Sums, products within a
// beta-family, and the planar Laplacian stay inside the algebra, which is
// what makes the Laguerre differential transforms below exact.

struct RadialTerm {
    double coeff = 0.0;           // c
    double power = 0.0;           // a; negative only behind an outside cutoff
    double decay_rate = 0.0;      // gamma; 0 -> no decay factor
    double decay_exponent = 1.0;  // beta > 0

    double value_at_t(double t) const;
};

struct Cutoff {
    enum class Kind { None, Inside, Outside };
    Kind kind = Kind::None;
    double radius = 0.0;

    bool contains_r(double r) const;
    bool operator==(const Cutoff&) const = default;
};

/// One group of terms sharing a cutoff.
struct RadialPiece {
    std::vector<RadialTerm> terms;
    Cutoff cutoff;
};

class RadialSymbol {
public:
    RadialSymbol() = default;
    RadialSymbol(std::vector<RadialTerm> terms, Cutoff cutoff = {});

    static RadialSymbol zero() { return {}; }
    static RadialSymbol constant(double c);
    /// c * exp(-gamma r^{2 beta})
    static RadialSymbol gaussian(double c, double gamma, double beta = 1.0);
    /// c * r^{2a}
    static RadialSymbol power(double c, double a);

    const std::vector<RadialPiece>& pieces() const { return pieces_; }
    bool is_zero() const;
    bool cutoff_free() const;
    /// Terms of a cutoff-free symbol (throws otherwise).
    const std::vector<RadialTerm>& terms() const;

    double operator()(double r) const;
    double value_at_t(double t) const;

    RadialSymbol& operator+=(const RadialSymbol& o);
    friend RadialSymbol operator+(RadialSymbol a, const RadialSymbol& b) { return a += b; }
    friend RadialSymbol operator*(double c, RadialSymbol s);
    friend RadialSymbol operator-(RadialSymbol a, const RadialSymbol& b) { return a += -1.0 * b; }

    /// Pointwise product of cutoff-free symbols; decay factors must share
    /// the exponent family (decay rates add, powers add).
    friend RadialSymbol operator*(const RadialSymbol& a, const RadialSymbol& b);

    RadialSymbol restricted(Cutoff c) const;  // apply a cutoff to a cutoff-free symbol

    /// d/dt in the term algebra (cutoff-free only).
    RadialSymbol derivative_t() const;
    /// multiply by t^da
    RadialSymbol shifted_power(double da) const;

    /// Merge terms with equal (a, gamma, beta); drop zero coefficients.
    void compress();

    nlohmann::json to_json() const;
    static RadialSymbol from_json(const nlohmann::json& j);

private:
    std::vector<RadialPiece> pieces_;
};

/// Angular symbol z^w g(t) for w >= 0 (zbar^{|w|} g(t) for w < 0); only
/// |w| = 2 is produced here, from second conjugate derivatives of radial
/// symbols.
struct AngularSymbol {
    int weight = 0;
    RadialSymbol radial;

    bool is_zero() const { return radial.is_zero(); }
};

/// 2x2 Hermitian matrix of radial symbols: houses the metric m, the rotated
/// quadratic-form matrix, and test profiles.  e12 = e12_re + i e12_im,
/// e21 its conjugate.
struct HermitianSymbolMatrix {
    RadialSymbol e11, e22;
    RadialSymbol e12_re, e12_im;

    static HermitianSymbolMatrix identity(double scale = 1.0);
    static HermitianSymbolMatrix scalar(const RadialSymbol& p);  // p * Identity
    static HermitianSymbolMatrix diagonal(const RadialSymbol& d1, const RadialSymbol& d2);

    bool offdiagonal_zero() const { return e12_re.is_zero() && e12_im.is_zero(); }

    nlohmann::json to_json() const;
    static HermitianSymbolMatrix from_json(const nlohmann::json& j);
};

/// Planar Laplacian 4(t g'' + g') of a cutoff-free radial symbol; exact in
/// the term algebra.
RadialSymbol laplacian(const RadialSymbol& s);

/// Laplacian of z^w g(t): weight is preserved, radial part 4(t g'' + (|w|+1) g').
AngularSymbol laplacian(const AngularSymbol& s);

/// d^2/dzbar^2 of a radial symbol: weight +2, radial part g''.
AngularSymbol dbar_squared(const RadialSymbol& s);

/// Laguerre polynomial in -Laplacian/2b applied termwise:
/// sum_j binom(deg+sup, deg-j) Laplacian^j / (j! (2b)^j).
RadialSymbol laguerre_applied(const RadialSymbol& s, int degree, int superscript, double b);
AngularSymbol laguerre_applied(const AngularSymbol& s, int degree, int superscript, double b);

/// Level-q quadratic-form symbol reduced to the lowest Landau level.
/// The coupling part acts as the multiplier Re[z^2 (couple_re + i couple_im)].
struct ReducedSymbol {
    RadialSymbol radial;
    RadialSymbol couple_re, couple_im;

    bool has_coupling() const { return !(couple_re.is_zero() && couple_im.is_zero()); }
};

ReducedSymbol wq_transform(const HermitianSymbolMatrix& omega, int q, double b);

/// Conjugation by the fixed unitary mixing the ladder components: maps the
/// metric matrix m to the matrix sandwiched between (a*, a) ladder vectors.
HermitianSymbolMatrix metric_to_u(const HermitianSymbolMatrix& m);

/// Effective level-q scalar symbol (Lambda_q Tr m - 2b Im m12)/2 of a
/// pointwise-PSD metric.  Throws on non-PSD input.
RadialSymbol tq_symbol(const HermitianSymbolMatrix& m, int q, double b);

/// Closed-form pointwise eigenvalues (smaller, larger) of the 2x2 Hermitian
/// matrix at radius r.
std::pair<double, double> pointwise_eigen_bounds(const HermitianSymbolMatrix& m, double r);

/// Sharp-cutoff envelope pair for profiles |x|^{delta} e^{-gamma |x|^{2 beta}}:
/// lower = profile outside radius r+1; upper = profile outside r-1 plus a
/// constant cap inside.  Requires delta_lo <= delta_hi and r > 1.
std::pair<RadialSymbol, RadialSymbol> build_envelopes(double gamma, double beta,
                                                      double delta_lo, double delta_hi,
                                                      double r);

/// Prefactor constant of the transformed envelope tail; three branches in beta.
double eta3_prefactor(int q, double beta, double gamma, double b);

}  // namespace landau

#endif
