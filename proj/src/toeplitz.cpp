#include "landau/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "landau/quadrature.hpp"
#include "landau/special_functions.hpp"

namespace landau {

double landau_level(const MagneticContext& ctx, int q) {
    if (!(ctx.b > 0.0)) throw std::invalid_argument("landau_level: b must be > 0");
    if (q < 0) throw std::invalid_argument("landau_level: q must be >= 0");
    return ctx.b * (2.0 * q + 1.0);
}

double ladder_coeff(const MagneticContext& ctx, int q, LadderDirection dir) {
    if (!(ctx.b > 0.0) || q < 0) throw std::invalid_argument("ladder_coeff: bad arguments");
    if (dir == LadderDirection::Raise) return std::sqrt(2.0 * ctx.b * (q + 1.0));
    return q == 0 ? 0.0 : std::sqrt(2.0 * ctx.b * q);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sign of the rephased basis function: (-1)^{max(level - index, 0)}
int basis_sign(long long level, long long index) {
    return (level > index && (level - index) % 2 != 0) ? -1 : 1;
}

// integration domain of one symbol piece in the t = b r^2 / 2 variable
std::pair<double, double> piece_domain(const Cutoff& c, double b) {
    switch (c.kind) {
        case Cutoff::Kind::Inside: return {0.0, b * c.radius * c.radius / 2.0};
        case Cutoff::Kind::Outside: return {b * c.radius * c.radius / 2.0, kInf};
        default: return {0.0, kInf};
    }
}

// integral_0^inf term(2t/b) * t^p * e^{-t} * poly(t) dt over one piece domain,
// in log domain.  p may be any real > -1 after adding the term power.
LogScalar term_moment(const RadialTerm& term, double b, double p,
                      const std::function<double(double)>& poly, double t_lo, double t_hi) {
    if (term.coeff == 0.0) return LogScalar::zero();
    const double two_over_b = 2.0 / b;
    const double total_power = p + term.power;
    if (t_lo == 0.0 && !(total_power > -1.0))
        throw std::domain_error("term_moment: divergent moment (power <= -1 at t = 0)");
    // gamma (2/b)^beta in the t variable
    const double rate = term.decay_rate * std::pow(two_over_b, term.decay_exponent);
    const double expo = term.decay_exponent;

    LogIntegrand f;
    f.log_weight = [total_power, rate, expo](double t) {
        double lt = std::log(t);
        double decay = 0.0;
        if (rate != 0.0) {
            double pw = expo * lt;
            decay = (pw > 700.0) ? kInf : rate * std::exp(pw);
        }
        return total_power * lt - t - decay;
    };
    f.prefactor = poly;  // may be null

    LogScalar integral = log_integrate(f, t_lo, t_hi);
    LogScalar scale = LogScalar::from_value(term.coeff) *
                      LogScalar::from_log(1, term.power * std::log(two_over_b));
    return scale * integral;
}

// sum of term moments over all pieces of a symbol
LogScalar symbol_moment(const RadialSymbol& V, double b, double p,
                        const std::function<double(double)>& poly) {
    LogScalar sum = LogScalar::zero();
    for (const auto& piece : V.pieces()) {
        auto [lo, hi] = piece_domain(piece.cutoff, b);
        for (const auto& term : piece.terms) sum = sum + term_moment(term, b, p, poly, lo, hi);
    }
    return sum;
}

}  // namespace

LogScalar matrix_element(const MagneticContext& ctx, const RadialSymbol& V, int m, int s,
                         long long k, long long l) {
    if (!(ctx.b > 0.0)) throw std::invalid_argument("matrix_element: b must be > 0");
    if (m < 0 || s < 0 || k < 0 || l < 0)
        throw std::invalid_argument("matrix_element: indices must be >= 0");
    if (k - m != l - s) return LogScalar::zero();  // angular selection rule
    if (V.is_zero()) return LogScalar::zero();

    const long long alpha = std::abs(k - m);
    const long long n1 = std::min<long long>(m, k), N1 = std::max<long long>(m, k);
    const long long n2 = std::min<long long>(s, l), N2 = std::max<long long>(s, l);

    const double log_norm =
        0.5 * (log_gamma(static_cast<double>(n1) + 1.0) -
               log_gamma(static_cast<double>(N1) + 1.0) +
               log_gamma(static_cast<double>(n2) + 1.0) -
               log_gamma(static_cast<double>(N2) + 1.0));
    const int sigma = basis_sign(m, k) * basis_sign(s, l);

    std::function<double(double)> poly;
    if (n1 > 0 || n2 > 0) {
        if (alpha > (1LL << 30))
            throw std::invalid_argument(
                "matrix_element: Laguerre profile with out-of-range superscript");
        poly = [n1, n2, alpha](double t) {
            return laguerre(static_cast<int>(n1), static_cast<int>(alpha), t) *
                   laguerre(static_cast<int>(n2), static_cast<int>(alpha), t);
        };
    }

    LogScalar integral = symbol_moment(V, ctx.b, static_cast<double>(alpha), poly);
    return LogScalar::from_log(sigma, log_norm) * integral;
}

LogScalar weight_element(const MagneticContext& ctx, const RadialSymbol& g, int w, int k) {
    if (w < 0 || k < 0) throw std::invalid_argument("weight_element: indices must be >= 0");
    if (g.is_zero()) return LogScalar::zero();
    const double log_norm = 0.5 * (w * std::log(2.0 / ctx.b) - log_gamma(k + 1.0) -
                                   log_gamma(k + w + 1.0));
    LogScalar integral = symbol_moment(g, ctx.b, static_cast<double>(k + w), nullptr);
    return LogScalar::from_log(1, log_norm) * integral;
}

namespace {

// sort values descending, ties broken by ascending originating index
void sort_sequence(EigenvalueSequence& seq) {
    std::vector<std::size_t> perm(seq.values.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) {
        if (seq.values[j] < seq.values[i]) return true;
        if (seq.values[i] < seq.values[j]) return false;
        return seq.origin_index[i] < seq.origin_index[j];
    });
    std::vector<LogScalar> v(seq.values.size());
    std::vector<int> o(seq.values.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        v[i] = seq.values[perm[i]];
        o[i] = seq.origin_index[perm[i]];
    }
    seq.values = std::move(v);
    seq.origin_index = std::move(o);
}

bool nonnegative_on_grid(const RadialSymbol& V) {
    for (int i = 0; i <= 600; ++i) {
        double r = 0.05 * i;
        if (V(r) < -1e-12) return false;
    }
    return true;
}

}  // namespace

EigenvalueSequence toeplitz_eigs_radial(const MagneticContext& ctx, const RadialSymbol& V,
                                        int q, int K) {
    if (K < 1) throw std::invalid_argument("toeplitz_eigs_radial: K >= 1");
    if (!nonnegative_on_grid(V))
        throw std::invalid_argument("toeplitz_eigs_radial: V must be >= 0 pointwise");
    EigenvalueSequence seq;
    seq.operator_desc = "toeplitz_diagonal";
    seq.truncation = K;
    seq.b = ctx.b;
    seq.q = q;
    seq.values.reserve(K);
    for (int k = 0; k < K; ++k) {
        seq.values.push_back(matrix_element(ctx, V, q, q, k, k));
        seq.origin_index.push_back(k);
    }
    sort_sequence(seq);
    return seq;
}

std::vector<double> symmetric_eigensolve(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigensolve: square input");
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("symmetric_eigensolve: input is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric_eigensolve: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> hermitian_eigensolve(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigensolve: square input");
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eigensolve: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigensolve: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

// positive eigenvalues of a Hermitian finite section, as a sorted sequence;
// flags the truncation when the smallest kept value is near the first omitted
// diagonal entry.
EigenvalueSequence section_spectrum(const Eigen::MatrixXcd& mat, LogScalar next_diagonal,
                                    const MagneticContext& ctx, int q, int K,
                                    const std::string& desc) {
    EigenvalueSequence seq;
    seq.operator_desc = desc;
    seq.truncation = K;
    seq.b = ctx.b;
    seq.q = q;
    std::vector<double> ev = hermitian_eigensolve(mat);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        double v = ev[ev.size() - 1 - i];  // descending
        if (v <= 0.0) break;               // keep the positive part only
        seq.values.push_back(LogScalar::from_value(v));
        seq.origin_index.push_back(static_cast<int>(i));
    }
    if (!seq.values.empty() && !next_diagonal.is_zero()) {
        LogScalar ten_next = LogScalar::from_value(10.0) * next_diagonal;
        if (seq.values.back() <= ten_next) seq.truncation_warning = true;
    }
    return seq;
}

// diagonal-only spectrum, exact in log domain
EigenvalueSequence diagonal_spectrum(std::vector<LogScalar> diag, LogScalar next_diagonal,
                                     const MagneticContext& ctx, int q, int K,
                                     const std::string& desc) {
    EigenvalueSequence seq;
    seq.operator_desc = desc;
    seq.truncation = K;
    seq.b = ctx.b;
    seq.q = q;
    for (std::size_t k = 0; k < diag.size(); ++k) {
        seq.values.push_back(diag[k]);
        seq.origin_index.push_back(static_cast<int>(k));
    }
    sort_sequence(seq);
    while (!seq.values.empty() && seq.values.back().sign() <= 0) {
        seq.values.pop_back();
        seq.origin_index.pop_back();
    }
    if (!seq.values.empty() && !next_diagonal.is_zero()) {
        if (seq.values.back() <= LogScalar::from_value(10.0) * next_diagonal)
            seq.truncation_warning = true;
    }
    return seq;
}

}  // namespace

EigenvalueSequence quadratic_form_eigs(const MagneticContext& ctx,
                                       const HermitianSymbolMatrix& omega, int q, int K) {
    if (K < 4) throw std::invalid_argument("quadratic_form_eigs: K >= 4");
    const double b = ctx.b;
    const double qq = static_cast<double>(q);

    auto diag_entry = [&](int k) {
        LogScalar d = LogScalar::from_value(2.0 * b * (qq + 1.0)) *
                      matrix_element(ctx, omega.e11, q + 1, q + 1, k, k);
        if (q >= 1)
            d = d + LogScalar::from_value(2.0 * b * qq) *
                        matrix_element(ctx, omega.e22, q - 1, q - 1, k, k);
        return d;
    };

    if (q == 0 || omega.offdiagonal_zero()) {
        std::vector<LogScalar> diag;
        diag.reserve(K);
        for (int k = 0; k < K; ++k) diag.push_back(diag_entry(k));
        return diagonal_spectrum(std::move(diag), diag_entry(K), ctx, q, K,
                                 "ladder_quadratic_form");
    }

    // coupled case: dense Hermitian section; the omega21 entry links k to k-2
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(K, K);
    const double cross = -2.0 * b * std::sqrt(qq * (qq + 1.0));
    for (int k = 0; k < K; ++k) {
        mat(k, k) = diag_entry(k).value();
        if (k >= 2) {
            // omega21 = e12_re - i e12_im; element <.. phi_k, phi_{k-2}>
            LogScalar re = matrix_element(ctx, omega.e12_re, q + 1, q - 1, k, k - 2);
            LogScalar im = matrix_element(ctx, omega.e12_im, q + 1, q - 1, k, k - 2);
            std::complex<double> xi(re.value(), -im.value());
            mat(k - 2, k) = cross * xi;
            mat(k, k - 2) = std::conj(mat(k - 2, k));
        }
    }
    return section_spectrum(mat, diag_entry(K), ctx, q, K, "ladder_quadratic_form");
}

EigenvalueSequence wq_route_eigs(const MagneticContext& ctx, const HermitianSymbolMatrix& omega,
                                 int q, int K) {
    if (K < 1) throw std::invalid_argument("wq_route_eigs: K >= 1");
    ReducedSymbol red = wq_transform(omega, q, ctx.b);

    auto diag_entry = [&](int k) { return matrix_element(ctx, red.radial, 0, 0, k, k); };

    if (!red.has_coupling()) {
        std::vector<LogScalar> diag;
        diag.reserve(K);
        for (int k = 0; k < K; ++k) diag.push_back(diag_entry(k));
        return diagonal_spectrum(std::move(diag), diag_entry(K), ctx, q, K, "reduced_level0");
    }

    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(K, K);
    for (int k = 0; k < K; ++k) {
        mat(k, k) = diag_entry(k).value();
        if (k + 2 < K) {
            // Re[z^2 C]: the zbar part is orthogonal here, so the element is C/2
            LogScalar re = weight_element(ctx, red.couple_re, 2, k);
            LogScalar im = weight_element(ctx, red.couple_im, 2, k);
            std::complex<double> c(re.value(), im.value());
            mat(k + 2, k) = 0.5 * c;
            mat(k, k + 2) = std::conj(mat(k + 2, k));
        }
    }
    return section_spectrum(mat, diag_entry(K), ctx, q, K, "reduced_level0");
}

void EigenvalueSequence::write_csv(std::ostream& os) const {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "# operator=%s b=%.17g q=%d K=%d truncation_warning=%d\n",
                  operator_desc.c_str(), b, q, truncation, truncation_warning ? 1 : 0);
    os << buf << "k,sign,ln_abs_value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", origin_index[i], values[i].sign(),
                      values[i].log_abs());
        os << buf;
    }
}

EigenvalueSequence EigenvalueSequence::read_csv(std::istream& is) {
    EigenvalueSequence seq;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("k,", 0) == 0) continue;
        std::istringstream ss(line);
        std::string field;
        std::getline(ss, field, ',');
        int k = std::stoi(field);
        std::getline(ss, field, ',');
        int sign = std::stoi(field);
        std::getline(ss, field, ',');
        double ln_abs = std::stod(field);
        seq.origin_index.push_back(k);
        seq.values.push_back(LogScalar::from_log(sign, ln_abs));
    }
    seq.truncation = static_cast<int>(seq.values.size());
    return seq;
}

}  // namespace landau
