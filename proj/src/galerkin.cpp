#include "landau/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace landau {

namespace {

double sup_larger_eigenvalue(const HermitianSymbolMatrix& m) {
    double sup = 0.0;
    for (int i = 0; i <= 800; ++i) {
        double r = 0.025 * i;
        sup = std::max(sup, std::abs(pointwise_eigen_bounds(m, r).second));
    }
    return sup;
}

}  // namespace

Eigen::MatrixXcd assemble_full(const MagneticContext& ctx, const HermitianSymbolMatrix& m,
                               const TruncationSpec& spec, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("assemble_full: sign must be +-1");
    if (spec.max_level < spec.level_q + 2)
        throw std::invalid_argument("assemble_full: max_level must be >= level_q + 2");
    if (spec.max_index < 0) throw std::invalid_argument("assemble_full: max_index >= 0");
    if (sign == -1 && sup_larger_eigenvalue(m) >= 1.0)
        throw std::invalid_argument("assemble_full: sign - requires sup |m| < 1");

    const int dim = spec.dimension();
    const int Q = spec.max_level, K = spec.max_index;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 0; s <= Q; ++s) {
        double lam = landau_level(ctx, s);
        for (int k = 0; k <= K; ++k) h(spec.flat(s, k), spec.flat(s, k)) = lam;
    }

    HermitianSymbolMatrix u = metric_to_u(m);
    const bool off = !u.e12_re.is_zero() || !u.e12_im.is_zero();

    // <W phi_{s,k}, phi_{s',k'}> expanded over the ladder components; the
    // rephased basis turns the cross terms into explicit minus signs.
    auto w_element = [&](int s, int k, int sp, int kp) -> std::complex<double> {
        double up_s = ladder_coeff(ctx, s, LadderDirection::Raise);
        double dn_s = ladder_coeff(ctx, s, LadderDirection::Lower);
        double up_sp = ladder_coeff(ctx, sp, LadderDirection::Raise);
        double dn_sp = ladder_coeff(ctx, sp, LadderDirection::Lower);

        std::complex<double> acc(0.0, 0.0);
        acc += up_s * up_sp * matrix_element(ctx, u.e11, s + 1, sp + 1, k, kp).value();
        if (s >= 1 && sp >= 1)
            acc += dn_s * dn_sp * matrix_element(ctx, u.e22, s - 1, sp - 1, k, kp).value();
        if (off && s >= 1) {
            // u12 between the lowered ket and the raised bra
            double re = matrix_element(ctx, u.e12_re, s - 1, sp + 1, k, kp).value();
            double im = matrix_element(ctx, u.e12_im, s - 1, sp + 1, k, kp).value();
            acc -= dn_s * up_sp * std::complex<double>(re, im);
        }
        if (off && sp >= 1) {
            double re = matrix_element(ctx, u.e12_re, s + 1, sp - 1, k, kp).value();
            double im = matrix_element(ctx, u.e12_im, s + 1, sp - 1, k, kp).value();
            acc -= up_s * dn_sp * std::complex<double>(re, -im);
        }
        return 0.5 * acc;
    };

    for (int s = 0; s <= Q; ++s)
        for (int sp = s; sp <= Q; ++sp)
            for (int k = 0; k <= K; ++k) {
                // angular selection allows only k' - k in {s'-s, s'-s +- 2}
                for (int dk : {sp - s - 2, sp - s, sp - s + 2}) {
                    int kp = k + dk;
                    if (kp < 0 || kp > K) continue;
                    if (sp == s && kp < k) continue;  // fill upper triangle, mirror below
                    std::complex<double> w = w_element(s, k, sp, kp);
                    if (w == std::complex<double>(0.0, 0.0)) continue;
                    h(spec.flat(sp, kp), spec.flat(s, k)) += static_cast<double>(sign) * w;
                    if (spec.flat(sp, kp) != spec.flat(s, k))
                        h(spec.flat(s, k), spec.flat(sp, kp)) +=
                            static_cast<double>(sign) * std::conj(w);
                }
            }
    return h;
}

EigenvalueSequence cluster_near(const MagneticContext& ctx, const Eigen::MatrixXcd& h, int q,
                                ClusterWindow window) {
    double lam_q = landau_level(ctx, q);
    double lam_lo = q == 0 ? -std::numeric_limits<double>::infinity() : landau_level(ctx, q - 1);
    double lam_hi = landau_level(ctx, q + 1);
    if (!(window.lo < window.hi) || window.lo < lam_lo || window.hi > lam_hi)
        throw std::invalid_argument("cluster_near: window must lie inside the adjacent levels");

    std::vector<double> ev = hermitian_eigensolve(h);
    EigenvalueSequence seq;
    seq.operator_desc = "cluster_shifts";
    seq.b = ctx.b;
    seq.q = q;
    seq.truncation = static_cast<int>(h.rows());
    std::vector<double> shifts;
    for (double v : ev)
        if (v > window.lo && v < window.hi) shifts.push_back(v - lam_q);
    std::sort(shifts.begin(), shifts.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        seq.values.push_back(LogScalar::from_value(shifts[i]));
        seq.origin_index.push_back(static_cast<int>(i));
    }
    return seq;
}

nlohmann::json SandwichReport::to_json() const {
    nlohmann::json entries_j = nlohmann::json::array();
    for (const auto& e : entries)
        entries_j.push_back({{"k", e.k},
                             {"shift", e.shift},
                             {"lower", e.lower_bound},
                             {"upper", e.upper_bound},
                             {"pass", e.pass}});
    return {{"q", q},
            {"sign", sign},
            {"k0", k0},
            {"c_lo", c_lo},
            {"c_hi", c_hi},
            {"entries", entries_j},
            {"first_order_dev", first_order_dev},
            {"pass", pass}};
}

namespace {

bool same_symbol(const RadialSymbol& a, const RadialSymbol& b) {
    return a.to_json() == b.to_json();
}

bool dominates_on_grid(const RadialSymbol& a, const RadialSymbol& b) {
    for (int i = 0; i <= 600; ++i) {
        double r = 0.05 * i;
        if (a(r) < b(r) - 1e-14) return false;
    }
    return true;
}

std::vector<double> cluster_shift_values(const MagneticContext& ctx,
                                         const HermitianSymbolMatrix& m, int q,
                                         const TruncationSpec& spec, int sign) {
    Eigen::MatrixXcd h = assemble_full(ctx, m, spec, sign);
    double lam_q = landau_level(ctx, q);
    ClusterWindow window{lam_q - 0.9 * ctx.b, lam_q + 0.9 * ctx.b};
    EigenvalueSequence cluster = cluster_near(ctx, h, q, window);
    std::vector<double> shifts;
    for (const auto& v : cluster.values) shifts.push_back(sign * v.value());
    std::sort(shifts.rbegin(), shifts.rend());
    return shifts;
}

}  // namespace

SandwichReport sandwich_check(const MagneticContext& ctx, const HermitianSymbolMatrix& m, int q,
                              const TruncationSpec& spec, int sign, int tested_k) {
    if (!m.offdiagonal_zero())
        throw std::invalid_argument(
            "sandwich_check: pointwise eigenvalue symbols need diagonal m");
    RadialSymbol m_lo, m_hi;
    if (same_symbol(m.e11, m.e22)) {
        m_lo = m_hi = m.e11;
    } else if (dominates_on_grid(m.e22, m.e11)) {
        m_lo = m.e11;
        m_hi = m.e22;
    } else if (dominates_on_grid(m.e11, m.e22)) {
        m_lo = m.e22;
        m_hi = m.e11;
    } else {
        throw std::invalid_argument("sandwich_check: diagonal entries are not pointwise ordered");
    }

    SandwichReport rep;
    rep.q = q;
    rep.sign = sign;

    double sup_m = sup_larger_eigenvalue(m);
    const double eps = 0.5;
    if (sign < 0) {
        double c_minus = sup_m / (1.0 - sup_m);
        rep.c_lo = 1.0 / (2.0 * (1.0 + eps));
        rep.c_hi = (1.0 + c_minus) / (2.0 * (1.0 - eps));
    } else {
        double c_plus = sup_m / (1.0 + sup_m);
        rep.c_lo = (1.0 - c_plus) / (2.0 * (1.0 + eps));
        rep.c_hi = 1.0 / (2.0 * (1.0 - eps));
    }

    // cluster shifts, with a truncation-bias gate: keep k only while the
    // shift moves by < 1% when the index truncation grows by 50%
    std::vector<double> shifts = cluster_shift_values(ctx, m, q, spec, sign);
    TruncationSpec wide = spec;
    wide.max_index = spec.max_index + (spec.max_index + 1) / 2;
    std::vector<double> shifts_wide = cluster_shift_values(ctx, m, q, wide, sign);
    std::size_t stable = 0;
    while (stable < shifts.size() && stable < shifts_wide.size()) {
        double a = shifts[stable], b = shifts_wide[stable];
        if (!(a > 0.0) || std::abs(b - a) >= 0.01 * std::abs(a)) break;
        ++stable;
    }

    int n_test = tested_k > 0 ? tested_k : static_cast<int>(stable);
    n_test = std::min<int>(n_test, static_cast<int>(stable));

    const int K_seq = spec.max_index + 8;
    EigenvalueSequence lower_seq =
        quadratic_form_eigs(ctx, HermitianSymbolMatrix::scalar(m_lo), q, K_seq);
    EigenvalueSequence upper_seq =
        quadratic_form_eigs(ctx, HermitianSymbolMatrix::scalar(m_hi), q, K_seq);

    auto nu = [](const EigenvalueSequence& s, int i) {
        i = std::clamp(i, 0, static_cast<int>(s.values.size()) - 1);
        return s.values[i].value();
    };

    for (int k0 = 0; k0 <= 3; ++k0) {
        std::vector<SandwichReport::Entry> entries;
        bool all = true;
        for (int k = 0; k < n_test; ++k) {
            SandwichReport::Entry e;
            e.k = k;
            e.shift = shifts[k];
            e.lower_bound = rep.c_lo * nu(lower_seq, k + k0);
            e.upper_bound = rep.c_hi * nu(upper_seq, k - k0);
            e.pass = (e.lower_bound <= e.shift && e.shift <= e.upper_bound);
            all = all && e.pass;
            entries.push_back(e);
        }
        if (all) {
            rep.k0 = k0;
            rep.entries = std::move(entries);
            rep.pass = true;
            break;
        }
        if (k0 == 3) rep.entries = std::move(entries);  // report the failing set
    }

    // first-order consistency: the perturbation quadratic form is half the
    // ladder form of the rotated matrix, so shifts track 0.5 * those values
    EigenvalueSequence qf = quadratic_form_eigs(ctx, metric_to_u(m), q, K_seq);
    for (int k = 0; k < std::min<int>(10, n_test); ++k)
        rep.first_order_dev.push_back(std::abs(shifts[k] / (0.5 * nu(qf, k)) - 1.0));
    return rep;
}

}  // namespace landau
