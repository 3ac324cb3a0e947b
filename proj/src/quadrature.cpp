#include "landau/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace landau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGlOrder = 32;

// u range keeping t = exp(u) inside normalized double range
constexpr double kUMin = -690.0;
constexpr double kUMax = 690.0;

struct GaussLegendre {
    std::array<double, kGlOrder> node{};
    std::array<double, kGlOrder> weight{};

    GaussLegendre() {
        // Newton iteration on P_n; nodes symmetric about 0.
        const int n = kGlOrder;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            node[i] = -x;
            node[n - 1 - i] = x;
            weight[i] = weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre& gl() {
    static const GaussLegendre tables;
    return tables;
}

// Running sum of signed contributions exp(lm)*sgn, scaled by the largest
// log magnitude seen.
struct ScaledSum {
    double log_scale = -kInf;
    double sum = 0.0;

    void add(double lm, double sgn) {
        if (sgn == 0.0 || lm == -kInf || std::isnan(lm)) return;
        if (lm > log_scale) {
            sum *= std::exp(log_scale - lm);
            log_scale = lm;
        }
        sum += sgn * std::exp(lm - log_scale);
    }

    void merge(const ScaledSum& o) {
        if (o.sum == 0.0 || o.log_scale == -kInf) return;
        if (o.log_scale > log_scale) {
            sum = sum * std::exp(log_scale - o.log_scale) + o.sum;
            log_scale = o.log_scale;
        } else {
            sum += o.sum * std::exp(o.log_scale - log_scale);
        }
    }

    double log_abs() const {
        if (sum == 0.0 || log_scale == -kInf) return -kInf;
        return log_scale + std::log(std::abs(sum));
    }

    LogScalar to_scalar() const {
        if (sum == 0.0 || log_scale == -kInf) return LogScalar::zero();
        return LogScalar::from_log(sum > 0 ? 1 : -1, log_abs());
    }
};

class Integrator {
public:
    Integrator(const LogIntegrand& f, double u_lo, double u_hi)
        : f_(f), u_lo_(u_lo), u_hi_(u_hi) {}

    LogScalar run() {
        double u_star = locate_peak();
        if (g(u_star) == -kInf) return LogScalar::zero();  // empty integrand
        double width = initial_width(u_star);

        sweep(u_star, u_hi_, width, +1.0);
        sweep(u_star, u_lo_, width, -1.0);
        return total_.to_scalar();
    }

private:
    double g(double u) const {
        double t = std::exp(u);
        double v = f_.log_weight(t) + u;  // + u: Jacobian of t = e^u
        return std::isnan(v) ? -kInf : v;
    }

    double pref(double t) const { return f_.prefactor ? f_.prefactor(t) : 1.0; }

    // Golden-section max of the concave g on [u_lo, u_hi].
    double locate_peak() const {
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = u_lo_, b = u_hi_;
        double c = b - phi * (b - a), d = a + phi * (b - a);
        double gc = g(c), gd = g(d);
        for (int it = 0; it < 220 && (b - a) > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
            if (gc >= gd) {
                b = d;
                d = c;
                gd = gc;
                c = b - phi * (b - a);
                gc = g(c);
            } else {
                a = c;
                c = d;
                gc = gd;
                d = a + phi * (b - a);
                gd = g(d);
            }
        }
        return 0.5 * (a + b);
    }

    double initial_width(double u_star) const {
        const double h = 1e-3;
        double gm = g(std::max(u_star - h, u_lo_));
        double g0 = g(u_star);
        double gp = g(std::min(u_star + h, u_hi_));
        if (g0 == -kInf || gm == -kInf || gp == -kInf) return 1.0;
        double curv = (gp - 2.0 * g0 + gm) / (h * h);
        if (!(curv < 0.0)) return 1.0;
        double sigma = 1.0 / std::sqrt(-curv);
        return std::clamp(sigma, 1e-6, 2.0);
    }

    // One GL panel on [a, b]; splits while the weight varies too much.
    void panel(double a, double b, int depth, ScaledSum& acc) {
        double mid = 0.5 * (a + b);
        double ga = g(a), gm = g(mid), gb = g(b);
        double top = std::max({ga, gm, gb});
        if (top == -kInf) return;
        double bot = std::min({ga, gm, gb});
        if (top - bot > 20.0 && depth < 48 && (b - a) > 1e-13) {
            panel(a, mid, depth + 1, acc);
            panel(mid, b, depth + 1, acc);
            return;
        }
        const double half = 0.5 * (b - a);
        for (int j = 0; j < kGlOrder; ++j) {
            double u = mid + half * gl().node[j];
            double gu = g(u);
            if (gu == -kInf) continue;
            double p = pref(std::exp(u));
            if (p == 0.0 || std::isnan(p)) continue;
            double lm = gu + std::log(std::abs(p) * gl().weight[j] * half);
            acc.add(lm, p > 0 ? 1.0 : -1.0);
        }
    }

    // Expanding panels from u_start toward u_stop (dir = +-1).
    void sweep(double u_start, double u_stop, double width, double dir) {
        double pos = u_start;
        int quiet = 0;
        double last_local = -kInf;
        for (int n = 0; n < 6000; ++n) {
            if ((u_stop - pos) * dir <= 0.0) return;
            double next = pos + dir * width;
            if ((next - u_stop) * dir > 0.0) next = u_stop;

            ScaledSum local;
            panel(std::min(pos, next), std::max(pos, next), 0, local);
            double before = total_.log_abs();
            total_.merge(local);
            last_local = local.log_abs();

            double base = std::max(before, total_.log_abs());
            bool negligible = (last_local == -kInf) ||
                              (base != -kInf && last_local < base + std::log(1e-16));
            quiet = negligible ? quiet + 1 : 0;
            if (quiet >= 2) return;

            pos = next;
            width = std::min(width * 1.35, 8.0);
        }
        double achieved = last_local - total_.log_abs();  // log of relative tail bound
        throw QuadratureError(
            "log_integrate: panel sweep did not converge; achieved relative bound ~ exp(" +
            std::to_string(achieved) + ")");
    }

    const LogIntegrand& f_;
    double u_lo_, u_hi_;
    ScaledSum total_;
};

}  // namespace

LogScalar log_integrate(const LogIntegrand& f, double t_lo, double t_hi) {
    if (!f.log_weight) throw std::invalid_argument("log_integrate: missing log_weight");
    if (!(t_lo >= 0.0) || !(t_hi > t_lo))
        throw std::domain_error("log_integrate: need 0 <= t_lo < t_hi");
    double u_lo = (t_lo == 0.0) ? kUMin : std::max(std::log(t_lo), kUMin);
    double u_hi = std::isinf(t_hi) ? kUMax : std::min(std::log(t_hi), kUMax);
    if (u_lo >= u_hi) return LogScalar::zero();
    return Integrator(f, u_lo, u_hi).run();
}

}  // namespace landau
