#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "landau/asymptotics.hpp"
#include "landau/special_functions.hpp"

using namespace landau;

namespace {

// j-th Taylor coefficient of eps -> minimized_value by central differences
// with one Richardson step
double fd_coefficient(MinimizerKind kind, double beta, double mu, int j, double h) {
    auto f = [&](double e) { return minimized_value(kind, beta, mu, e); };
    auto stencil = [&](double hh) {
        switch (j) {
            case 1: return (f(hh) - f(-hh)) / (2.0 * hh);
            case 2: return (f(hh) - 2.0 * f(0.0) + f(-hh)) / (hh * hh);
            case 3:
                return (f(2.0 * hh) - 2.0 * f(hh) + 2.0 * f(-hh) - f(-2.0 * hh)) /
                       (2.0 * hh * hh * hh);
            default: return f(0.0);
        }
    };
    double d = (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
    return d / std::exp(log_gamma(j + 1.0));
}

}  // namespace

TEST_CASE("PowerSeries: functional laws") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> cd(-0.8, 0.8), c0d(0.5, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
        PowerSeries s(8);
        s.at(0) = c0d(rng);
        for (int j = 1; j <= 8; ++j) s.at(j) = cd(rng);

        PowerSeries round = s.log().exp();
        CHECK(round.max_abs_diff(s) < 1e-12);

        double a = c0d(rng);
        PowerSeries powed = s.pow(a).pow(1.0 / a);
        CHECK(powed.max_abs_diff(s) < 1e-11);
    }

    PowerSeries bad(3);
    bad.at(0) = -1.0;
    CHECK_THROWS_AS(bad.log(), std::domain_error);
}

TEST_CASE("solve_minimizer: pinned solutions") {
    CHECK(solve_minimizer(MinimizerKind::F, 0.4, 2.0, 0.0) == doctest::Approx(1.0));
    // beta mu s^beta = 1 at eps = 0
    CHECK(solve_minimizer(MinimizerKind::G, 2.0, 0.5, 0.0) == doctest::Approx(1.0));
    CHECK(solve_minimizer(MinimizerKind::G, 3.0, 2.0, 0.0) ==
          doctest::Approx(std::pow(6.0, -1.0 / 3.0)));

    // closed-form quadratic in sqrt(s): u^2 + 0.05 u - 1 = 0
    double u = (-0.05 + std::sqrt(0.05 * 0.05 + 4.0)) / 2.0;
    CHECK(solve_minimizer(MinimizerKind::F, 0.5, 1.0, 0.1) ==
          doctest::Approx(u * u).epsilon(1e-12));

    // stationarity of the defining equations
    for (double eps : {-0.05, 0.0, 0.08}) {
        double s = solve_minimizer(MinimizerKind::F, 0.7, 1.5, eps);
        CHECK(std::abs(1.0 - 1.0 / s + eps * 1.5 * 0.7 * std::pow(s, -0.3)) < 1e-10);
        double sg = solve_minimizer(MinimizerKind::G, 1.5, 0.8, eps);
        CHECK(std::abs(1.5 * 0.8 * std::pow(sg, 0.5) - 1.0 / sg + eps) < 1e-10);
    }

    // a step size that breaks contraction is rejected
    CHECK_THROWS_AS(solve_minimizer(MinimizerKind::F, 0.9, 5.0, 40.0), std::domain_error);
}

TEST_CASE("f_series: structural coefficients") {
    for (double beta : {0.3, 0.5, 0.7}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            PowerSeries f = f_series(beta, mu, 4);
            CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(f[1] == doctest::Approx(mu).epsilon(1e-13));
            CHECK(f[2] == doctest::Approx(-beta * beta * mu * mu / 2.0).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(f_series(0.5, 1.0, 31), std::invalid_argument);
    CHECK_THROWS_AS(f_series(1.5, 1.0, 3), std::invalid_argument);
}

TEST_CASE("g_series: structural coefficients") {
    for (double beta : {1.5, 2.0, 3.0}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            PowerSeries g = g_series(beta, mu, 4);
            CHECK(g[0] ==
                  doctest::Approx((1.0 + std::log(mu * beta)) / beta).epsilon(1e-13));
            CHECK(g[1] == doctest::Approx(std::pow(beta * mu, -1.0 / beta)).epsilon(1e-10));
        }
    }
    // mu beta = 1 kills the log term
    PowerSeries g = g_series(2.0, 0.5, 2);
    CHECK(g[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(g_series(0.5, 1.0, 3), std::invalid_argument);
}

TEST_CASE("series coefficients match finite differences of the minimized value") {
    for (double beta : {0.3, 0.5, 0.7}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            PowerSeries f = f_series(beta, mu, 3);
            for (int j = 1; j <= 3; ++j) {
                double fd = fd_coefficient(MinimizerKind::F, beta, mu, j, 0.02);
                CHECK(std::abs(f[j] - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
    for (double beta : {1.5, 2.0, 3.0}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            PowerSeries g = g_series(beta, mu, 3);
            for (int j = 1; j <= 3; ++j) {
                double fd = fd_coefficient(MinimizerKind::G, beta, mu, j, 0.02);
                CHECK(std::abs(g[j] - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("theorem2_expansion branches") {
    // beta = 1: single linear term with the log slope
    double gamma = 1.0, b = 2.0;
    double mu = mu_from_decay(gamma, 1.0, b);
    CHECK(mu == doctest::Approx(1.0));
    AsymptoticExpansion e1 = theorem2_expansion(1.0, mu);
    CHECK(e1.kloglog == 0.0);
    REQUIRE(e1.terms.size() == 1);
    CHECK(e1.terms[0].exponent == 1.0);
    CHECK(e1.terms[0].coeff == doctest::Approx(-std::log(2.0)));

    // beta = 2: half-strength k ln k
    AsymptoticExpansion e2 = theorem2_expansion(2.0, 1.0);
    CHECK(e2.kloglog == doctest::Approx(-0.5));
    CHECK(e2.remainder == RemainderClass::LogK);
    // linear coefficient (beta - 1 - ln(mu beta)) / beta
    bool found_linear = false;
    for (const auto& t : e2.terms)
        if (t.exponent == 1.0) {
            CHECK(t.coeff == doctest::Approx((1.0 - std::log(2.0)) / 2.0));
            found_linear = true;
        }
    CHECK(found_linear);

    // beta = 1/2: half-open range keeps only the leading sqrt term
    AsymptoticExpansion eh = theorem2_expansion(0.5, 0.8);
    REQUIRE(eh.terms.size() == 1);
    CHECK(eh.terms[0].exponent == doctest::Approx(0.5));
    CHECK(eh.terms[0].coeff == doctest::Approx(-0.8));

    // exponents strictly decreasing in every branch
    for (const auto& e : {theorem2_expansion(0.7, 1.0), theorem2_expansion(1.5, 2.0)}) {
        for (std::size_t i = 1; i < e.terms.size(); ++i)
            CHECK(e.terms[i].exponent < e.terms[i - 1].exponent);
    }
}

TEST_CASE("lnL_prediction carries the main terms and a log band") {
    PredictionBand p = lnL_prediction(2.0, 1.0, 0.5, 0.7, 256.0);
    CHECK(p.main == doctest::Approx(theorem2_expansion(2.0, 1.0).evaluate(256.0)));
    CHECK(p.band == RemainderClass::LogK);

    // unit exponent: the normalized moment is an exact geometric sequence,
    // so the prediction residual is a constant
    double mu = 0.8;
    for (double k : {16.0, 64.0, 256.0}) {
        double exact = log_j_integral(1.0, mu, k).log_abs() - log_gamma(k + 1.0);
        double res = exact - lnL_prediction(1.0, mu, 1.0, 0.0, k).main;
        CHECK(res == doctest::Approx(-std::log1p(mu)).epsilon(1e-9));
    }
}

TEST_CASE("lnL_prediction: quadrature consistency, factor-2 stable bound") {
    // |ln(J/Gamma) - main terms| <= C ln k with C stable within a factor 2
    // as k doubles across 2^6..2^12
    for (double beta : {0.5, 2.0}) {
        for (double mu : {0.5, 2.0}) {
            double c_max = 0.0, c_min = 1e300;
            for (double k = 64.0; k <= 4096.0; k *= 2.0) {
                double exact = log_j_integral(beta, mu, k).log_abs() - log_gamma(k + 1.0);
                double res = exact - lnL_prediction(beta, mu, 1.0, 0.0, k).main;
                double c = std::max(std::abs(res), 1.0) / std::log(k);
                c_max = std::max(c_max, c);
                c_min = std::min(c_min, c);
            }
            CHECK(c_max <= 2.0 * c_min);
        }
    }
}

TEST_CASE("index shifts move the reference moment by delta ln k plus O(1)") {
    // the Gamma ratio carries the delta ln k shift exactly
    for (double delta : {-1.5, 0.7, 2.0}) {
        double lo = 1e300, hi = -1e300;
        for (double k = 64.0; k <= 4096.0; k *= 2.0) {
            double rem =
                log_gamma(k + delta + 1.0) - log_gamma(k + 1.0) - delta * std::log(k);
            lo = std::min(lo, rem);
            hi = std::max(hi, rem);
        }
        CHECK(hi - lo < 0.1);  // remainder settles over the window
    }

    // shifting the decaying moment integral stays within an O(ln k) band
    for (double delta : {-1.5, 2.0}) {
        for (double k = 64.0; k <= 4096.0; k *= 2.0) {
            double shift = log_j_integral(1.5, 1.0, k + delta).log_abs() -
                           log_j_integral(1.5, 1.0, k).log_abs();
            CHECK(std::abs(shift) < (std::abs(delta) + 1.0) * std::log(k));
        }
    }

    // the truncated-moment term is negligible against the full one
    double rho = 2.0;
    double prev = 0.0;
    for (double k : {64.0, 256.0, 1024.0}) {
        double gap = log_lower_incomplete(k, rho).log_abs() -
                     log_j_integral(1.5, 1.0, k).log_abs();
        if (prev != 0.0) CHECK(gap < prev);  // diverges to -infinity
        prev = gap;
    }
    CHECK(prev < -100.0);
}

TEST_CASE("disk_prediction") {
    // m = 0 reduces to e^{-rho} rho^{k+1} / (k k!)
    double rho = 2.0;
    for (double k : {80.0, 120.0}) {
        LogScalar pred = disk_prediction(0, rho, k);
        double want = -rho + (k + 1.0) * std::log(rho) - std::log(k) - log_gamma(k + 1.0);
        CHECK(pred.log_abs() == doctest::Approx(want).epsilon(1e-13));
    }

    // exact lowest-level disk eigenvalues approach the prediction
    for (double rho2 : {0.5, 2.0}) {
        for (double k : {80.0, 150.0}) {
            double exact = log_lower_incomplete(k, rho2).log_abs() - log_gamma(k + 1.0);
            double ratio = std::exp(exact - disk_prediction(0, rho2, k).log_abs());
            CHECK(ratio > 0.98);
            CHECK(ratio < 1.02);
        }
    }
}

TEST_CASE("theorem1 predictions") {
    AsymptoticExpansion t1 = theorem1_prediction();
    CHECK(t1.kloglog == -1.0);
    CHECK(t1.terms.empty());
    CHECK(t1.remainder == RemainderClass::K);

    double rho = 2.0;
    AsymptoticExpansion disk = theorem1_disk_prediction(rho);
    CHECK(disk.kloglog == -1.0);
    REQUIRE(disk.terms.size() == 1);
    CHECK(disk.terms[0].coeff == doctest::Approx(1.0 + std::log(rho)));
    CHECK(disk.remainder == RemainderClass::LogK);

    // the refined prediction is the expanded log of the disk law
    for (double k : {100.0, 1000.0, 10000.0}) {
        double lhs = disk_prediction(0, rho, k).log_abs();
        double rhs = disk.evaluate(k);
        CHECK(std::abs(lhs - rhs) < 4.0 * std::log(k));
    }
}

TEST_CASE("expansion json round trip") {
    AsymptoticExpansion e = theorem2_expansion(1.5, 2.0);
    nlohmann::json j = e.to_json();
    CHECK(j.at("remainder") == "O(log k)");
    AsymptoticExpansion back = AsymptoticExpansion::from_json(j);
    CHECK(back.kloglog == e.kloglog);
    REQUIRE(back.terms.size() == e.terms.size());
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        CHECK(back.terms[i].exponent == e.terms[i].exponent);
        CHECK(back.terms[i].coeff == e.terms[i].coeff);
    }
    CHECK(back.evaluate(64.0) == e.evaluate(64.0));
}
