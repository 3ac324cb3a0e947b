#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "landau/radial_symbol.hpp"
#include "landau/special_functions.hpp"

using namespace landau;

namespace {

// radial Laplacian f'' + f'/r by central differences
double laplacian_fd(const RadialSymbol& s, double r) {
    double h = 1e-4 * (1.0 + r);
    double f0 = s(r), fp = s(r + h), fm = s(r - h);
    double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    double d1 = (fp - fm) / (2.0 * h);
    return d2 + d1 / r;
}

bool close_on_grid(const RadialSymbol& a, const RadialSymbol& b, double tol) {
    for (int i = 0; i <= 100; ++i) {
        double r = 0.08 * i;
        double va = a(r), vb = b(r);
        if (std::abs(va - vb) > tol * (1.0 + std::abs(va) + std::abs(vb))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("laplacian: pinned term images") {
    CHECK(laplacian(RadialSymbol::constant(3.0)).is_zero());

    // e^{-r^2} -> 4(t-1)e^{-t}
    RadialSymbol g = RadialSymbol::gaussian(1.0, 1.0);
    RadialSymbol lg = laplacian(g);
    REQUIRE(lg.terms().size() == 2);
    CHECK(lg.terms()[0].coeff == -4.0);
    CHECK(lg.terms()[0].power == 0.0);
    CHECK(lg.terms()[1].coeff == 4.0);
    CHECK(lg.terms()[1].power == 1.0);
    CHECK(lg.terms()[1].decay_rate == 1.0);

    // r^2 -> 4
    RadialSymbol r2 = RadialSymbol::power(1.0, 1.0);
    RadialSymbol lr2 = laplacian(r2);
    REQUIRE(lr2.terms().size() == 1);
    CHECK(lr2.terms()[0].coeff == 4.0);
    CHECK(lr2.terms()[0].power == 0.0);

    RadialSymbol cut = g.restricted({Cutoff::Kind::Inside, 2.0});
    CHECK_THROWS_AS(laplacian(cut), std::invalid_argument);
}

TEST_CASE("laplacian: closure vs finite-difference oracle on random terms") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> cd(-2.0, 2.0), ad(0.0, 3.0), gd(0.1, 1.5),
        bd(0.3, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        double g1 = gd(rng), b1 = bd(rng), g2 = gd(rng), b2 = bd(rng);
        RadialSymbol s({{cd(rng), ad(rng), g1, b1}, {cd(rng), ad(rng), g2, b2}});
        RadialSymbol ls = laplacian(s);
        for (double r : {0.7, 1.3, 2.4}) {
            double want = laplacian_fd(s, r);
            CHECK(ls(r) == doctest::Approx(want).epsilon(1e-5));
        }
        // closure: every output term stays inside the input decay families
        for (const auto& t : ls.terms()) {
            bool in_family = (t.decay_rate == 0.0) ||
                             (t.decay_rate == g1 && t.decay_exponent == b1) ||
                             (t.decay_rate == g2 && t.decay_exponent == b2);
            CHECK(in_family);
        }
        AngularSymbol ds = dbar_squared(s);
        for (const auto& t : ds.radial.terms()) {
            bool in_family = (t.decay_rate == 0.0) ||
                             (t.decay_rate == g1 && t.decay_exponent == b1) ||
                             (t.decay_rate == g2 && t.decay_exponent == b2);
            CHECK(in_family);
        }
    }
}

TEST_CASE("dbar_squared") {
    CHECK(dbar_squared(RadialSymbol::constant(5.0)).is_zero());
    CHECK(dbar_squared(RadialSymbol::power(1.0, 1.0)).is_zero());  // second derivative of t

    AngularSymbol a = dbar_squared(RadialSymbol::gaussian(1.0, 1.0));
    CHECK(a.weight == 2);
    REQUIRE(a.radial.terms().size() == 1);
    CHECK(a.radial.terms()[0].coeff == 1.0);  // g'' = e^{-t}
    CHECK(a.radial.terms()[0].decay_rate == 1.0);
}

TEST_CASE("wq_transform: constants give twice the Landau level") {
    for (int q : {0, 1, 2, 3}) {
        for (double b : {0.5, 1.0, 2.0}) {
            double c = 0.7;
            ReducedSymbol red = wq_transform(HermitianSymbolMatrix::identity(c), q, b);
            CHECK_FALSE(red.has_coupling());
            REQUIRE(red.radial.terms().size() == 1);
            CHECK(red.radial.terms()[0].coeff ==
                  doctest::Approx(2.0 * b * (2.0 * q + 1.0) * c).epsilon(1e-14));
        }
    }
}

TEST_CASE("wq_transform: lowest level composes identity plus Laplacian") {
    double b = 1.7;
    HermitianSymbolMatrix omega;
    omega.e11 = RadialSymbol::gaussian(1.0, 1.0);
    omega.e22 = RadialSymbol::gaussian(9.0, 0.5);  // ignored at q = 0
    ReducedSymbol red = wq_transform(omega, 0, b);
    RadialSymbol want = 2.0 * b * omega.e11 + laplacian(omega.e11);
    CHECK(close_on_grid(red.radial, want, 1e-13));
}

TEST_CASE("wq_transform: radial input gives purely radial output") {
    HermitianSymbolMatrix omega;
    omega.e11 = RadialSymbol::gaussian(1.0, 2.0);
    omega.e22 = RadialSymbol::gaussian(0.5, 1.0);
    ReducedSymbol red = wq_transform(omega, 2, 1.0);
    CHECK_FALSE(red.has_coupling());

    omega.e12_re = RadialSymbol::gaussian(0.25, 1.0);
    ReducedSymbol red2 = wq_transform(omega, 2, 1.0);
    CHECK(red2.has_coupling());
    CHECK(red2.couple_im.is_zero());
}

TEST_CASE("wq_transform: linear in the matrix") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> cd(-1.0, 1.0), gd(0.3, 1.2);
    for (int q : {1, 3}) {
        HermitianSymbolMatrix o1, o2, sum;
        o1.e11 = RadialSymbol::gaussian(cd(rng), gd(rng));
        o1.e22 = RadialSymbol::gaussian(cd(rng), gd(rng));
        o1.e12_re = RadialSymbol::gaussian(cd(rng), gd(rng));
        o2.e11 = RadialSymbol::gaussian(cd(rng), gd(rng));
        o2.e22 = RadialSymbol::gaussian(cd(rng), gd(rng));
        o2.e12_re = RadialSymbol::gaussian(cd(rng), gd(rng));
        sum.e11 = o1.e11 + o2.e11;
        sum.e22 = o1.e22 + o2.e22;
        sum.e12_re = o1.e12_re + o2.e12_re;

        ReducedSymbol r1 = wq_transform(o1, q, 1.0);
        ReducedSymbol r2 = wq_transform(o2, q, 1.0);
        ReducedSymbol rs = wq_transform(sum, q, 1.0);
        CHECK(close_on_grid(rs.radial, r1.radial + r2.radial, 1e-12));
        CHECK(close_on_grid(rs.couple_re, r1.couple_re + r2.couple_re, 1e-12));
    }
}

TEST_CASE("metric_to_u: unitary conjugation images") {
    // identity maps to identity
    HermitianSymbolMatrix u = metric_to_u(HermitianSymbolMatrix::identity());
    CHECK(close_on_grid(u.e11, RadialSymbol::constant(1.0), 1e-15));
    CHECK(close_on_grid(u.e22, RadialSymbol::constant(1.0), 1e-15));
    CHECK(u.offdiagonal_zero());

    // diag(p, 0): all entries p/2
    RadialSymbol p = RadialSymbol::gaussian(0.8, 1.0);
    HermitianSymbolMatrix m = HermitianSymbolMatrix::diagonal(p, RadialSymbol::zero());
    u = metric_to_u(m);
    CHECK(close_on_grid(u.e11, 0.5 * p, 1e-15));
    CHECK(close_on_grid(u.e22, 0.5 * p, 1e-15));
    CHECK(close_on_grid(u.e12_re, 0.5 * p, 1e-15));
    CHECK(u.e12_im.is_zero());

    // pure imaginary off-diagonal: m12 = i s
    RadialSymbol s = RadialSymbol::gaussian(-0.3, 1.0);
    HermitianSymbolMatrix mi;
    mi.e12_im = s;
    u = metric_to_u(mi);
    CHECK(close_on_grid(u.e11, -1.0 * s, 1e-15));
    CHECK(close_on_grid(u.e22, s, 1e-15));
    CHECK(u.offdiagonal_zero());
}

TEST_CASE("metric_to_u: trace is preserved coefficientwise") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> cd(-1.0, 1.0), gd(0.2, 1.4);
    for (int trial = 0; trial < 10; ++trial) {
        HermitianSymbolMatrix m;
        m.e11 = RadialSymbol::gaussian(cd(rng), gd(rng));
        m.e22 = RadialSymbol::gaussian(cd(rng), gd(rng));
        m.e12_re = RadialSymbol::gaussian(cd(rng), gd(rng));
        m.e12_im = RadialSymbol::gaussian(cd(rng), gd(rng));
        HermitianSymbolMatrix u = metric_to_u(m);
        RadialSymbol tr_m = m.e11 + m.e22;
        RadialSymbol tr_u = u.e11 + u.e22;
        CHECK(tr_m.to_json() == tr_u.to_json());
    }
}

TEST_CASE("tq_symbol") {
    for (int q : {0, 2}) {
        RadialSymbol t = tq_symbol(HermitianSymbolMatrix::identity(), q, 1.0);
        REQUIRE(t.terms().size() == 1);
        CHECK(t.terms()[0].coeff == doctest::Approx(2.0 * q + 1.0));
    }

    // scaling is linear
    RadialSymbol p = RadialSymbol::gaussian(0.5, 1.0);
    RadialSymbol t1 = tq_symbol(HermitianSymbolMatrix::scalar(p), 1, 2.0);
    RadialSymbol t3 = tq_symbol(HermitianSymbolMatrix::scalar(3.0 * p), 1, 2.0);
    CHECK(close_on_grid(3.0 * t1, t3, 1e-14));

    // non-PSD rejected: zero diagonal with nonzero imaginary coupling
    HermitianSymbolMatrix bad;
    bad.e12_im = RadialSymbol::gaussian(-0.4, 1.0);
    CHECK_THROWS_AS(tq_symbol(bad, 0, 1.0), std::invalid_argument);

    // positivity on random PSD inputs
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> cd(0.1, 1.0), gd(0.3, 1.0), rd(0.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        double c11 = cd(rng), c22 = cd(rng);
        double c12 = std::sqrt(c11 * c22) * 0.9;
        HermitianSymbolMatrix m;
        double g = gd(rng);
        m.e11 = RadialSymbol::gaussian(c11, g);
        m.e22 = RadialSymbol::gaussian(c22, g);
        m.e12_im = RadialSymbol::gaussian(-c12, g);  // negative keeps the symbol positive
        RadialSymbol t = tq_symbol(m, trial % 3, 1.0);
        for (int i = 0; i < 5; ++i) CHECK(t(rd(rng)) >= -1e-12);
    }
}

TEST_CASE("pointwise_eigen_bounds") {
    HermitianSymbolMatrix d = HermitianSymbolMatrix::diagonal(RadialSymbol::constant(2.0),
                                                              RadialSymbol::constant(5.0));
    auto [lo, hi] = pointwise_eigen_bounds(d, 1.0);
    CHECK(lo == doctest::Approx(2.0));
    CHECK(hi == doctest::Approx(5.0));

    // equal diagonal p with real coupling s: p -+ |s|
    HermitianSymbolMatrix m;
    m.e11 = RadialSymbol::constant(1.0);
    m.e22 = RadialSymbol::constant(1.0);
    m.e12_re = RadialSymbol::constant(-0.25);
    auto [l2, h2] = pointwise_eigen_bounds(m, 0.3);
    CHECK(l2 == doctest::Approx(0.75));
    CHECK(h2 == doctest::Approx(1.25));

    // PSD implies nonnegative smaller eigenvalue
    HermitianSymbolMatrix psd;
    psd.e11 = RadialSymbol::gaussian(1.0, 1.0);
    psd.e22 = RadialSymbol::gaussian(1.0, 1.0);
    psd.e12_re = RadialSymbol::gaussian(0.8, 1.0);
    for (double r : {0.0, 1.0, 2.5}) CHECK(pointwise_eigen_bounds(psd, r).first >= -1e-14);
}

TEST_CASE("build_envelopes") {
    double gamma = 0.7, beta = 0.8, r = 3.0;
    auto [lower, upper] = build_envelopes(gamma, beta, -1.0, 2.0, r);

    // ordering at 2r and on a far grid
    for (double rr : {2.0 * r, 3.0 * r, 8.0 * r}) CHECK(lower(rr) <= upper(rr));

    // equal exponents degenerate to the same profile outside the annulus
    auto [lo0, hi0] = build_envelopes(gamma, beta, 0.0, 0.0, r);
    for (double rr : {r + 1.5, 2.0 * r, 4.0 * r}) {
        double profile = std::exp(-gamma * std::pow(rr * rr, beta));
        CHECK(lo0(rr) == doctest::Approx(profile).epsilon(1e-13));
        CHECK(hi0(rr) == doctest::Approx(profile).epsilon(1e-13));
    }
    // inside the inner ball the lower envelope vanishes and the cap holds
    CHECK(lo0(r) == 0.0);
    CHECK(hi0(0.5) == doctest::Approx(1.0));

    // envelope sandwich on a matching-decay profile
    RadialSymbol target = RadialSymbol::gaussian(1.0, gamma, beta);
    auto [lo1, hi1] = build_envelopes(gamma, beta, -0.5, 0.0, r);
    for (double rr = r + 1.0; rr < 20.0; rr += 0.5) CHECK(lo1(rr) <= target(rr) * (1 + 1e-12));
}

TEST_CASE("eta3_prefactor branches") {
    CHECK(eta3_prefactor(1, 0.25, 0.9, 1.0) == doctest::Approx(6.0));  // 2 * Lambda_1
    double gamma = 1.3;
    CHECK(eta3_prefactor(0, 1.0, gamma, 1.0) == doctest::Approx(4.0 * gamma * gamma));

    // boundary branch evaluates the printed formula as-is
    double b = 2.0, g = 0.8;
    double arg = -(2.0 * 0.5 * g) * (2.0 * 0.5 * g) / (2.0 * b);
    double want = 2.0 * b * (2.0 * laguerre(2, 0, arg) + 1.0 * laguerre(0, 0, arg));
    CHECK(eta3_prefactor(1, 0.5, g, b) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("transformed envelope tail matches the prefactor model") {
    // the level-q transform of e^{-gamma r^{2 beta}} approaches
    // C r^{2(q+1)(2 beta - 1)} e^{-gamma r^{2 beta}} for beta > 1/2 and
    // C e^{-gamma r^{2 beta}} for beta < 1/2.  All transform terms share the
    // decay family, so the ratio is a pure power sum; the common exponential
    // cancels analytically (it underflows at these radii).
    for (int q : {0, 1, 2}) {
        for (double beta : {0.3, 1.0, 2.0}) {
            double gamma = 0.7, b = 1.0;
            HermitianSymbolMatrix omega =
                HermitianSymbolMatrix::scalar(RadialSymbol::gaussian(1.0, gamma, beta));
            RadialSymbol eta2 = wq_transform(omega, q, b).radial;
            double c = eta3_prefactor(q, beta, gamma, b);
            double model_power = beta > 0.5 ? (q + 1) * (2.0 * beta - 1.0) : 0.0;
            auto ratio_dev = [&](double t) {
                double sum = 0.0;
                for (const auto& term : eta2.terms()) {
                    CHECK(term.decay_rate == doctest::Approx(gamma));
                    sum += term.coeff * std::pow(t, term.power - model_power);
                }
                return std::abs(sum / c - 1.0);
            };
            double t1 = 100.0, t2 = 3000.0;
            double dev1 = ratio_dev(t1), dev2 = ratio_dev(t2);
            CHECK(dev2 <= dev1 + 1e-14);
            CHECK(dev2 < 0.05);
        }
    }
}

TEST_CASE("products close within a decay family") {
    RadialSymbol a = RadialSymbol::gaussian(2.0, 0.5, 1.0) + RadialSymbol::power(1.0, 1.0);
    RadialSymbol b = RadialSymbol::gaussian(-0.5, 1.5, 1.0);
    RadialSymbol prod = a * b;
    for (double r : {0.0, 0.8, 2.1}) CHECK(prod(r) == doctest::Approx(a(r) * b(r)));
    for (const auto& t : prod.terms()) CHECK(t.decay_exponent == 1.0);

    // mixed exponent families are not representable
    RadialSymbol c = RadialSymbol::gaussian(1.0, 1.0, 2.0);
    CHECK_THROWS_AS(a * c, std::invalid_argument);
    // but a pure power factor multiplies into any family
    RadialSymbol p = RadialSymbol::power(3.0, 0.5);
    RadialSymbol pc = p * c;
    CHECK(pc(1.3) == doctest::Approx(p(1.3) * c(1.3)));

    // differentiated sub-Gaussian symbols carry negative powers (smooth
    // away from the origin); products of those stay legal
    RadialSymbol d = laplacian(RadialSymbol::gaussian(1.0, 1.0, 0.5));
    RadialSymbol dd = d * d;
    CHECK(dd(1.7) == doctest::Approx(d(1.7) * d(1.7)));
}

TEST_CASE("symbol json round trip") {
    RadialSymbol s({{1.5, 2.0, 0.7, 1.0}, {-0.25, 0.0, 0.4, 2.0}});
    RadialSymbol back = RadialSymbol::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());
    CHECK(close_on_grid(s, back, 1e-15));

    RadialSymbol cut = RadialSymbol({{2.0, -0.5, 0.0, 1.0}}, {Cutoff::Kind::Outside, 3.0});
    RadialSymbol back2 = RadialSymbol::from_json(cut.to_json());
    CHECK(back2.to_json() == cut.to_json());
    CHECK(back2(2.0) == 0.0);
    CHECK(back2(4.0) == doctest::Approx(2.0 * std::pow(16.0, -0.5)));

    CHECK_THROWS(RadialSymbol::from_json(
        nlohmann::json{{"terms", {{{"c", 1.0}, {"a", -1.0}, {"gamma", 0.0}, {"beta", 1.0}}}},
                       {"cutoff", {{"kind", "none"}}}}));
}
