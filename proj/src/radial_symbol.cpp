#include "landau/radial_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

#include "landau/special_functions.hpp"

namespace landau {

double RadialTerm::value_at_t(double t) const {
    if (coeff == 0.0) return 0.0;
    double v = coeff;
    if (power != 0.0) v *= std::pow(t, power);
    if (decay_rate != 0.0) v *= std::exp(-decay_rate * std::pow(t, decay_exponent));
    return v;
}

bool Cutoff::contains_r(double r) const {
    switch (kind) {
        case Kind::None: return true;
        case Kind::Inside: return r <= radius;
        case Kind::Outside: return r >= radius;
    }
    return true;
}

RadialSymbol::RadialSymbol(std::vector<RadialTerm> terms, Cutoff cutoff) {
    for (const auto& t : terms) {
        if (!(t.decay_exponent > 0.0))
            throw std::invalid_argument("RadialSymbol: decay exponent must be > 0");
        if (t.decay_rate < 0.0)
            throw std::invalid_argument("RadialSymbol: decay rate must be >= 0");
        if (t.power < 0.0 && cutoff.kind != Cutoff::Kind::Outside)
            throw std::invalid_argument(
                "RadialSymbol: negative powers need an outside cutoff (singular at 0)");
    }
    if (!terms.empty()) pieces_.push_back({std::move(terms), cutoff});
    compress();
}

RadialSymbol RadialSymbol::constant(double c) {
    return RadialSymbol({{c, 0.0, 0.0, 1.0}});
}

RadialSymbol RadialSymbol::gaussian(double c, double gamma, double beta) {
    return RadialSymbol({{c, 0.0, gamma, beta}});
}

RadialSymbol RadialSymbol::power(double c, double a) {
    return RadialSymbol({{c, a, 0.0, 1.0}});
}

bool RadialSymbol::is_zero() const {
    for (const auto& p : pieces_)
        for (const auto& t : p.terms)
            if (t.coeff != 0.0) return false;
    return true;
}

bool RadialSymbol::cutoff_free() const {
    for (const auto& p : pieces_)
        if (p.cutoff.kind != Cutoff::Kind::None) return false;
    return true;
}

const std::vector<RadialTerm>& RadialSymbol::terms() const {
    static const std::vector<RadialTerm> empty;
    if (pieces_.empty()) return empty;
    if (pieces_.size() != 1 || !cutoff_free())
        throw std::logic_error("RadialSymbol::terms: symbol carries cutoffs");
    return pieces_.front().terms;
}

double RadialSymbol::operator()(double r) const {
    double sum = 0.0;
    for (const auto& p : pieces_) {
        if (!p.cutoff.contains_r(r)) continue;
        double t = r * r;
        for (const auto& term : p.terms) sum += term.value_at_t(t);
    }
    return sum;
}

double RadialSymbol::value_at_t(double t) const { return (*this)(std::sqrt(t)); }

RadialSymbol& RadialSymbol::operator+=(const RadialSymbol& o) {
    pieces_.insert(pieces_.end(), o.pieces_.begin(), o.pieces_.end());
    compress();
    return *this;
}

RadialSymbol operator*(double c, RadialSymbol s) {
    for (auto& p : s.pieces_)
        for (auto& t : p.terms) t.coeff *= c;
    s.compress();
    return s;
}

RadialSymbol operator*(const RadialSymbol& a, const RadialSymbol& b) {
    if (!a.cutoff_free() || !b.cutoff_free())
        throw std::invalid_argument("RadialSymbol product: cutoff symbols rejected");
    std::vector<RadialTerm> terms;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            double rate, expo;
            if (ta.decay_rate == 0.0) {
                rate = tb.decay_rate;
                expo = tb.decay_exponent;
            } else if (tb.decay_rate == 0.0 || ta.decay_exponent == tb.decay_exponent) {
                rate = ta.decay_rate + tb.decay_rate;
                expo = ta.decay_exponent;
            } else {
                throw std::invalid_argument(
                    "RadialSymbol product: mixed decay-exponent families are not closed");
            }
            terms.push_back({ta.coeff * tb.coeff, ta.power + tb.power, rate, expo});
        }
    }
    // factors may carry negative powers from differentiation (smooth on
    // r > 0), so bypass the at-origin finiteness validation
    RadialSymbol out;
    out.pieces_.push_back({std::move(terms), Cutoff{}});
    out.compress();
    return out;
}

RadialSymbol RadialSymbol::restricted(Cutoff c) const {
    if (!cutoff_free())
        throw std::logic_error("RadialSymbol::restricted: symbol already has a cutoff");
    RadialSymbol r;
    for (const auto& p : pieces_) r.pieces_.push_back({p.terms, c});
    return r;
}

RadialSymbol RadialSymbol::derivative_t() const {
    if (!cutoff_free())
        throw std::invalid_argument("RadialSymbol: differential ops reject cutoff symbols");
    RadialSymbol out;
    std::vector<RadialTerm> terms;
    for (const auto& p : pieces_) {
        for (const auto& t : p.terms) {
            if (t.power != 0.0)
                terms.push_back({t.coeff * t.power, t.power - 1.0, t.decay_rate, t.decay_exponent});
            if (t.decay_rate != 0.0)
                terms.push_back({-t.coeff * t.decay_rate * t.decay_exponent,
                                 t.power + t.decay_exponent - 1.0, t.decay_rate,
                                 t.decay_exponent});
        }
    }
    out.pieces_.push_back({std::move(terms), Cutoff{}});
    out.compress();
    return out;
}

RadialSymbol RadialSymbol::shifted_power(double da) const {
    RadialSymbol out = *this;
    for (auto& p : out.pieces_)
        for (auto& t : p.terms) t.power += da;
    return out;
}

void RadialSymbol::compress() {
    // merge pieces with identical cutoffs, then terms with identical keys
    std::map<std::tuple<int, double>, std::map<std::tuple<double, double, double>, double>> acc;
    for (const auto& p : pieces_) {
        auto& bucket = acc[{static_cast<int>(p.cutoff.kind),
                            p.cutoff.kind == Cutoff::Kind::None ? 0.0 : p.cutoff.radius}];
        for (const auto& t : p.terms)
            bucket[{t.power, t.decay_rate, t.decay_exponent}] += t.coeff;
    }
    pieces_.clear();
    for (const auto& [key, bucket] : acc) {
        RadialPiece piece;
        piece.cutoff.kind = static_cast<Cutoff::Kind>(std::get<0>(key));
        piece.cutoff.radius = std::get<1>(key);
        for (const auto& [tk, c] : bucket) {
            if (c == 0.0) continue;
            piece.terms.push_back({c, std::get<0>(tk), std::get<1>(tk), std::get<2>(tk)});
        }
        if (!piece.terms.empty()) pieces_.push_back(std::move(piece));
    }
}

namespace {

nlohmann::json cutoff_to_json(const Cutoff& c) {
    switch (c.kind) {
        case Cutoff::Kind::Inside: return {{"kind", "inside"}, {"radius", c.radius}};
        case Cutoff::Kind::Outside: return {{"kind", "outside"}, {"radius", c.radius}};
        default: return {{"kind", "none"}};
    }
}

Cutoff cutoff_from_json(const nlohmann::json& j) {
    Cutoff c;
    std::string kind = j.value("kind", "none");
    if (kind == "none") return c;
    c.radius = j.at("radius").get<double>();
    if (kind == "inside") c.kind = Cutoff::Kind::Inside;
    else if (kind == "outside") c.kind = Cutoff::Kind::Outside;
    else throw std::invalid_argument("cutoff kind must be none|inside|outside");
    return c;
}

nlohmann::json piece_to_json(const RadialPiece& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : p.terms)
        terms.push_back({{"c", t.coeff},
                         {"a", t.power},
                         {"gamma", t.decay_rate},
                         {"beta", t.decay_exponent}});
    return {{"terms", terms}, {"cutoff", cutoff_to_json(p.cutoff)}};
}

RadialPiece piece_from_json(const nlohmann::json& j) {
    RadialPiece p;
    for (const auto& tj : j.at("terms"))
        p.terms.push_back({tj.at("c").get<double>(), tj.at("a").get<double>(),
                           tj.value("gamma", 0.0), tj.value("beta", 1.0)});
    if (j.contains("cutoff")) p.cutoff = cutoff_from_json(j.at("cutoff"));
    return p;
}

}  // namespace

nlohmann::json RadialSymbol::to_json() const {
    if (pieces_.empty()) return {{"terms", nlohmann::json::array()}, {"cutoff", {{"kind", "none"}}}};
    if (pieces_.size() == 1) return piece_to_json(pieces_.front());
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pieces_) arr.push_back(piece_to_json(p));
    return {{"pieces", arr}};
}

RadialSymbol RadialSymbol::from_json(const nlohmann::json& j) {
    RadialSymbol s;
    if (j.contains("pieces")) {
        for (const auto& pj : j.at("pieces")) s.pieces_.push_back(piece_from_json(pj));
    } else {
        s.pieces_.push_back(piece_from_json(j));
    }
    for (const auto& p : s.pieces_)
        for (const auto& t : p.terms) {
            if (!(t.decay_exponent > 0.0))
                throw std::invalid_argument("symbol json: beta must be > 0");
            if (t.decay_rate < 0.0)
                throw std::invalid_argument("symbol json: gamma must be >= 0");
            if (t.power < 0.0 && p.cutoff.kind != Cutoff::Kind::Outside)
                throw std::invalid_argument("symbol json: negative a needs an outside cutoff");
        }
    s.compress();
    return s;
}

HermitianSymbolMatrix HermitianSymbolMatrix::identity(double scale) {
    HermitianSymbolMatrix m;
    m.e11 = RadialSymbol::constant(scale);
    m.e22 = RadialSymbol::constant(scale);
    return m;
}

HermitianSymbolMatrix HermitianSymbolMatrix::scalar(const RadialSymbol& p) {
    HermitianSymbolMatrix m;
    m.e11 = p;
    m.e22 = p;
    return m;
}

HermitianSymbolMatrix HermitianSymbolMatrix::diagonal(const RadialSymbol& d1,
                                                      const RadialSymbol& d2) {
    HermitianSymbolMatrix m;
    m.e11 = d1;
    m.e22 = d2;
    return m;
}

nlohmann::json HermitianSymbolMatrix::to_json() const {
    return {{"m11", e11.to_json()},
            {"m22", e22.to_json()},
            {"m12_re", e12_re.to_json()},
            {"m12_im", e12_im.to_json()}};
}

HermitianSymbolMatrix HermitianSymbolMatrix::from_json(const nlohmann::json& j) {
    HermitianSymbolMatrix m;
    m.e11 = RadialSymbol::from_json(j.at("m11"));
    m.e22 = RadialSymbol::from_json(j.at("m22"));
    if (j.contains("m12_re")) m.e12_re = RadialSymbol::from_json(j.at("m12_re"));
    if (j.contains("m12_im")) m.e12_im = RadialSymbol::from_json(j.at("m12_im"));
    return m;
}

RadialSymbol laplacian(const RadialSymbol& s) {
    if (!s.cutoff_free())
        throw std::invalid_argument("laplacian: cutoff symbols rejected (not smooth)");
    RadialSymbol d1 = s.derivative_t();
    RadialSymbol d2 = d1.derivative_t();
    return 4.0 * (d2.shifted_power(1.0) + d1);
}

AngularSymbol laplacian(const AngularSymbol& s) {
    RadialSymbol d1 = s.radial.derivative_t();
    RadialSymbol d2 = d1.derivative_t();
    double w1 = std::abs(s.weight) + 1.0;
    return {s.weight, 4.0 * (d2.shifted_power(1.0) + w1 * d1)};
}

AngularSymbol dbar_squared(const RadialSymbol& s) {
    if (!s.cutoff_free())
        throw std::invalid_argument("dbar_squared: cutoff symbols rejected (not smooth)");
    return {2, s.derivative_t().derivative_t()};
}

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0));
}

template <typename Sym, typename Lap>
Sym laguerre_applied_impl(const Sym& s, int degree, int superscript, double b, Lap lap) {
    // L_deg^{(sup)}(-Lap/2b) = sum_j binom(deg+sup, deg-j) Lap^j / (j! (2b)^j)
    Sym out = binom(degree + superscript, degree) * s;  // j = 0
    Sym power = s;
    double scale = 1.0;
    for (int j = 1; j <= degree; ++j) {
        power = lap(power);
        scale /= (j * 2.0 * b);
        out += (binom(degree + superscript, degree - j) * scale) * power;
    }
    return out;
}

AngularSymbol scale_ang(double c, const AngularSymbol& a) { return {a.weight, c * a.radial}; }

}  // namespace

RadialSymbol laguerre_applied(const RadialSymbol& s, int degree, int superscript, double b) {
    if (degree < 0) return RadialSymbol::zero();
    return laguerre_applied_impl(s, degree, superscript, b,
                                 [](const RadialSymbol& x) { return laplacian(x); });
}

AngularSymbol laguerre_applied(const AngularSymbol& s, int degree, int superscript, double b) {
    if (degree < 0) return {s.weight, RadialSymbol::zero()};
    // weight is invariant under the Laplacian, so apply on the radial parts
    AngularSymbol out = scale_ang(binom(degree + superscript, degree), s);
    AngularSymbol power = s;
    double scale = 1.0;
    for (int j = 1; j <= degree; ++j) {
        power = laplacian(power);
        scale /= (j * 2.0 * b);
        out.radial += (binom(degree + superscript, degree - j) * scale) * power.radial;
    }
    return out;
}

ReducedSymbol wq_transform(const HermitianSymbolMatrix& omega, int q, double b) {
    if (q < 0) throw std::invalid_argument("wq_transform: q must be >= 0");
    if (!(b > 0.0)) throw std::invalid_argument("wq_transform: b must be > 0");
    if (!omega.e11.cutoff_free() || !omega.e22.cutoff_free() || !omega.e12_re.cutoff_free() ||
        !omega.e12_im.cutoff_free())
        throw std::invalid_argument("wq_transform: cutoff entries rejected");

    ReducedSymbol out;
    if (q == 0) {
        out.radial = (2.0 * b) * laguerre_applied(omega.e11, 1, 0, b);
        return out;
    }
    out.radial = (2.0 * b * (q + 1)) * laguerre_applied(omega.e11, q + 1, 0, b) +
                 (2.0 * b * q) * laguerre_applied(omega.e22, q - 1, 0, b);
    if (!omega.offdiagonal_zero()) {
        AngularSymbol dre = dbar_squared(omega.e12_re);
        AngularSymbol dim = dbar_squared(omega.e12_im);
        out.couple_re = -8.0 * laguerre_applied(dre, q - 1, 2, b).radial;
        out.couple_im = -8.0 * laguerre_applied(dim, q - 1, 2, b).radial;
    }
    return out;
}

HermitianSymbolMatrix metric_to_u(const HermitianSymbolMatrix& m) {
    HermitianSymbolMatrix u;
    RadialSymbol tr = m.e11 + m.e22;
    u.e11 = 0.5 * tr - m.e12_im;
    u.e22 = 0.5 * tr + m.e12_im;
    u.e12_re = 0.5 * (m.e11 - m.e22);
    u.e12_im = -1.0 * m.e12_re;
    return u;
}

namespace {

// crude sup over radii; enough for PSD sanity checks on decaying profiles
bool psd_on_grid(const HermitianSymbolMatrix& m, double tol) {
    for (int i = 0; i <= 400; ++i) {
        double r = 0.05 * i;
        double a = m.e11(r), d = m.e22(r);
        double re = m.e12_re(r), im = m.e12_im(r);
        if (a < -tol || d < -tol) return false;
        if (a * d - (re * re + im * im) < -tol * (1.0 + a * d)) return false;
    }
    return true;
}

}  // namespace

RadialSymbol tq_symbol(const HermitianSymbolMatrix& m, int q, double b) {
    if (q < 0 || !(b > 0.0)) throw std::invalid_argument("tq_symbol: bad q or b");
    if (!psd_on_grid(m, 1e-10))
        throw std::invalid_argument("tq_symbol: metric must be pointwise PSD");
    double lambda_q = b * (2.0 * q + 1.0);
    return (0.5 * lambda_q) * (m.e11 + m.e22) - b * m.e12_im;
}

std::pair<double, double> pointwise_eigen_bounds(const HermitianSymbolMatrix& m, double r) {
    double a = m.e11(r), d = m.e22(r);
    double re = m.e12_re(r), im = m.e12_im(r);
    double mean = 0.5 * (a + d);
    double disc = std::sqrt(0.25 * (a - d) * (a - d) + re * re + im * im);
    return {mean - disc, mean + disc};
}

std::pair<RadialSymbol, RadialSymbol> build_envelopes(double gamma, double beta,
                                                      double delta_lo, double delta_hi,
                                                      double r) {
    if (!(gamma > 0.0) || !(beta > 0.0)) throw std::invalid_argument("build_envelopes: gamma, beta > 0");
    if (delta_lo > delta_hi) throw std::invalid_argument("build_envelopes: delta_lo <= delta_hi");
    if (!(r > 1.0)) throw std::invalid_argument("build_envelopes: r > 1");

    RadialTerm lo_term{1.0, delta_lo / 2.0, gamma, beta};
    RadialSymbol lower({lo_term}, Cutoff{Cutoff::Kind::Outside, r + 1.0});

    RadialTerm hi_term{1.0, delta_hi / 2.0, gamma, beta};
    RadialSymbol tail({hi_term}, Cutoff{Cutoff::Kind::Outside, r - 1.0});

    // constant cap inside the transition ball: sup of the profile there
    double cap;
    if (delta_hi > 0.0) {
        cap = 0.0;
        for (int i = 1; i <= 2000; ++i) {
            double rr = (r - 1.0) * i / 2000.0;
            cap = std::max(cap, hi_term.value_at_t(rr * rr));
        }
    } else if (delta_hi == 0.0) {
        cap = 1.0;  // sup at the origin
    } else {
        // singular at the origin: cap at the profile value on the inner rim
        cap = hi_term.value_at_t((r - 1.0) * (r - 1.0));
    }
    RadialSymbol capped({{cap, 0.0, 0.0, 1.0}}, Cutoff{Cutoff::Kind::Inside, r - 1.0});
    return {lower, tail + capped};
}

double eta3_prefactor(int q, double beta, double gamma, double b) {
    if (q < 0 || !(beta > 0.0) || !(gamma > 0.0) || !(b > 0.0))
        throw std::invalid_argument("eta3_prefactor: bad arguments");
    if (beta < 0.5) return 2.0 * b * (2.0 * q + 1.0);
    double arg = -(2.0 * beta * gamma) * (2.0 * beta * gamma) / (2.0 * b);
    if (beta == 0.5) {
        double v = (q + 1.0) * laguerre(q + 1, 0, arg);
        if (q >= 1) v += q * laguerre(q - 1, 0, arg);
        return 2.0 * b * v;
    }
    return std::pow(2.0 * beta * gamma, 2.0 * (q + 1)) /
           (std::pow(2.0 * b, q) * std::exp(log_gamma(q + 1.0)));
}

}  // namespace landau
