#include "landau/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace landau {

PowerSeries PowerSeries::constant(double c0, int order) {
    PowerSeries s(order);
    s.c_[0] = c0;
    return s;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
    if (o.order() != order()) throw std::invalid_argument("PowerSeries: order mismatch");
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
    if (o.order() != order()) throw std::invalid_argument("PowerSeries: order mismatch");
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
}

PowerSeries operator*(double s, PowerSeries a) {
    for (auto& c : a.c_) c *= s;
    return a;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("PowerSeries: order mismatch");
    PowerSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        if (a.c_[i] == 0.0) continue;
        for (int j = 0; i + j <= a.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

PowerSeries PowerSeries::shifted(int n) const {
    PowerSeries r(order());
    for (int j = 0; j + n <= order(); ++j) r.c_[j + n] = c_[j];
    return r;
}

PowerSeries PowerSeries::log() const {
    if (!(c_[0] > 0.0)) throw std::domain_error("PowerSeries::log: constant term must be > 0");
    // d = log s:  n c_0 d_n = n s_n - sum_{j=1}^{n-1} j d_j s_{n-j}
    PowerSeries d(order());
    d.c_[0] = std::log(c_[0]);
    for (int n = 1; n <= order(); ++n) {
        double acc = n * c_[n];
        for (int j = 1; j < n; ++j) acc -= j * d.c_[j] * c_[n - j];
        d.c_[n] = acc / (n * c_[0]);
    }
    return d;
}

PowerSeries PowerSeries::exp() const {
    // e = exp s:  n e_n = sum_{j=1}^{n} j s_j e_{n-j}
    PowerSeries e(order());
    e.c_[0] = std::exp(c_[0]);
    for (int n = 1; n <= order(); ++n) {
        double acc = 0.0;
        for (int j = 1; j <= n; ++j) acc += j * c_[j] * e.c_[n - j];
        e.c_[n] = acc / n;
    }
    return e;
}

PowerSeries PowerSeries::pow(double a) const { return (a * log()).exp(); }

double PowerSeries::max_abs_diff(const PowerSeries& o) const {
    double m = 0.0;
    for (int j = 0; j <= order(); ++j) m = std::max(m, std::abs(c_[j] - o.c_[j]));
    return m;
}

}  // namespace landau
