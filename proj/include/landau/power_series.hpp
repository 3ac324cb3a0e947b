#ifndef LANDAU_POWER_SERIES_HPP
#define LANDAU_POWER_SERIES_HPP

#include <vector>

namespace landau {

/// Truncated formal power series sum c_j eps^j, j = 0..order.  Arithmetic is
/// exact at the truncation order; log/pow need a positive constant term.
class PowerSeries {
public:
    explicit PowerSeries(int order) : c_(order + 1, 0.0) {}
    static PowerSeries constant(double c0, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double operator[](int j) const { return c_[j]; }
    double& at(int j) { return c_[j]; }

    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries& operator-=(const PowerSeries& o);
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(double s, PowerSeries a);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

    /// multiply by eps^n
    PowerSeries shifted(int n) const;

    PowerSeries log() const;
    PowerSeries exp() const;
    PowerSeries pow(double a) const;

    double max_abs_diff(const PowerSeries& o) const;

private:
    std::vector<double> c_;
};

}  // namespace landau

#endif
