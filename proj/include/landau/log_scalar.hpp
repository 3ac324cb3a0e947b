#ifndef LANDAU_LOG_SCALAR_HPP
#define LANDAU_LOG_SCALAR_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace landau {

/// Signed real carried as (sign, ln|value|).
///
/// Eigenvalues of the operators in this library decay like rho^k / k! and
/// underflow double precision near k ~ 150, so every eigenvalue-scale
/// quantity travels through this type.  Plain doubles are used only for
/// symbol values and polynomial evaluations.
class LogScalar {
public:
    LogScalar() = default;

    static LogScalar zero() { return LogScalar{}; }

    static LogScalar from_log(int sign, double log_abs) {
        LogScalar r;
        r.sign_ = (sign > 0) - (sign < 0);
        r.log_abs_ = (r.sign_ == 0) ? -inf() : log_abs;
        return r;
    }

    static LogScalar from_value(double v) {
        if (v == 0.0) return zero();
        return from_log(v > 0 ? 1 : -1, std::log(std::abs(v)));
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    /// ln|value|; -inf when zero.
    double log_abs() const { return sign_ == 0 ? -inf() : log_abs_; }

    /// Back to a plain double.  Over/underflows to +-inf / 0 as usual.
    double value() const {
        if (sign_ == 0) return 0.0;
        return sign_ * std::exp(log_abs_);
    }

    LogScalar operator-() const {
        LogScalar r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend LogScalar operator*(const LogScalar& a, const LogScalar& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return zero();
        return from_log(a.sign_ * b.sign_, a.log_abs_ + b.log_abs_);
    }

    friend LogScalar operator/(const LogScalar& a, const LogScalar& b) {
        if (b.sign_ == 0) throw std::domain_error("LogScalar: division by zero");
        if (a.sign_ == 0) return zero();
        return from_log(a.sign_ * b.sign_, a.log_abs_ - b.log_abs_);
    }

    friend LogScalar operator+(const LogScalar& a, const LogScalar& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        const LogScalar& hi = (a.log_abs_ >= b.log_abs_) ? a : b;
        const LogScalar& lo = (a.log_abs_ >= b.log_abs_) ? b : a;
        const double d = lo.log_abs_ - hi.log_abs_;  // <= 0
        if (a.sign_ == b.sign_)
            return from_log(a.sign_, hi.log_abs_ + std::log1p(std::exp(d)));
        if (d == 0.0) return zero();
        return from_log(hi.sign_, hi.log_abs_ + std::log1p(-std::exp(d)));
    }

    friend LogScalar operator-(const LogScalar& a, const LogScalar& b) { return a + (-b); }

    /// value^e; requires a nonnegative base unless e is integral.
    LogScalar pow(double e) const {
        if (sign_ == 0) return e == 0.0 ? from_value(1.0) : zero();
        if (sign_ < 0) {
            double ip;
            if (std::modf(e, &ip) != 0.0)
                throw std::domain_error("LogScalar: fractional power of negative value");
            int s = (std::fmod(ip, 2.0) == 0.0) ? 1 : -1;
            return from_log(s, log_abs_ * e);
        }
        return from_log(1, log_abs_ * e);
    }

    // Ordering by signed magnitude.
    friend bool operator<(const LogScalar& a, const LogScalar& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        if (a.sign_ == 0) return false;
        return a.sign_ > 0 ? a.log_abs_ < b.log_abs_ : a.log_abs_ > b.log_abs_;
    }
    friend bool operator>(const LogScalar& a, const LogScalar& b) { return b < a; }
    friend bool operator<=(const LogScalar& a, const LogScalar& b) { return !(b < a); }
    friend bool operator>=(const LogScalar& a, const LogScalar& b) { return !(a < b); }
    friend bool operator==(const LogScalar& a, const LogScalar& b) {
        return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_abs_ == b.log_abs_);
    }

private:
    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
    int sign_ = 0;
    double log_abs_ = -std::numeric_limits<double>::infinity();
};

}  // namespace landau

#endif
