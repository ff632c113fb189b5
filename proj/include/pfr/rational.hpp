#ifndef PFR_RATIONAL_HPP
#define PFR_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pfr {

/// Exact rational number extended with +infinity.
///
/// All storage/bandwidth quantities (alpha, alpha1, beta, gamma, M) and every
/// cut capacity are represented this way so that threshold comparisons are
/// exact. +infinity absorbs addition and dominates every finite value;
/// operations that would need -infinity or inf/inf throw.
class Rational {
public:
    Rational() : num_(0), den_(1), inf_(false) {}
    Rational(int64_t n) : num_(n), den_(1), inf_(false) {}
    Rational(int64_t n, int64_t d);

    static Rational infinity();
    /// Parses "p/q", an integer, or a decimal string ("0.25" -> 1/4, exact).
    static Rational parse(const std::string& text);

    bool is_infinite() const { return inf_; }
    bool is_zero() const { return !inf_ && num_ == 0; }
    bool is_negative() const { return !inf_ && num_ < 0; }
    int64_t num() const;
    int64_t den() const;

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const;
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    /// "p/q" (plain integer when q == 1), or "inf".
    std::string str() const;
    /// Decimal rendering with `sig` significant digits, computed by integer
    /// long division so output is platform-independent.
    std::string decimal(int sig = 12) const;
    double to_double() const;

private:
    int64_t num_;
    int64_t den_;  // > 0 for finite values
    bool inf_;
    void normalize();
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

int64_t checked_mul(int64_t a, int64_t b);
int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);

}  // namespace pfr

#endif
