#include "pfr/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace pfr {

namespace {

int64_t from128(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<int64_t>(v);
}

}  // namespace

int64_t gcd64(int64_t a, int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t lcm64(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / gcd64(a, b), b);
}

int64_t checked_mul(int64_t a, int64_t b) {
    return from128(static_cast<__int128>(a) * b);
}

Rational::Rational(int64_t n, int64_t d) : num_(n), den_(d), inf_(false) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    normalize();
}

Rational Rational::infinity() {
    Rational r;
    r.inf_ = true;
    r.num_ = 1;
    return r;
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    int64_t g = gcd64(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

int64_t Rational::num() const {
    if (inf_) throw std::domain_error("num() of infinity");
    return num_;
}

int64_t Rational::den() const {
    if (inf_) throw std::domain_error("den() of infinity");
    return den_;
}

Rational Rational::operator-() const {
    if (inf_) throw std::domain_error("negating +infinity");
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    if (inf_ || o.inf_) return infinity();
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    // reduce in 128-bit before narrowing
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    Rational r;
    r.num_ = from128(n / a);
    r.den_ = from128(d / a);
    r.inf_ = false;
    r.normalize();
    return r;
}

Rational Rational::operator-(const Rational& o) const {
    if (o.inf_) throw std::domain_error("subtracting +infinity");
    if (inf_) return infinity();
    return *this + (-o);
}

Rational Rational::operator*(const Rational& o) const {
    if (inf_ || o.inf_) {
        const Rational& fin = inf_ ? o : *this;
        if (fin.is_zero() && !(inf_ && o.inf_))
            throw std::domain_error("infinity * 0");
        if (fin.is_negative()) throw std::domain_error("infinity * negative");
        return infinity();
    }
    int64_t g1 = gcd64(num_, o.den_);
    int64_t g2 = gcd64(o.num_, den_);
    Rational r;
    r.num_ = checked_mul(num_ / g1, o.num_ / g2);
    r.den_ = checked_mul(den_ / g2, o.den_ / g1);
    r.inf_ = false;
    r.normalize();
    return r;
}

Rational Rational::operator/(const Rational& o) const {
    if (o.inf_) throw std::domain_error("dividing by +infinity");
    if (o.is_zero()) {
        // Division by zero in threshold formulas denotes an unreachable
        // breakpoint; the extended semantics make it +infinity.
        if (is_negative()) throw std::domain_error("negative / 0");
        return infinity();
    }
    if (inf_) {
        if (o.is_negative()) throw std::domain_error("infinity / negative");
        return infinity();
    }
    Rational inv(o.den_, o.num_);
    return *this * inv;
}

bool Rational::operator==(const Rational& o) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return num_ == o.num_ && den_ == o.den_;
}

bool Rational::operator<(const Rational& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
    if (inf_) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int sig) const {
    if (inf_) return "inf";
    if (num_ == 0) return "0";
    uint64_t n = num_ < 0 ? static_cast<uint64_t>(-(num_ + 1)) + 1 : static_cast<uint64_t>(num_);
    uint64_t d = static_cast<uint64_t>(den_);
    // exponent: number of integer digits - 1 (may be negative)
    int exp = 0;
    __uint128_t hi = n, lo = d;
    while (hi >= lo * 10) {
        lo *= 10;
        exp++;
    }
    while (hi < lo) {
        hi *= 10;
        exp--;
    }
    // now 1 <= (n * 10^k) / d < 10 at the leading digit position
    std::string digits;
    __uint128_t rem = hi;
    for (int i = 0; i < sig; i++) {
        uint64_t q = static_cast<uint64_t>(rem / lo);
        digits += static_cast<char>('0' + q);
        rem = (rem - q * lo) * 10;
    }
    // round half up on the next digit
    if (static_cast<uint64_t>(rem / lo) >= 5) {
        int i = sig - 1;
        while (i >= 0 && digits[i] == '9') digits[i--] = '0';
        if (i < 0) {
            digits.insert(digits.begin(), '1');
            digits.pop_back();
            exp++;
        } else {
            digits[i]++;
        }
    }
    std::string out = num_ < 0 ? "-" : "";
    if (exp >= 0 && exp < sig) {
        out += digits.substr(0, exp + 1);
        std::string frac = digits.substr(exp + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    } else if (exp < 0 && exp > -5) {
        out += "0.";
        for (int i = -1; i > exp; i--) out += '0';
        std::string frac = digits;
        while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
        out += frac;
    } else {
        out += digits.substr(0, 1);
        std::string frac = digits.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(exp);
    }
    return out;
}

double Rational::to_double() const {
    if (inf_) return 1e300;
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s == "inf") return infinity();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        int64_t n = std::stoll(s.substr(0, slash));
        int64_t d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string ipart = s.substr(0, dot), fpart = s.substr(dot + 1);
    bool neg = !ipart.empty() && ipart[0] == '-';
    if (neg) ipart = ipart.substr(1);
    if (ipart.empty()) ipart = "0";
    int64_t den = 1;
    for (size_t i = 0; i < fpart.size(); i++) den = checked_mul(den, 10);
    int64_t num = checked_mul(std::stoll(ipart), den) + (fpart.empty() ? 0 : std::stoll(fpart));
    if (neg) num = -num;
    return Rational(num, den);
}

}  // namespace pfr
