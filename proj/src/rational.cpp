#include "rlop/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

namespace rlop {

namespace {
const __int128 I64_MAX = std::numeric_limits<long long>::max();
const __int128 I64_MIN = std::numeric_limits<long long>::min();

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a;
}
} // namespace

void Rational::reduce() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
}

Rational Rational::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > I64_MAX || n < I64_MIN || d > I64_MAX)
        throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = (long long)n;
    r.den_ = (long long)d;
    return r;
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    size_t slash = s.find('/');
    auto parse_ll = [](const std::string& part) -> long long {
        size_t pos = 0;
        long long v;
        try {
            v = std::stoll(part, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad rational literal: '" + part + "'");
        }
        if (pos != part.size())
            throw std::invalid_argument("bad rational literal: '" + part + "'");
        return v;
    };
    if (slash == std::string::npos) return Rational(parse_ll(s));
    long long n = parse_ll(s.substr(0, slash));
    long long d = parse_ll(s.substr(slash + 1));
    return Rational(n, d);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rational::from_double(double x, Rational& out, long long max_den, double tol) {
    if (!std::isfinite(x)) return false;
    // continued-fraction convergents
    double v = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 9.2e18 || fl < -9.2e18) return false;
        long long a = (long long)fl;
        __int128 p2 = (__int128)a * p1 + p0;
        __int128 q2 = (__int128)a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1;
        p1 = (long long)p2; q1 = (long long)q2;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q1 == 0) return false;
    Rational cand(p1, q1);
    double err = std::fabs(cand.to_double() - x);
    double scale = std::max(1.0, std::fabs(x));
    if (err > tol * scale) return false;
    out = cand;
    return true;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace rlop
