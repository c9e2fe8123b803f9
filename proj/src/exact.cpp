#include "rlop/exact.hpp"

namespace rlop::exact {

namespace {
// split "a+bi" style scalar into real and imaginary literals; the sign that
// separates the parts is the first +/- not at position 0 and not part of a
// numerator/denominator (those signs only occur at the very front here)
bool split_complex(const std::string& s, std::string& re_part, std::string& im_part) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] == '+' || s[i] == '-') {
            re_part = s.substr(0, i);
            im_part = s.substr(i);  // keeps the sign
            return true;
        }
    }
    return false;
}

Rational parse_im(std::string t) {
    // t ends with 'i': "i", "-i", "2i", "+1/2i", "-3/4i"
    if (t.empty() || t.back() != 'i')
        throw std::invalid_argument("imaginary part must end in i: '" + t + "'");
    t.pop_back();
    if (t.empty() || t == "+") return Rational(1);
    if (t == "-") return Rational(-1);
    if (t.front() == '+') t.erase(t.begin());
    return Rational::parse(t);
}
} // namespace

GaussianRational GaussianRational::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!isspace((unsigned char)c)) s += c;
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    std::string re_part, im_part;
    if (split_complex(s, re_part, im_part)) {
        if (im_part.back() != 'i')
            throw std::invalid_argument("bad scalar literal: '" + raw + "'");
        return {Rational::parse(re_part), parse_im(im_part)};
    }
    if (s.back() == 'i') return {Rational(0), parse_im(s)};
    return {Rational::parse(s), Rational(0)};
}

std::string GaussianRational::str() const {
    auto im_str = [&]() -> std::string {
        if (im == Rational(1)) return "i";
        if (im == Rational(-1)) return "-i";
        return im.str() + "i";
    };
    if (im.is_zero()) return re.str();
    if (re.is_zero()) return im_str();
    std::string tail = im_str();
    if (tail.front() != '-') tail = "+" + tail;
    return re.str() + tail;
}

bool GaussianRational::from_complex(std::complex<double> z, GaussianRational& out,
                                    long long max_den, double tol) {
    Rational r, i;
    if (!Rational::from_double(z.real(), r, max_den, tol)) return false;
    if (!Rational::from_double(z.imag(), i, max_den, tol)) return false;
    out = {r, i};
    return true;
}

} // namespace rlop::exact
