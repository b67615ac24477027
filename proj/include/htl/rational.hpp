#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace htl {

// Error taxonomy used across the library.  The CLI maps these to exit codes.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

inline std::string rational_to_string(const Rational& q) {
    std::string num = q.get_num().get_str();
    if (q.get_den() == 1) return num;
    return num + "/" + q.get_den().get_str();
}

/// Element of Q(i): exact real and imaginary rational parts.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(const Rational& re) : re_(re), im_(0) { re_.canonicalize(); }
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    // |z|^2, a plain rational.  Zero iff z is zero.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw PreconditionError("division by zero in Q(i)");
        Rational n = o.norm();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Lexicographic on (re, im).  Used for canonical sorting only; it is not
    // compatible with the field operations.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    GaussianRational inverse() const {
        if (is_zero()) throw PreconditionError("inverse of zero in Q(i)");
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    /// Canonical text form: "a/b", "c/d*i" or "a/b+c/d*i"; integers drop "/1".
    std::string str() const {
        if (im_ == 0) return rational_to_string(re_);
        std::string istr = rational_to_string(im_) + "*i";
        if (re_ == 0) return istr;
        if (im_ > 0) return rational_to_string(re_) + "+" + istr;
        return rational_to_string(re_) + istr;  // '-' sign comes with the numerator
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

    static GaussianRational parse(const std::string& text);

private:
    Rational re_, im_;
};

namespace detail {

inline bool parse_rational_token(const std::string& s, size_t& pos, Rational& out) {
    size_t start = pos;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    size_t digits_begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_begin) {
        pos = start;
        return false;
    }
    std::string num = s.substr(digits_begin, pos - digits_begin);
    std::string den = "1";
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t den_begin = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == den_begin) throw ValidationError("malformed rational: " + s);
        den = s.substr(den_begin, pos - den_begin);
    }
    mpz_class denom(den);
    if (denom == 0) throw ValidationError("zero denominator: " + s);
    out = Rational(mpz_class(num), denom);
    out.canonicalize();
    if (negative) out = -out;
    return true;
}

}  // namespace detail

inline GaussianRational GaussianRational::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ValidationError("empty scalar");

    size_t pos = 0;
    Rational re(0), im(0);
    bool saw_any = false;
    while (pos < s.size()) {
        // bare "i" / "+i" / "-i"
        size_t save = pos;
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        if (pos < s.size() && s[pos] == 'i' && pos + 1 == s.size()) {
            im += sign;
            ++pos;
            saw_any = true;
            continue;
        }
        pos = save;

        Rational value;
        if (!detail::parse_rational_token(s, pos, value)) throw ValidationError("malformed scalar: " + text);
        if (pos + 1 < s.size() && s[pos] == '*' && s[pos + 1] == 'i') {
            pos += 2;
            im += value;
        } else if (pos < s.size() && s[pos] == 'i') {
            ++pos;
            im += value;
        } else {
            re += value;
        }
        saw_any = true;
    }
    if (!saw_any) throw ValidationError("malformed scalar: " + text);
    return {re, im};
}

}  // namespace htl
