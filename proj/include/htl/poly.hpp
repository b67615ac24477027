#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "htl/rational.hpp"

namespace htl {

/// Dense univariate polynomial over Q(i), coefficients in ascending degree.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(GaussianRational v) { return Poly({std::move(v)}); }
    // z - a
    static Poly linear(const GaussianRational& a) { return Poly({-a, GaussianRational(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<GaussianRational>& coeffs() const { return c_; }

    GaussianRational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return GaussianRational(0);
        return c_[i];
    }
    GaussianRational leading() const { return c_.empty() ? GaussianRational(0) : c_.back(); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<GaussianRational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const GaussianRational& s, const Poly& p) {
        Poly r = p;
        for (auto& x : r.c_) x *= s;
        r.trim();
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    GaussianRational eval(const GaussianRational& x) const {
        GaussianRational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<GaussianRational> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = GaussianRational(static_cast<long>(i)) * c_[i];
        return Poly(std::move(r));
    }

    /// Quotient and remainder; the divisor may have any nonzero leading
    /// coefficient since we work over a field.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw PreconditionError("polynomial division by zero");
        Poly rem = a;
        int db = b.degree();
        GaussianRational inv_lead = b.leading().inverse();
        if (rem.degree() < db) return {Poly{}, rem};
        std::vector<GaussianRational> q(rem.degree() - db + 1);
        while (!rem.is_zero() && rem.degree() >= db) {
            int shift = rem.degree() - db;
            GaussianRational f = rem.leading() * inv_lead;
            q[shift] = f;
            // rem -= f * z^shift * b
            std::vector<GaussianRational> rc = rem.c_;
            for (int i = 0; i <= db; ++i) rc[i + shift] -= f * b.c_[i];
            rem = Poly(std::move(rc));
        }
        return {Poly(std::move(q)), rem};
    }

    Poly mod(const Poly& b) const { return divmod(*this, b).second; }

    /// Exact division; throws if the remainder is nonzero.
    static Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw InternalError("exact_div: nonzero remainder");
        return q;
    }

    /// Coefficients of p(c + t) as a polynomial in t (Taylor expansion at c).
    Poly shifted_to(const GaussianRational& c) const {
        std::vector<GaussianRational> rem = c_;
        std::vector<GaussianRational> out;
        out.reserve(c_.size());
        for (size_t step = 0; step < c_.size(); ++step) {
            // synthetic division of rem by (z - c); the remainder is rem(c)
            GaussianRational carry(0);
            for (size_t i = rem.size(); i-- > 0;) {
                GaussianRational cur = rem[i] + carry * c;
                carry = cur;
                rem[i] = cur;
            }
            out.push_back(rem[0]);
            rem.erase(rem.begin());
        }
        return Poly(std::move(out));
    }

    /// Power-series inverse modulo t^m; requires a unit constant term.
    Poly series_inverse(int m) const {
        if (m <= 0) return {};
        if (coeff(0).is_zero()) throw PreconditionError("series_inverse: constant term is zero");
        std::vector<GaussianRational> r(static_cast<size_t>(m));
        GaussianRational c0inv = coeff(0).inverse();
        r[0] = c0inv;
        for (int i = 1; i < m; ++i) {
            GaussianRational acc(0);
            for (int j = 1; j <= i; ++j) acc += coeff(j) * r[static_cast<size_t>(i - j)];
            r[static_cast<size_t>(i)] = -c0inv * acc;
        }
        return Poly(std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return {};
        return leading().inverse() * *this;
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a.mod(b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Extended Euclid: returns (g, u, v) monic g = gcd with u*a + v*b = g.
    static std::tuple<Poly, Poly, Poly> extended_gcd(const Poly& a, const Poly& b) {
        Poly r0 = a, r1 = b;
        Poly u0 = Poly::constant(1), u1{};
        Poly v0{}, v1 = Poly::constant(1);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Poly u2 = u0 - q * u1;
            Poly v2 = v0 - q * v1;
            r0 = std::move(r1);
            r1 = std::move(r);
            u0 = std::move(u1);
            u1 = std::move(u2);
            v0 = std::move(v1);
            v1 = std::move(v2);
        }
        if (r0.is_zero()) return {r0, u0, v0};
        GaussianRational s = r0.leading().inverse();
        return {s * r0, s * u0, s * v0};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

}  // namespace htl
