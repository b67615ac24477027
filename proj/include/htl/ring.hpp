#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "htl/partition.hpp"
#include "htl/poly.hpp"
#include "htl/rational.hpp"

namespace htl {

/// Deformation parameters (c_0,...,c_k).
struct UnfoldParams {
    std::vector<GaussianRational> c;

    UnfoldParams() = default;
    explicit UnfoldParams(std::vector<GaussianRational> values) : c(std::move(values)) {}
    static UnfoldParams zeros(int k) { return UnfoldParams(std::vector<GaussianRational>(static_cast<size_t>(k) + 1)); }

    int k() const { return static_cast<int>(c.size()) - 1; }
    const GaussianRational& at(int i) const { return c[static_cast<size_t>(i)]; }
    bool all_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const UnfoldParams& a, const UnfoldParams& b) { return a.c == b.c; }
    friend bool operator!=(const UnfoldParams& a, const UnfoldParams& b) { return !(a == b); }
};

namespace detail {

// prod_{i=0..l} (z - c_i), the defining modulus at level l
inline Poly level_modulus(const UnfoldParams& p, int l) {
    Poly q = Poly::constant(1);
    for (int i = 0; i <= l; ++i) q = q * Poly::linear(p.at(i));
    return q;
}

// N_i = prod_{a<i} (z - c_a): the ring's standard basis
inline Poly newton_basis(const UnfoldParams& p, int i) {
    Poly q = Poly::constant(1);
    for (int a = 0; a < i; ++a) q = q * Poly::linear(p.at(a));
    return q;
}

// B_m = prod_{i=m+1..l} (z - c_i): numerator of the m-th standard one-form
// at level l, so that the form is B_m(z) / prod_{i=0..l}(z - c_i) dz.
inline Poly coform_numerator(const UnfoldParams& p, int m, int l) {
    Poly q = Poly::constant(1);
    for (int i = m + 1; i <= l; ++i) q = q * Poly::linear(p.at(i));
    return q;
}

inline void require_same(const UnfoldParams& a, int la, const UnfoldParams& b, int lb) {
    if (a != b || la != lb) throw PreconditionError("ring elements have mismatched parameters or level");
}

}  // namespace detail

/// Class of a polynomial in C[z]/<prod_{i<=l}(z-c_i)>, stored in the standard
/// basis 1, (z-c_0), (z-c_0)(z-c_1), ...
class RingElement {
public:
    RingElement() : level_(-1) {}
    RingElement(UnfoldParams params, int level, std::vector<GaussianRational> coeffs)
        : params_(std::move(params)), level_(level), coeffs_(std::move(coeffs)) {
        check_shape();
    }

    static RingElement zero(const UnfoldParams& p, int level) {
        return {p, level, std::vector<GaussianRational>(static_cast<size_t>(level) + 1)};
    }
    static RingElement constant(const UnfoldParams& p, int level, const GaussianRational& v) {
        auto r = zero(p, level);
        r.coeffs_[0] = v;
        return r;
    }
    static RingElement one(const UnfoldParams& p, int level) { return constant(p, level, GaussianRational(1)); }
    static RingElement basis(const UnfoldParams& p, int level, int i) {
        auto r = zero(p, level);
        r.coeffs_[static_cast<size_t>(i)] = GaussianRational(1);
        return r;
    }
    /// Reduce an arbitrary polynomial representative.
    static RingElement from_poly(const UnfoldParams& p, int level, const Poly& rep) {
        Poly r = rep.mod(detail::level_modulus(p, level));
        // successive division by (z - c_i) peels off the standard coefficients
        std::vector<GaussianRational> coeffs(static_cast<size_t>(level) + 1);
        for (int i = 0; i <= level; ++i) {
            coeffs[static_cast<size_t>(i)] = r.eval(p.at(i));
            r = Poly::exact_div(r - Poly::constant(coeffs[static_cast<size_t>(i)]), Poly::linear(p.at(i)));
        }
        return {p, level, std::move(coeffs)};
    }

    const UnfoldParams& params() const { return params_; }
    int level() const { return level_; }
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    const GaussianRational& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (const auto& x : coeffs_)
            if (!x.is_zero()) return false;
        return true;
    }

    Poly to_poly() const {
        Poly acc;
        for (int i = 0; i <= level_; ++i) acc = acc + coeffs_[static_cast<size_t>(i)] * detail::newton_basis(params_, i);
        return acc;
    }

    /// ev_{c_j}: well defined on the class.
    GaussianRational evaluate(int j) const {
        if (j < 0 || j > level_) throw PreconditionError("evaluate: index out of range");
        return to_poly().eval(params_.at(j));
    }

    /// Drop to a lower level (coefficient prefix) or zero-extend to a higher one.
    RingElement truncated(int new_level) const {
        if (new_level == level_) return *this;
        std::vector<GaussianRational> c(static_cast<size_t>(new_level) + 1);
        for (int i = 0; i <= std::min(new_level, level_); ++i) c[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(i)];
        return {params_, new_level, std::move(c)};
    }

    RingElement operator-() const {
        RingElement r = *this;
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }
    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        detail::require_same(a.params_, a.level_, b.params_, b.level_);
        RingElement r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }
    friend RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }
    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        detail::require_same(a.params_, a.level_, b.params_, b.level_);
        return from_poly(a.params_, a.level_, a.to_poly() * b.to_poly());
    }
    friend RingElement operator*(const GaussianRational& s, const RingElement& a) {
        RingElement r = a;
        for (auto& x : r.coeffs_) x = s * x;
        return r;
    }
    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.params_ == b.params_ && a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    /// Multiplicative inverse; a unit iff no evaluation vanishes.
    RingElement inverse() const {
        Poly q = detail::level_modulus(params_, level_);
        auto [g, u, v] = Poly::extended_gcd(to_poly(), q);
        (void)v;
        if (g.degree() != 0) throw PreconditionError("ring element is not a unit");
        return from_poly(params_, level_, g.coeff(0).inverse() * u);
    }

private:
    void check_shape() const {
        if (level_ < 0 || level_ > params_.k() || static_cast<int>(coeffs_.size()) != level_ + 1)
            throw PreconditionError("ring element shape mismatch");
    }
    UnfoldParams params_;
    int level_;
    std::vector<GaussianRational> coeffs_;
};

/// Class of a polar one-form, stored in the standard basis
/// dz/(z-c_0), dz/((z-c_0)(z-c_1)), ...  Level-l elements embed into level
/// l+1 by zero extension.
class OneFormElement {
public:
    OneFormElement() : level_(-1) {}
    OneFormElement(UnfoldParams params, int level, std::vector<GaussianRational> coeffs)
        : params_(std::move(params)), level_(level), coeffs_(std::move(coeffs)) {
        check_shape();
    }

    static OneFormElement zero(const UnfoldParams& p, int level) {
        return {p, level, std::vector<GaussianRational>(static_cast<size_t>(level) + 1)};
    }
    static OneFormElement basis(const UnfoldParams& p, int level, int m) {
        auto r = zero(p, level);
        r.coeffs_[static_cast<size_t>(m)] = GaussianRational(1);
        return r;
    }
    /// From a numerator W: the class of W(z)dz / prod_{i<=l}(z-c_i), deg W <= l.
    static OneFormElement from_numerator(const UnfoldParams& p, int level, Poly w) {
        if (w.degree() > level) throw PreconditionError("one-form numerator degree exceeds level");
        std::vector<GaussianRational> coeffs(static_cast<size_t>(level) + 1);
        for (int m = 0; m <= level; ++m) {
            // basis numerator B_m is monic of degree level - m
            GaussianRational b = w.coeff(level - m);
            coeffs[static_cast<size_t>(m)] = b;
            if (!b.is_zero()) w = w - b * detail::coform_numerator(p, m, level);
        }
        if (!w.is_zero()) throw InternalError("one-form basis conversion failed");
        return {p, level, std::move(coeffs)};
    }

    const UnfoldParams& params() const { return params_; }
    int level() const { return level_; }
    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    const GaussianRational& coeff(int m) const { return coeffs_[static_cast<size_t>(m)]; }

    bool is_zero() const {
        for (const auto& x : coeffs_)
            if (!x.is_zero()) return false;
        return true;
    }

    Poly numerator() const {
        Poly acc;
        for (int m = 0; m <= level_; ++m)
            acc = acc + coeffs_[static_cast<size_t>(m)] * detail::coform_numerator(params_, m, level_);
        return acc;
    }

    OneFormElement extended(int new_level) const {
        if (new_level < level_) throw PreconditionError("one-form truncation is not level-compatible");
        std::vector<GaussianRational> c(static_cast<size_t>(new_level) + 1);
        for (int m = 0; m <= level_; ++m) c[static_cast<size_t>(m)] = coeffs_[static_cast<size_t>(m)];
        return {params_, new_level, std::move(c)};
    }

    OneFormElement operator-() const {
        OneFormElement r = *this;
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }
    friend OneFormElement operator+(const OneFormElement& a, const OneFormElement& b) {
        detail::require_same(a.params_, a.level_, b.params_, b.level_);
        OneFormElement r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }
    friend OneFormElement operator-(const OneFormElement& a, const OneFormElement& b) { return a + (-b); }
    friend OneFormElement operator*(const GaussianRational& s, const OneFormElement& a) {
        OneFormElement r = a;
        for (auto& x : r.coeffs_) x = s * x;
        return r;
    }
    friend bool operator==(const OneFormElement& a, const OneFormElement& b) {
        return a.params_ == b.params_ && a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const OneFormElement& a, const OneFormElement& b) { return !(a == b); }

private:
    void check_shape() const {
        if (level_ < 0 || level_ > params_.k() || static_cast<int>(coeffs_.size()) != level_ + 1)
            throw PreconditionError("one-form element shape mismatch");
    }
    UnfoldParams params_;
    int level_;
    std::vector<GaussianRational> coeffs_;
};

/// Module action of the ring on polar one-forms: multiply numerators and
/// reduce; the discarded polynomial part is exactly the C[z]dz ambiguity.
inline OneFormElement module_action(const RingElement& f, const OneFormElement& w) {
    if (f.params() != w.params()) throw PreconditionError("module_action: parameter mismatch");
    RingElement ff = f.level() == w.level() ? f : f.truncated(w.level());
    Poly prod = ff.to_poly() * w.numerator();
    Poly reduced = prod.mod(detail::level_modulus(w.params(), w.level()));
    return OneFormElement::from_numerator(w.params(), w.level(), reduced);
}

inline OneFormElement operator*(const RingElement& f, const OneFormElement& w) { return module_action(f, w); }
inline OneFormElement operator*(const OneFormElement& w, const RingElement& f) { return module_action(f, w); }

/// -res_inf(f w), the duality pairing.  The standard bases are dual.
inline GaussianRational pairing(const RingElement& f, const OneFormElement& w) {
    detail::require_same(f.params(), f.level(), w.params(), w.level());
    Poly prod = f.to_poly() * w.numerator();
    Poly reduced = prod.mod(detail::level_modulus(f.params(), f.level()));
    return reduced.coeff(f.level());
}

/// Residue at infinity; in the standard basis only the simple-pole term sees it.
inline GaussianRational residue_at_infinity(const OneFormElement& w) { return -w.coeff(0); }

/// Residue at a finite point, which must occur among c_0..c_l.
inline GaussianRational residue(const OneFormElement& w, const GaussianRational& point) {
    const UnfoldParams& p = w.params();
    int mult = 0;
    for (int i = 0; i <= w.level(); ++i)
        if (p.at(i) == point) ++mult;
    if (mult == 0) throw PreconditionError("residue: point is not among the divisor points");
    // residue = [t^{mult-1}] of W(point + t) / G(point + t), G = modulus / (z-point)^mult
    Poly g = detail::level_modulus(p, w.level());
    for (int i = 0; i < mult; ++i) g = Poly::exact_div(g, Poly::linear(point));
    Poly w_jet = w.numerator().shifted_to(point);
    Poly g_inv = g.shifted_to(point).series_inverse(mult);
    GaussianRational acc(0);
    for (int a = 0; a < mult; ++a) acc += w_jet.coeff(a) * g_inv.coeff(mult - 1 - a);
    return acc;
}

/// Truncated Taylor expansion at one of the divisor points.
struct Jet {
    GaussianRational point;
    std::vector<GaussianRational> coeffs;  // length = multiplicity of the point
};

namespace detail {

inline void require_stratum(const UnfoldParams& p, const SetPartition& partition) {
    partition.validate();
    if (partition.ground_size() != p.k() + 1)
        throw PreconditionError("partition ground set does not match parameter length");
    if (classify_point(p.c) != partition) throw PreconditionError("parameters do not lie on the named stratum");
}

}  // namespace detail

/// Jets of the ring element at the distinct points of the stratum, one per
/// block meeting {0..level}.  The joint map is the CRT isomorphism.
inline std::vector<Jet> crt_split(const RingElement& f, const SetPartition& partition) {
    detail::require_stratum(f.params(), partition);
    std::vector<Jet> jets;
    Poly rep = f.to_poly();
    for (const auto& [block_id, members] : partition.restricted_to(f.level())) {
        (void)block_id;
        GaussianRational point = f.params().at(members.front());
        int mult = static_cast<int>(members.size());
        Poly t = rep.shifted_to(point);
        std::vector<GaussianRational> coeffs(static_cast<size_t>(mult));
        for (int i = 0; i < mult; ++i) coeffs[static_cast<size_t>(i)] = t.coeff(i);
        jets.push_back(Jet{point, std::move(coeffs)});
    }
    return jets;
}

/// Inverse of crt_split: Hermite interpolation through the jets.
inline RingElement crt_join(const std::vector<Jet>& jets, const UnfoldParams& params, int level,
                            const SetPartition& partition) {
    detail::require_stratum(params, partition);
    auto blocks = partition.restricted_to(level);
    if (jets.size() != blocks.size()) throw PreconditionError("crt_join: jet count does not match stratum");
    Poly modulus = detail::level_modulus(params, level);
    Poly acc;
    for (size_t j = 0; j < blocks.size(); ++j) {
        const auto& members = blocks[j].second;
        GaussianRational point = params.at(members.front());
        int mult = static_cast<int>(members.size());
        if (jets[j].point != point || static_cast<int>(jets[j].coeffs.size()) != mult)
            throw PreconditionError("crt_join: jet does not match its block");
        Poly t_j = Poly::exact_div(modulus, [&] {
            Poly q = Poly::constant(1);
            for (int i = 0; i < mult; ++i) q = q * Poly::linear(point);
            return q;
        }());
        // u_j = t_j^{-1} mod (z-point)^mult, computed as a series at the point
        Poly u_local = t_j.shifted_to(point).series_inverse(mult);
        Poly jet_local(jets[j].coeffs);
        Poly prod_local;  // (jet * u) mod t^mult, as a series at the point
        {
            std::vector<GaussianRational> pc(static_cast<size_t>(mult));
            for (int a = 0; a < mult; ++a) {
                GaussianRational s(0);
                for (int b = 0; b <= a; ++b) s += jet_local.coeff(b) * u_local.coeff(a - b);
                pc[static_cast<size_t>(a)] = s;
            }
            prod_local = Poly(std::move(pc));
        }
        // un-shift: series in (z-point) back to the monomial basis
        Poly prod = prod_local.shifted_to(-point);
        acc = acc + prod * t_j;
    }
    return RingElement::from_poly(params, level, acc);
}

/// Principal part at a single pole of a scalar rational one-form:
/// sum_v coeffs[v] dz/(z-point)^{v+1}.
struct ScalarPrincipalPart {
    GaussianRational point;
    std::vector<GaussianRational> coeffs;
};

/// Partial fraction decomposition over the distinct points of the stratum.
inline std::vector<ScalarPrincipalPart> partial_fractions(const OneFormElement& w, const SetPartition& partition) {
    detail::require_stratum(w.params(), partition);
    std::vector<ScalarPrincipalPart> parts;
    Poly numerator = w.numerator();
    Poly modulus = detail::level_modulus(w.params(), w.level());
    for (const auto& [block_id, members] : partition.restricted_to(w.level())) {
        (void)block_id;
        GaussianRational point = w.params().at(members.front());
        int mult = static_cast<int>(members.size());
        Poly g = modulus;
        for (int i = 0; i < mult; ++i) g = Poly::exact_div(g, Poly::linear(point));
        Poly w_jet = numerator.shifted_to(point);
        Poly g_inv = g.shifted_to(point).series_inverse(mult);
        // W/Q = sum_v a_v/(z-point)^{v+1} + regular, a_v = [t^{mult-1-v}] (W * g^{-1})(point + t)
        std::vector<GaussianRational> coeffs(static_cast<size_t>(mult));
        for (int v = 0; v < mult; ++v) {
            GaussianRational s(0);
            for (int a = 0; a <= mult - 1 - v; ++a) s += w_jet.coeff(a) * g_inv.coeff(mult - 1 - v - a);
            coeffs[static_cast<size_t>(v)] = s;
        }
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
        parts.push_back(ScalarPrincipalPart{point, std::move(coeffs)});
    }
    return parts;
}

/// Reassemble a one-form from principal parts supported on the stratum points.
inline OneFormElement from_principal_parts(const std::vector<ScalarPrincipalPart>& parts, const UnfoldParams& params,
                                           int level, const SetPartition& partition) {
    detail::require_stratum(params, partition);
    Poly modulus = detail::level_modulus(params, level);
    Poly acc;
    for (const auto& part : parts) {
        int mult = 0;
        for (int i = 0; i <= level; ++i)
            if (params.at(i) == part.point) ++mult;
        if (mult < static_cast<int>(part.coeffs.size()))
            throw PreconditionError("principal part order exceeds the divisor multiplicity");
        Poly g = modulus;
        for (int i = 0; i < mult; ++i) g = Poly::exact_div(g, Poly::linear(part.point));
        // sum_v a_v (z-point)^{mult-1-v} * g  over the common denominator
        Poly local;
        for (size_t v = 0; v < part.coeffs.size(); ++v) {
            Poly pw = Poly::constant(part.coeffs[v]);
            for (int i = 0; i < mult - 1 - static_cast<int>(v); ++i) pw = pw * Poly::linear(part.point);
            local = local + pw;
        }
        acc = acc + local * g;
    }
    return OneFormElement::from_numerator(params, level, acc);
}

}  // namespace htl
