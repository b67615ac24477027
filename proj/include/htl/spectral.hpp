#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "htl/blockalg.hpp"
#include "htl/matrix.hpp"

namespace htl {

/// Unramified normal form: pole order k+1, diagonals S_0..S_k and a commuting
/// nilpotent N_0, representing (S_k/z^k + ... + S_1/z + S_0 + N_0) dz/z.
struct HTLForm {
    int n = 0;
    int k = 0;
    std::vector<std::vector<GaussianRational>> S;  // k+1 diagonals of length n
    ScalarMatrix N0;

    HTLForm() = default;
    HTLForm(int n_, int k_, std::vector<std::vector<GaussianRational>> s, ScalarMatrix n0)
        : n(n_), k(k_), S(std::move(s)), N0(std::move(n0)) {
        validate();
    }
    static HTLForm semisimple(int n_, int k_, std::vector<std::vector<GaussianRational>> s) {
        return {n_, k_, std::move(s), scalar_zero(n_, n_)};
    }

    void validate() const {
        if (n <= 0 || k < 0) throw ValidationError("HTL form: bad rank or pole order");
        if (static_cast<int>(S.size()) != k + 1) throw ValidationError("HTL form: expected k+1 diagonal matrices");
        for (const auto& d : S)
            if (static_cast<int>(d.size()) != n) throw ValidationError("HTL form: diagonal length mismatch");
        if (N0.rows() != n || N0.cols() != n) throw ValidationError("HTL form: N0 size mismatch");
        if (!is_zero(matrix_power(N0, n))) throw ValidationError("HTL form: N0 is not nilpotent");
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                if (N0.at(r, s).is_zero()) continue;
                for (int i = 0; i <= k; ++i)
                    if (S[static_cast<size_t>(i)][static_cast<size_t>(r)] != S[static_cast<size_t>(i)][static_cast<size_t>(s)])
                        throw ValidationError("HTL form: [S_i, N0] != 0");
            }
    }

    friend bool operator==(const HTLForm& a, const HTLForm& b) {
        return a.n == b.n && a.k == b.k && a.S == b.S && a.N0 == b.N0;
    }
};

inline HTLForm conjugate_by_permutation(const HTLForm& h, const std::vector<int>& dest_of) {
    ScalarMatrix p = permutation_matrix(dest_of);
    ScalarMatrix n0 = p * h.N0 * p.transposed();
    std::vector<std::vector<GaussianRational>> s(h.S.size(), std::vector<GaussianRational>(static_cast<size_t>(h.n)));
    for (size_t i = 0; i < h.S.size(); ++i)
        for (int j = 0; j < h.n; ++j) s[i][static_cast<size_t>(dest_of[static_cast<size_t>(j)])] = h.S[i][static_cast<size_t>(j)];
    return {h.n, h.k, std::move(s), std::move(n0)};
}

/// Per-block strictly decreasing image-dimension chains of the nilpotent part.
using Signature = std::vector<std::vector<int>>;

inline bool signature_is_trivial(const Signature& sig) {
    for (const auto& s : sig)
        if (s.size() != 1) return false;
    return true;
}

/// Refinement chain of compositions with the nilpotent signature attached to
/// the finest level.
struct SpectralType {
    std::vector<Composition> chain;    // m_0 <= m_1 <= ... <= m_k
    std::vector<RefinementMap> maps;   // maps[i]: blocks of m_i -> blocks of m_{i+1}
    Signature signature;               // one entry per block of m_0

    int levels() const { return static_cast<int>(chain.size()); }

    void validate() const {
        if (chain.empty()) throw ValidationError("spectral type: empty chain");
        if (maps.size() + 1 != chain.size()) throw ValidationError("spectral type: map count mismatch");
        for (size_t i = 0; i + 1 < chain.size(); ++i) maps[i].validate(chain[i], chain[i + 1]);
        if (static_cast<int>(signature.size()) != chain.front().size())
            throw ValidationError("spectral type: signature arity mismatch");
        for (int j = 0; j < chain.front().size(); ++j) {
            const auto& sig = signature[static_cast<size_t>(j)];
            if (sig.empty() || sig.front() != chain.front().part(j))
                throw ValidationError("spectral type: signature head mismatch");
            for (size_t t = 0; t + 1 < sig.size(); ++t)
                if (sig[t] <= sig[t + 1]) throw ValidationError("spectral type: signature must strictly decrease");
            if (sig.back() <= 0) throw ValidationError("spectral type: signature entries must be positive");
        }
    }
};

namespace detail {

// AHU-style canonical key of a block: level-0 blocks carry (size, signature),
// higher blocks carry the sorted multiset of their children's keys.
inline std::vector<std::vector<std::string>> block_keys(const SpectralType& t) {
    std::vector<std::vector<std::string>> keys(t.chain.size());
    for (int j = 0; j < t.chain.front().size(); ++j) {
        std::string s = "(" + std::to_string(t.chain.front().part(j));
        for (int d : t.signature[static_cast<size_t>(j)]) s += "," + std::to_string(d);
        s += ")";
        keys[0].push_back(std::move(s));
    }
    for (size_t lvl = 1; lvl < t.chain.size(); ++lvl) {
        keys[lvl].resize(static_cast<size_t>(t.chain[lvl].size()));
        std::vector<std::vector<std::string>> children(static_cast<size_t>(t.chain[lvl].size()));
        for (size_t j = 0; j < keys[lvl - 1].size(); ++j)
            children[static_cast<size_t>(t.maps[lvl - 1].target[j])].push_back(keys[lvl - 1][j]);
        for (size_t b = 0; b < children.size(); ++b) {
            std::sort(children[b].begin(), children[b].end());
            std::string s = "[";
            for (const auto& c : children[b]) s += c;
            s += "]";
            keys[lvl][b] = std::move(s);
        }
    }
    return keys;
}

}  // namespace detail

/// Structural fingerprint: equal iff the chains agree up to level-wise
/// relabelling of blocks compatible with the refinement maps.
inline std::string canonical_fingerprint(const SpectralType& t) {
    auto keys = detail::block_keys(t);
    std::vector<std::string> top = keys.back();
    std::sort(top.begin(), top.end());
    std::string s;
    for (const auto& x : top) s += x;
    return s;
}

inline bool same_spectral_type(const SpectralType& a, const SpectralType& b) {
    return canonical_fingerprint(a) == canonical_fingerprint(b);
}

/// Simultaneous eigenvalue data of an HTL form: at each level i the blocks of
/// indices sharing the eigenvalue tuple of (S_i,...,S_k), canonically ordered.
struct SpectralData {
    SpectralType type;
    std::vector<std::vector<std::vector<int>>> level_blocks;  // [level][block] -> indices

    /// Eigenvalue of S_l on block j of level i (defined for l >= i).
    GaussianRational eigenvalue(const HTLForm& h, int level, int block, int l) const {
        int idx = level_blocks[static_cast<size_t>(level)][static_cast<size_t>(block)].front();
        return h.S[static_cast<size_t>(l)][static_cast<size_t>(idx)];
    }
};

namespace detail {

// lexicographic comparison of eigenvalue tuples read from the top level down
inline bool tuple_less_top_down(const std::vector<GaussianRational>& a, const std::vector<GaussianRational>& b) {
    // tuples are stored (s_i,...,s_k); compare s_k first
    for (size_t t = 0; t < a.size(); ++t) {
        const GaussianRational& x = a[a.size() - 1 - t];
        const GaussianRational& y = b[b.size() - 1 - t];
        if (x != y) return x < y;
    }
    return false;
}

inline Signature nilpotent_signature(const ScalarMatrix& n0, const std::vector<std::vector<int>>& blocks) {
    Signature sig;
    for (const auto& idx : blocks) {
        int dim = static_cast<int>(idx.size());
        ScalarMatrix sub = scalar_zero(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int s = 0; s < dim; ++s) sub.at(r, s) = n0.at(idx[static_cast<size_t>(r)], idx[static_cast<size_t>(s)]);
        std::vector<int> chain{dim};
        ScalarMatrix power = sub;
        while (true) {
            int d = scalar_rank(power);
            if (d == 0) break;
            chain.push_back(d);
            power = power * sub;
        }
        sig.push_back(std::move(chain));
    }
    return sig;
}

}  // namespace detail

inline SpectralData htl_spectral_data(const HTLForm& h) {
    h.validate();
    SpectralData data;
    data.level_blocks.resize(static_cast<size_t>(h.k) + 1);
    std::vector<std::vector<std::vector<GaussianRational>>> level_tuples(static_cast<size_t>(h.k) + 1);
    for (int i = 0; i <= h.k; ++i) {
        // group indices by the tuple (s_i,...,s_k), order blocks canonically
        std::vector<std::pair<std::vector<GaussianRational>, std::vector<int>>> groups;
        for (int idx = 0; idx < h.n; ++idx) {
            std::vector<GaussianRational> tuple;
            for (int l = i; l <= h.k; ++l) tuple.push_back(h.S[static_cast<size_t>(l)][static_cast<size_t>(idx)]);
            bool found = false;
            for (auto& g : groups)
                if (g.first == tuple) {
                    g.second.push_back(idx);
                    found = true;
                    break;
                }
            if (!found) groups.emplace_back(std::move(tuple), std::vector<int>{idx});
        }
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return detail::tuple_less_top_down(a.first, b.first); });
        for (auto& g : groups) {
            level_tuples[static_cast<size_t>(i)].push_back(g.first);
            data.level_blocks[static_cast<size_t>(i)].push_back(g.second);
        }
    }
    for (int i = 0; i <= h.k; ++i) {
        std::vector<int> parts;
        for (const auto& blk : data.level_blocks[static_cast<size_t>(i)]) parts.push_back(static_cast<int>(blk.size()));
        data.type.chain.emplace_back(std::move(parts));
    }
    for (int i = 0; i < h.k; ++i) {
        RefinementMap map;
        const auto& fine = data.level_blocks[static_cast<size_t>(i)];
        const auto& coarse = data.level_blocks[static_cast<size_t>(i + 1)];
        for (const auto& blk : fine) {
            int rep = blk.front();
            int target = -1;
            for (size_t b = 0; b < coarse.size(); ++b)
                if (std::find(coarse[b].begin(), coarse[b].end(), rep) != coarse[b].end()) {
                    target = static_cast<int>(b);
                    break;
                }
            map.target.push_back(target);
        }
        map.validate(data.type.chain[static_cast<size_t>(i)], data.type.chain[static_cast<size_t>(i + 1)]);
        data.type.maps.push_back(std::move(map));
    }
    data.type.signature = detail::nilpotent_signature(h.N0, data.level_blocks.front());
    data.type.validate();
    return data;
}

inline SpectralType htl_spectral_type(const HTLForm& h) { return htl_spectral_data(h).type; }

/// Reorders the blocks of each level so that eigenvalue tuples ascend in the
/// top-down lexicographic order; refinement maps become monotone.
inline SpectralType canonical_order(const SpectralType& t,
                                    const std::vector<std::vector<std::vector<GaussianRational>>>& eigen_tuples) {
    if (eigen_tuples.size() != t.chain.size()) throw PreconditionError("canonical_order: eigendata arity mismatch");
    SpectralType out;
    out.chain.resize(t.chain.size());
    out.maps.resize(t.maps.size());
    std::vector<std::vector<int>> new_of_old(t.chain.size());
    for (size_t lvl = 0; lvl < t.chain.size(); ++lvl) {
        int m = t.chain[lvl].size();
        if (static_cast<int>(eigen_tuples[lvl].size()) != m)
            throw PreconditionError("canonical_order: eigendata arity mismatch");
        std::vector<int> order(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) order[static_cast<size_t>(j)] = j;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return detail::tuple_less_top_down(eigen_tuples[lvl][static_cast<size_t>(a)],
                                               eigen_tuples[lvl][static_cast<size_t>(b)]);
        });
        new_of_old[lvl].resize(static_cast<size_t>(m));
        std::vector<int> parts(static_cast<size_t>(m));
        for (int pos = 0; pos < m; ++pos) {
            new_of_old[lvl][static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos;
            parts[static_cast<size_t>(pos)] = t.chain[lvl].part(order[static_cast<size_t>(pos)]);
        }
        out.chain[lvl] = Composition(std::move(parts));
    }
    for (size_t lvl = 0; lvl + 1 < t.chain.size(); ++lvl) {
        out.maps[lvl].target.resize(t.maps[lvl].target.size());
        for (size_t old_j = 0; old_j < t.maps[lvl].target.size(); ++old_j)
            out.maps[lvl].target[static_cast<size_t>(new_of_old[lvl][old_j])] =
                new_of_old[lvl + 1][static_cast<size_t>(t.maps[lvl].target[old_j])];
    }
    out.signature.resize(t.signature.size());
    for (size_t old_j = 0; old_j < t.signature.size(); ++old_j)
        out.signature[static_cast<size_t>(new_of_old[0][old_j])] = t.signature[old_j];
    out.validate();
    return out;
}

/// Permutation sending the coordinates into the adapted order where every
/// level's blocks are contiguous index ranges (sorted by eigenvalue tuples).
inline std::vector<int> adapting_permutation(const HTLForm& h) {
    std::vector<std::vector<GaussianRational>> tuple(static_cast<size_t>(h.n));
    for (int idx = 0; idx < h.n; ++idx)
        for (int l = 0; l <= h.k; ++l) tuple[static_cast<size_t>(idx)].push_back(h.S[static_cast<size_t>(l)][static_cast<size_t>(idx)]);
    std::vector<int> order(static_cast<size_t>(h.n));
    for (int i = 0; i < h.n; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return detail::tuple_less_top_down(tuple[static_cast<size_t>(a)], tuple[static_cast<size_t>(b)]);
    });
    std::vector<int> dest(static_cast<size_t>(h.n));
    for (int pos = 0; pos < h.n; ++pos) dest[static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos;
    return dest;
}

inline bool is_adapted(const HTLForm& h) {
    auto data = htl_spectral_data(h);
    for (const auto& level : data.level_blocks) {
        int expect = 0;
        for (const auto& blk : level)
            for (int idx : blk)
                if (idx != expect++) return false;
    }
    return true;
}

/// Spectral type of a single square matrix over Q(i).  The eigenvalues are
/// found by exact rational root search on the characteristic polynomial;
/// inputs whose eigenvalues leave Q(i) are rejected.
namespace detail {

struct GaussianInt {
    mpz_class re, im;
};

inline bool divides(const GaussianInt& d, const GaussianInt& g) {
    mpz_class n = d.re * d.re + d.im * d.im;
    if (n == 0) return false;
    mpz_class re = g.re * d.re + g.im * d.im;
    mpz_class im = g.im * d.re - g.re * d.im;
    return re % n == 0 && im % n == 0;
}

inline std::vector<GaussianInt> gaussian_divisors(const GaussianInt& g) {
    mpz_class norm = g.re * g.re + g.im * g.im;
    if (norm == 0) throw PreconditionError("divisors of zero requested");
    if (norm > mpz_class("1000000000000"))
        throw PreconditionError("rational root search: coefficients too large");
    std::vector<mpz_class> norm_divisors;
    for (mpz_class d = 1; d * d <= norm; ++d) {
        if (norm % d == 0) {
            norm_divisors.push_back(d);
            if (d * d != norm) norm_divisors.push_back(norm / d);
        }
    }
    std::vector<GaussianInt> out;
    for (const auto& m : norm_divisors) {
        // x^2 + y^2 = m with x > 0, y >= 0 covers each associate class once
        for (mpz_class x = 1; x * x <= m; ++x) {
            mpz_class y2 = m - x * x;
            mpz_class y = sqrt(y2);
            if (y * y != y2) continue;
            GaussianInt cand{x, y};
            if (divides(cand, g)) out.push_back(cand);
        }
    }
    return out;
}

inline std::vector<GaussianRational> rational_roots(const Poly& p_in) {
    // returns roots with multiplicity; throws if the polynomial does not split
    Poly p = p_in;
    std::vector<GaussianRational> roots;
    while (p.degree() > 0 && p.coeff(0).is_zero()) {
        roots.emplace_back(0);
        p = Poly::exact_div(p, Poly({GaussianRational(0), GaussianRational(1)}));
    }
    if (p.degree() == 0) return roots;
    // clear denominators
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) {
        lcm = lcm * c.re().get_den() / gcd(lcm, c.re().get_den());
        lcm = lcm * c.im().get_den() / gcd(lcm, c.im().get_den());
    }
    Poly q = GaussianRational(Rational(lcm)) * p;
    GaussianInt a0{q.coeff(0).re().get_num(), q.coeff(0).im().get_num()};
    GaussianInt an{q.leading().re().get_num(), q.leading().im().get_num()};
    std::vector<GaussianRational> candidates;
    const GaussianRational I = GaussianRational::i();
    for (const auto& num : gaussian_divisors(a0))
        for (const auto& den : gaussian_divisors(an)) {
            GaussianRational base = GaussianRational(Rational(num.re), Rational(num.im)) /
                                    GaussianRational(Rational(den.re), Rational(den.im));
            GaussianRational u(1);
            for (int t = 0; t < 4; ++t) {
                candidates.push_back(u * base);
                u *= I;
            }
        }
    for (const auto& cand : candidates) {
        while (p.degree() > 0 && p.eval(cand).is_zero()) {
            roots.push_back(cand);
            p = Poly::exact_div(p, Poly({-cand, GaussianRational(1)}));
        }
        if (p.degree() == 0) break;
    }
    if (p.degree() != 0)
        throw PreconditionError("matrix has an eigenvalue outside Q(i)");
    return roots;
}

}  // namespace detail

inline std::pair<Composition, Signature> matrix_spectral_type(const ScalarMatrix& x) {
    if (!x.is_square()) throw PreconditionError("spectral type of non-square matrix");
    int n = x.rows();
    Poly chi = characteristic_polynomial(x);
    std::vector<GaussianRational> roots = detail::rational_roots(chi);
    std::vector<GaussianRational> distinct;
    for (const auto& r : roots)
        if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
    std::sort(distinct.begin(), distinct.end());

    std::vector<int> parts;
    Signature sig;
    for (const auto& lambda : distinct) {
        ScalarMatrix shifted = x;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= lambda;
        ScalarMatrix power = matrix_power(shifted, n);
        int dim = n - scalar_rank(power);  // generalized eigenspace dimension
        parts.push_back(dim);
        // image dimensions of the nilpotent part restricted to the eigenspace:
        // ker((X-l)^p) sits inside the generalized eigenspace for every p
        std::vector<int> chain{dim};
        ScalarMatrix pw = shifted;
        for (int p = 1; p <= n; ++p) {
            int im_dim = dim - (n - scalar_rank(pw));
            if (im_dim <= 0) break;
            chain.push_back(im_dim);
            pw = pw * shifted;
        }
        sig.push_back(std::move(chain));
    }
    return {Composition(std::move(parts)), std::move(sig)};
}

}  // namespace htl
