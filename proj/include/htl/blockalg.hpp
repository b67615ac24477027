#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "htl/matrix.hpp"
#include "htl/ring.hpp"

namespace htl {

/// Composition of n: ordered parts, possibly with zeros (weak composition).
class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_)
            if (p < 0) throw ValidationError("composition parts must be non-negative");
        offsets_.resize(parts_.size() + 1, 0);
        for (size_t i = 0; i < parts_.size(); ++i) offsets_[i + 1] = offsets_[i] + parts_[i];
    }
    static Composition trivial(int n) { return Composition({n}); }

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return static_cast<int>(parts_.size()); }
    int n() const { return offsets_.back(); }
    bool is_strict() const {
        for (int p : parts_)
            if (p == 0) return false;
        return true;
    }
    int offset(int block) const { return offsets_[static_cast<size_t>(block)]; }
    int part(int block) const { return parts_[static_cast<size_t>(block)]; }

    int block_of(int index) const {
        for (size_t b = 0; b + 1 < offsets_.size(); ++b)
            if (index >= offsets_[b] && index < offsets_[b + 1]) return static_cast<int>(b);
        throw PreconditionError("index outside composition range");
    }

    friend bool operator==(const Composition& a, const Composition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Composition& a, const Composition& b) { return !(a == b); }

private:
    std::vector<int> parts_;
    std::vector<int> offsets_;
};

/// Surjection from the blocks of a finer composition onto a coarser one with
/// the part-sum identity.
struct RefinementMap {
    std::vector<int> target;  // target[j] = block of the coarser composition

    void validate(const Composition& fine, const Composition& coarse) const {
        if (static_cast<int>(target.size()) != fine.size())
            throw ValidationError("refinement map arity mismatch");
        std::vector<int> sums(static_cast<size_t>(coarse.size()), 0);
        std::vector<bool> hit(static_cast<size_t>(coarse.size()), false);
        for (size_t j = 0; j < target.size(); ++j) {
            int t = target[j];
            if (t < 0 || t >= coarse.size()) throw ValidationError("refinement map target out of range");
            sums[static_cast<size_t>(t)] += fine.part(static_cast<int>(j));
            hit[static_cast<size_t>(t)] = true;
        }
        for (int i = 0; i < coarse.size(); ++i) {
            if (!hit[static_cast<size_t>(i)]) throw ValidationError("refinement map is not surjective");
            if (sums[static_cast<size_t>(i)] != coarse.part(i))
                throw ValidationError("refinement map violates the part-sum identity");
        }
    }

    bool is_monotone() const {
        for (size_t j = 1; j < target.size(); ++j)
            if (target[j] < target[j - 1]) return false;
        return true;
    }
};

enum class BlockShape { Levi, UpperNil, LowerNil, UpperParabolic, LowerParabolic };

/// Entry (r,s) membership in the block pattern cut out by one composition.
inline bool in_shape(const Composition& m, BlockShape shape, int r, int s) {
    int br = m.block_of(r), bs = m.block_of(s);
    switch (shape) {
        case BlockShape::Levi: return br == bs;
        case BlockShape::UpperNil: return br < bs;
        case BlockShape::LowerNil: return br > bs;
        case BlockShape::UpperParabolic: return br <= bs;
        case BlockShape::LowerParabolic: return br >= bs;
    }
    return false;
}

/// Relative pattern: inside the diagonal blocks of `coarse`, off-diagonal with
/// respect to `fine` (the two-composition nilpotent shapes).
inline bool in_relative_shape(const Composition& fine, const Composition& coarse, BlockShape shape, int r, int s) {
    if (coarse.block_of(r) != coarse.block_of(s)) return false;
    return in_shape(fine, shape, r, s);
}

template <typename T>
Matrix<T> project_shape(const Matrix<T>& m, const Composition& comp, BlockShape shape) {
    if (comp.n() != m.rows() || !m.is_square()) throw PreconditionError("composition does not match matrix size");
    Matrix<T> out = m;
    for (int r = 0; r < m.rows(); ++r)
        for (int s = 0; s < m.cols(); ++s)
            if (!in_shape(comp, shape, r, s)) out.at(r, s) = m.at(r, s) - m.at(r, s);
    return out;
}

template <typename T>
Matrix<T> project_relative_shape(const Matrix<T>& m, const Composition& fine, const Composition& coarse,
                                 BlockShape shape) {
    if (fine.n() != m.rows() || coarse.n() != m.rows() || !m.is_square())
        throw PreconditionError("composition does not match matrix size");
    Matrix<T> out = m;
    for (int r = 0; r < m.rows(); ++r)
        for (int s = 0; s < m.cols(); ++s)
            if (!in_relative_shape(fine, coarse, shape, r, s)) out.at(r, s) = m.at(r, s) - m.at(r, s);
    return out;
}

template <typename T>
bool matches_shape(const Matrix<T>& m, const Composition& comp, BlockShape shape) {
    return project_shape(m, comp, shape) == m;
}

using RingMatrix = Matrix<RingElement>;
using FormMatrix = Matrix<OneFormElement>;

inline RingMatrix ring_zero_matrix(int n, const UnfoldParams& p, int level) {
    return {n, n, RingElement::zero(p, level)};
}
inline RingMatrix ring_identity_matrix(int n, const UnfoldParams& p, int level) {
    RingMatrix m = ring_zero_matrix(n, p, level);
    for (int i = 0; i < n; ++i) m.at(i, i) = RingElement::one(p, level);
    return m;
}
inline FormMatrix form_zero_matrix(int n, const UnfoldParams& p, int level) {
    return {n, n, OneFormElement::zero(p, level)};
}

/// Constant matrix times the i-th standard ring basis element.
inline RingMatrix ring_matrix_term(const ScalarMatrix& a, const UnfoldParams& p, int level, int i) {
    RingMatrix m = ring_zero_matrix(a.rows(), p, level);
    for (int r = 0; r < a.rows(); ++r)
        for (int s = 0; s < a.cols(); ++s)
            if (!a.at(r, s).is_zero()) m.at(r, s) = a.at(r, s) * RingElement::basis(p, level, i);
    return m;
}
inline FormMatrix form_matrix_term(const ScalarMatrix& a, const UnfoldParams& p, int level, int m_index) {
    FormMatrix m = form_zero_matrix(a.rows(), p, level);
    for (int r = 0; r < a.rows(); ++r)
        for (int s = 0; s < a.cols(); ++s)
            if (!a.at(r, s).is_zero()) m.at(r, s) = a.at(r, s) * OneFormElement::basis(p, level, m_index);
    return m;
}

inline ScalarMatrix ring_coefficient(const RingMatrix& m, int i) {
    ScalarMatrix out = scalar_zero(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int s = 0; s < m.cols(); ++s) out.at(r, s) = m.at(r, s).coeff(i);
    return out;
}
inline ScalarMatrix form_coefficient(const FormMatrix& m, int idx) {
    ScalarMatrix out = scalar_zero(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int s = 0; s < m.cols(); ++s) out.at(r, s) = m.at(r, s).coeff(idx);
    return out;
}

inline RingMatrix ring_matrix_from_coefficients(const std::vector<ScalarMatrix>& coeffs, const UnfoldParams& p,
                                                int level) {
    if (static_cast<int>(coeffs.size()) != level + 1) throw PreconditionError("coefficient count != level+1");
    RingMatrix acc = ring_zero_matrix(coeffs[0].rows(), p, level);
    for (int i = 0; i <= level; ++i) acc = acc + ring_matrix_term(coeffs[static_cast<size_t>(i)], p, level, i);
    return acc;
}
inline FormMatrix form_matrix_from_coefficients(const std::vector<ScalarMatrix>& coeffs, const UnfoldParams& p,
                                                int level) {
    if (static_cast<int>(coeffs.size()) != level + 1) throw PreconditionError("coefficient count != level+1");
    FormMatrix acc = form_zero_matrix(coeffs[0].rows(), p, level);
    for (int i = 0; i <= level; ++i) acc = acc + form_matrix_term(coeffs[static_cast<size_t>(i)], p, level, i);
    return acc;
}

inline RingMatrix ring_matrix_truncated(const RingMatrix& m, int new_level) {
    return m.map([&](const RingElement& e) { return e.truncated(new_level); });
}
inline FormMatrix form_matrix_extended(const FormMatrix& m, int new_level) {
    return m.map([&](const OneFormElement& e) { return e.extended(new_level); });
}

inline bool is_zero(const RingMatrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (int s = 0; s < m.cols(); ++s)
            if (!m.at(r, s).is_zero()) return false;
    return true;
}
inline bool is_zero(const FormMatrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (int s = 0; s < m.cols(); ++s)
            if (!m.at(r, s).is_zero()) return false;
    return true;
}

/// Inverse over the quotient ring via jets at the distinct parameter values:
/// invert the truncated Taylor expansion at each point, then recombine.
inline RingMatrix ring_matrix_inverse(const RingMatrix& m) {
    if (!m.is_square()) throw PreconditionError("inverse of non-square matrix");
    int n = m.rows();
    const UnfoldParams& p = m.at(0, 0).params();
    int level = m.at(0, 0).level();
    SetPartition stratum = classify_point(p.c);
    auto blocks = stratum.restricted_to(level);

    std::vector<std::vector<Jet>> entry_jets(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) entry_jets[static_cast<size_t>(r) * n + s] = crt_split(m.at(r, s), stratum);

    std::vector<std::vector<Jet>> inv_jets(static_cast<size_t>(n) * n);
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        int mult = static_cast<int>(blocks[bi].second.size());
        GaussianRational point = p.at(blocks[bi].second.front());
        // jet matrices J_0..J_{mult-1}
        std::vector<ScalarMatrix> jc(static_cast<size_t>(mult), scalar_zero(n, n));
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s)
                for (int d = 0; d < mult; ++d)
                    jc[static_cast<size_t>(d)].at(r, s) = entry_jets[static_cast<size_t>(r) * n + s][bi].coeffs[static_cast<size_t>(d)];
        // series inverse: B_0 = J_0^{-1}; B_d = -B_0 sum_{e=1..d} J_e B_{d-e}
        ScalarMatrix b0 = scalar_inverse(jc[0]);  // throws if the value is singular
        std::vector<ScalarMatrix> binv{b0};
        for (int d = 1; d < mult; ++d) {
            ScalarMatrix acc = scalar_zero(n, n);
            for (int e = 1; e <= d; ++e) acc = acc + jc[static_cast<size_t>(e)] * binv[static_cast<size_t>(d - e)];
            binv.push_back((-(b0 * acc)));
        }
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                Jet jet;
                jet.point = point;
                jet.coeffs.resize(static_cast<size_t>(mult));
                for (int d = 0; d < mult; ++d) jet.coeffs[static_cast<size_t>(d)] = binv[static_cast<size_t>(d)].at(r, s);
                inv_jets[static_cast<size_t>(r) * n + s].push_back(std::move(jet));
            }
    }
    RingMatrix out = ring_zero_matrix(n, p, level);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) out.at(r, s) = crt_join(inv_jets[static_cast<size_t>(r) * n + s], p, level, stratum);
    return out;
}

inline bool has_identity_constant_term(const RingMatrix& g) {
    ScalarMatrix c0 = ring_coefficient(g, 0);
    return c0 == scalar_identity(g.rows());
}

struct LUDecomposition {
    RingMatrix lower;  // block unipotent lower
    RingMatrix levi;   // block diagonal
    RingMatrix upper;  // block unipotent upper
};

/// Block LDU factorization of g with identity constant term.  No pivoting:
/// the diagonal blocks stay invertible because their constant terms are
/// identities throughout the elimination.
inline LUDecomposition lu_decompose(const RingMatrix& g, const Composition& comp) {
    if (comp.n() != g.rows() || !g.is_square()) throw PreconditionError("composition does not match matrix size");
    if (!has_identity_constant_term(g))
        throw PreconditionError("lu_decompose: constant term must be the identity");
    const UnfoldParams& p = g.at(0, 0).params();
    int level = g.at(0, 0).level();
    int n = g.rows(), m = comp.size();

    auto block_view = [&](const RingMatrix& src, int br, int bs) {
        RingMatrix out(comp.part(br), comp.part(bs), RingElement::zero(p, level));
        for (int r = 0; r < comp.part(br); ++r)
            for (int s = 0; s < comp.part(bs); ++s) out.at(r, s) = src.at(comp.offset(br) + r, comp.offset(bs) + s);
        return out;
    };
    auto block_write = [&](RingMatrix& dst, int br, int bs, const RingMatrix& blockval) {
        for (int r = 0; r < blockval.rows(); ++r)
            for (int s = 0; s < blockval.cols(); ++s) dst.at(comp.offset(br) + r, comp.offset(bs) + s) = blockval.at(r, s);
    };

    RingMatrix a = g;
    RingMatrix lower = ring_identity_matrix(n, p, level);
    for (int col = 0; col < m; ++col) {
        if (comp.part(col) == 0) continue;
        RingMatrix pivot_inv = ring_matrix_inverse(block_view(a, col, col));
        for (int row = col + 1; row < m; ++row) {
            if (comp.part(row) == 0) continue;
            RingMatrix factor = block_view(a, row, col) * pivot_inv;
            block_write(lower, row, col, factor);
            for (int s = col; s < m; ++s) {
                if (comp.part(s) == 0) continue;
                block_write(a, row, s, block_view(a, row, s) - factor * block_view(a, col, s));
            }
        }
    }
    RingMatrix levi = ring_zero_matrix(n, p, level);
    RingMatrix upper = ring_identity_matrix(n, p, level);
    for (int b = 0; b < m; ++b) {
        if (comp.part(b) == 0) continue;
        RingMatrix d = block_view(a, b, b);
        block_write(levi, b, b, d);
        RingMatrix d_inv = ring_matrix_inverse(d);
        for (int s = b + 1; s < m; ++s) {
            if (comp.part(s) == 0) continue;
            block_write(upper, b, s, d_inv * block_view(a, b, s));
        }
    }
    return {std::move(lower), std::move(levi), std::move(upper)};
}

/// Lie bracket XY - YX for matrices of a common kind.
template <typename T>
Matrix<T> bracket(const Matrix<T>& x, const Matrix<T>& y) {
    return x * y - y * x;
}

/// -tr res_inf(A B): the duality between ring and one-form matrices.
inline GaussianRational trace_residue_pairing(const RingMatrix& a, const FormMatrix& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix shape mismatch");
    GaussianRational acc(0);
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) acc += pairing(a.at(i, k), b.at(k, i));
    return acc;
}

/// Gauge action on a principal-part matrix.  For principal parts the
/// derivative term (dg)g^{-1}dz is a polynomial matrix one-form and vanishes
/// in the quotient, so the class is the conjugate g H g^{-1}.
inline FormMatrix gauge_transform(const RingMatrix& g, const FormMatrix& h) {
    RingMatrix g_inv = ring_matrix_inverse(g);
    return g * h * g_inv;
}

}  // namespace htl
