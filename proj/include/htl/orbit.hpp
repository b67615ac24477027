#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "htl/unfold.hpp"

namespace htl {

/// Principal part at a pole: (A_k/z_a^k + ... + A_1/z_a + A_0) dz_a/z_a.
struct PrincipalPart {
    GaussianRational pole;
    std::vector<ScalarMatrix> coeffs;  // A_0..A_k

    int order() const { return static_cast<int>(coeffs.size()); }
    int n() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }

    static PrincipalPart from_htl(const HTLForm& h, const GaussianRational& pole) {
        PrincipalPart pp;
        pp.pole = pole;
        for (int v = 0; v <= h.k; ++v) {
            ScalarMatrix a = diagonal_matrix(h.S[static_cast<size_t>(v)]);
            if (v == 0) a = a + h.N0;
            pp.coeffs.push_back(std::move(a));
        }
        return pp;
    }

    /// Reads the coefficients back as an HTL normal form; the off-diagonal
    /// content of A_0 becomes the nilpotent part and must commute.
    HTLForm to_htl() const {
        int nn = n();
        std::vector<std::vector<GaussianRational>> s(coeffs.size(), std::vector<GaussianRational>(static_cast<size_t>(nn)));
        ScalarMatrix n0 = scalar_zero(nn, nn);
        for (size_t v = 0; v < coeffs.size(); ++v)
            for (int r = 0; r < nn; ++r)
                for (int c = 0; c < nn; ++c) {
                    if (r == c) {
                        s[v][static_cast<size_t>(r)] = coeffs[v].at(r, r);
                    } else if (!coeffs[v].at(r, c).is_zero()) {
                        if (v != 0) throw ValidationError("principal part is not in normal form");
                        n0.at(r, c) = coeffs[v].at(r, c);
                    }
                }
        return {nn, static_cast<int>(coeffs.size()) - 1, std::move(s), std::move(n0)};
    }

    friend bool operator==(const PrincipalPart& a, const PrincipalPart& b) {
        return a.pole == b.pole && a.coeffs == b.coeffs;
    }
};

inline PrincipalPart from_matrix_part(const MatrixPrincipalPartData& d) { return {d.point, d.coeffs}; }

/// The residue coefficient A_0; the moment of the constant-group action.
inline ScalarMatrix residue_moment(const PrincipalPart& pp) {
    if (pp.coeffs.empty()) throw PreconditionError("residue_moment: empty principal part");
    return pp.coeffs.front();
}

/// Coadjoint action on a principal part: the class of g H g^{-1} with
/// non-negative powers discarded.  Arithmetic happens in the local model at
/// the pole, i.e. with all deformation parameters equal to zero.
inline PrincipalPart coadjoint_action(const RingMatrix& g, const PrincipalPart& pp) {
    int level = static_cast<int>(pp.coeffs.size()) - 1;
    const UnfoldParams& p = g.at(0, 0).params();
    if (p.k() != level || !p.all_zero())
        throw PreconditionError("coadjoint_action: gauge matrix must live over the local model at the pole");
    FormMatrix h = form_matrix_from_coefficients(pp.coeffs, p, level);
    FormMatrix moved = gauge_transform(g, h);
    PrincipalPart out;
    out.pole = pp.pole;
    for (int v = 0; v <= level; ++v) out.coeffs.push_back(form_coefficient(moved, v));
    return out;
}

/// Constant conjugacy between two semisimple normal forms, when one exists:
/// a permutation matrix matching the multisets of eigenvalue tuples.
inline std::optional<ScalarMatrix> normal_form_conjugacy(const HTLForm& h, const HTLForm& hp) {
    if (!is_zero(h.N0) || !is_zero(hp.N0))
        throw PreconditionError("normal_form_conjugacy: only the semisimple case is supported");
    if (h.n != hp.n || h.k != hp.k) return std::nullopt;
    auto tuple_of = [](const HTLForm& f, int idx) {
        std::vector<GaussianRational> t;
        for (int l = 0; l <= f.k; ++l) t.push_back(f.S[static_cast<size_t>(l)][static_cast<size_t>(idx)]);
        return t;
    };
    std::vector<bool> used(static_cast<size_t>(h.n), false);
    std::vector<int> dest(static_cast<size_t>(h.n), -1);
    for (int j = 0; j < h.n; ++j) {
        auto t = tuple_of(h, j);
        bool found = false;
        for (int i = 0; i < h.n && !found; ++i) {
            if (used[static_cast<size_t>(i)] || tuple_of(hp, i) != t) continue;
            used[static_cast<size_t>(i)] = true;
            dest[static_cast<size_t>(j)] = i;
            found = true;
        }
        if (!found) return std::nullopt;
    }
    return permutation_matrix(dest);
}

/// One step of the triangular coordinates: a unipotent lower factor and a
/// covector stored as an upper-patterned matrix of polar one-forms.
struct StepCoords {
    RingMatrix group;   // level l-1, identity + lower pattern, zero constant coefficient
    FormMatrix dual;    // level l-1, upper pattern, zero simple-pole coefficient
};

/// Affine coordinates of the orbit of the irregular type: one StepCoords per
/// level l = 2..k, over a chain of compositions m_0 <= ... <= m_k (with the
/// formal m_{k+1} = (n)).
struct TriangularCoords {
    UnfoldParams params;
    std::vector<Composition> chain;  // m_0..m_k, contiguous adapted blocks
    std::vector<StepCoords> steps;   // steps[t] is level l = t+2

    int k() const { return static_cast<int>(chain.size()) - 1; }
    int n() const { return chain.front().n(); }
    Composition coarse_of(int l) const { return l + 1 <= k() ? chain[static_cast<size_t>(l) + 1] : Composition::trivial(n()); }
    const Composition& fine_of(int l) const { return chain[static_cast<size_t>(l)]; }

    static TriangularCoords identity(const HTLForm& h, const UnfoldParams& params) {
        if (!is_adapted(h)) throw PreconditionError("triangular coordinates require an adapted normal form");
        if (params.k() != h.k) throw PreconditionError("parameter length mismatch");
        TriangularCoords tc;
        tc.params = params;
        tc.chain = htl_spectral_data(h).type.chain;
        for (int l = 2; l <= h.k; ++l)
            tc.steps.push_back(StepCoords{ring_identity_matrix(h.n, params, l - 1), form_zero_matrix(h.n, params, l - 1)});
        return tc;
    }

    void validate() const {
        if (chain.empty()) throw ValidationError("triangular coordinates: empty chain");
        if (static_cast<int>(steps.size()) != std::max(0, k() - 1))
            throw ValidationError("triangular coordinates: wrong number of steps");
        for (size_t t = 0; t < steps.size(); ++t) {
            int l = static_cast<int>(t) + 2;
            const Composition& fine = fine_of(l);
            Composition coarse = coarse_of(l);
            const RingMatrix& g = steps[t].group;
            const FormMatrix& xi = steps[t].dual;
            if (g.rows() != n() || xi.rows() != n()) throw ValidationError("triangular coordinates: size mismatch");
            if (g.at(0, 0).level() != l - 1 || xi.at(0, 0).level() != l - 1)
                throw ValidationError("triangular coordinates: level mismatch");
            RingMatrix x = g - ring_identity_matrix(n(), params, l - 1);
            if (!(project_relative_shape(x, fine, coarse, BlockShape::LowerNil) == x))
                throw ValidationError("triangular coordinates: group factor violates the lower pattern");
            if (!is_zero(ring_coefficient(x, 0)))
                throw ValidationError("triangular coordinates: group factor has a constant part");
            if (!(project_relative_shape(xi, fine, coarse, BlockShape::UpperNil) == xi))
                throw ValidationError("triangular coordinates: dual factor violates the upper pattern");
            if (!is_zero(form_coefficient(xi, 0)))
                throw ValidationError("triangular coordinates: dual factor has a simple-pole part");
        }
    }
};

/// The irregular part of the unfolding as a one-form matrix: coefficients
/// S_k..S_1 with no simple-pole term.
inline FormMatrix unfold_irregular_type(const HTLForm& h, const UnfoldParams& c) {
    std::vector<ScalarMatrix> coeffs;
    coeffs.push_back(scalar_zero(h.n, h.n));
    for (int l = 1; l <= h.k; ++l) coeffs.push_back(diagonal_matrix(h.S[static_cast<size_t>(l)]));
    return form_matrix_from_coefficients(coeffs, c, h.k);
}

namespace detail {

inline RingMatrix embed_ring_matrix(const RingMatrix& m, int level) {
    return m.map([&](const RingElement& e) { return e.truncated(level); });
}

}  // namespace detail

/// Realization of a coordinate tuple as an orbit element.  The group factors
/// act by conjugation on the irregular type and each covector is translated
/// through the partial products:
///
///   g = n_k n_{k-1} ... n_2,            a_l = n_k ... n_{l+1},
///   M_l = n_l proj(n_l^{-1} xi_l n_l) n_l^{-1}   (upper pattern projection),
///   result = g H g^{-1} + sum_l a_l M_l a_l^{-1}.
///
/// The full matrix representative is returned; the simple-pole coefficient is
/// invisible to the duality with the based subalgebra but carries the residue
/// data used by the fiber realization.
inline FormMatrix coords_to_orbit(const TriangularCoords& tc, const FormMatrix& h_irr) {
    tc.validate();
    int k = tc.k(), nn = tc.n();
    if (h_irr.rows() != nn || h_irr.at(0, 0).level() != k || h_irr.at(0, 0).params() != tc.params)
        throw PreconditionError("coords_to_orbit: irregular type does not match the coordinates");
    if (!is_zero(form_coefficient(h_irr, 0)))
        throw PreconditionError("coords_to_orbit: irregular type must have no simple-pole term");

    RingMatrix g = ring_identity_matrix(nn, tc.params, k);
    for (int l = k; l >= 2; --l) g = g * detail::embed_ring_matrix(tc.steps[static_cast<size_t>(l - 2)].group, k);
    FormMatrix result = g * h_irr * ring_matrix_inverse(g);

    RingMatrix a = ring_identity_matrix(nn, tc.params, k);  // running product n_k ... n_{l+1}
    for (int l = k; l >= 2; --l) {
        const StepCoords& step = tc.steps[static_cast<size_t>(l - 2)];
        RingMatrix n_inv = ring_matrix_inverse(step.group);
        FormMatrix inner = project_relative_shape(n_inv * step.dual * step.group, tc.fine_of(l), tc.coarse_of(l),
                                                  BlockShape::UpperNil);
        FormMatrix m = step.group * inner * n_inv;
        FormMatrix m_k = form_matrix_extended(m, k);
        result = result + a * m_k * ring_matrix_inverse(a);
        a = a * detail::embed_ring_matrix(step.group, k);
    }
    return result;
}

/// Residue-type moment of the triangular coordinates, valued in the dual of
/// the stabilizer Levi block:
///
///   res(tc) = -proj_{Levi(m_1)} sum_l [simple-pole coeff of a_l M_l a_l^{-1}],
///   M_l = n_l proj(n_l^{-1} xi_l n_l) n_l^{-1},   a_l = n_k ... n_{l+1},
///
/// i.e. exactly the covector terms of the orbit realization, evaluated along
/// constant directions of the stabilizer.  Linear in the covectors; vanishes
/// when they vanish.
inline ScalarMatrix res_map(const TriangularCoords& tc) {
    tc.validate();
    int k = tc.k(), nn = tc.n();
    ScalarMatrix acc = scalar_zero(nn, nn);
    RingMatrix a = ring_identity_matrix(nn, tc.params, k);  // running product n_k ... n_{l+1}
    for (int l = k; l >= 2; --l) {
        const StepCoords& step = tc.steps[static_cast<size_t>(l - 2)];
        RingMatrix n_inv = ring_matrix_inverse(step.group);
        FormMatrix inner = project_relative_shape(n_inv * step.dual * step.group, tc.fine_of(l), tc.coarse_of(l),
                                                  BlockShape::UpperNil);
        FormMatrix m = step.group * inner * n_inv;
        FormMatrix conj = a * form_matrix_extended(m, k) * ring_matrix_inverse(a);
        acc = acc + form_coefficient(conj, 0);
        a = a * detail::embed_ring_matrix(step.group, k);
    }
    if (tc.chain.size() >= 2) return project_shape(-acc, tc.chain[1], BlockShape::Levi);
    return -acc;
}

/// Extended moment: Levi projection of the cotangent term plus the residue
/// moment of the coordinates.  Cotangent points are (g, P) with the covector
/// right-trivialized at the identity, so the group moment is g^{-1} P g.
inline ScalarMatrix mu_ext(const ScalarMatrix& g, const ScalarMatrix& p, const TriangularCoords& tc) {
    if (tc.chain.size() < 2) throw PreconditionError("mu_ext: needs at least two levels");
    ScalarMatrix moment = scalar_inverse(g) * p * g;
    return project_shape(moment, tc.chain[1], BlockShape::Levi) + res_map(tc);
}

/// Groupoid multiplication on coefficient tuples (X_0..X_{l-1}) in the lower
/// pattern: transport through phi_c, multiply, pull back.
inline std::vector<ScalarMatrix> groupoid_mul(const std::vector<ScalarMatrix>& x, const std::vector<ScalarMatrix>& y,
                                              const UnfoldParams& params, const Composition& fine,
                                              const Composition& coarse) {
    if (x.size() != y.size() || x.empty()) throw PreconditionError("groupoid_mul: tuple length mismatch");
    int level = static_cast<int>(x.size()) - 1;
    int nn = x.front().rows();
    for (const auto& t : {x, y})
        for (const auto& m : t)
            if (!(project_relative_shape(m, fine, coarse, BlockShape::LowerNil) == m))
                throw PreconditionError("groupoid_mul: tuple violates the lower pattern");
    RingMatrix gx = ring_identity_matrix(nn, params, level) + ring_matrix_from_coefficients(x, params, level);
    RingMatrix gy = ring_identity_matrix(nn, params, level) + ring_matrix_from_coefficients(y, params, level);
    RingMatrix prod = gx * gy;
    std::vector<ScalarMatrix> out;
    for (int i = 0; i <= level; ++i) out.push_back(ring_coefficient(prod, i));
    out[0] = out[0] - scalar_identity(nn);
    return out;
}

inline std::vector<ScalarMatrix> groupoid_inverse(const std::vector<ScalarMatrix>& x, const UnfoldParams& params,
                                                  const Composition& fine, const Composition& coarse) {
    int level = static_cast<int>(x.size()) - 1;
    int nn = x.front().rows();
    for (const auto& m : x)
        if (!(project_relative_shape(m, fine, coarse, BlockShape::LowerNil) == m))
            throw PreconditionError("groupoid_inverse: tuple violates the lower pattern");
    RingMatrix g = ring_identity_matrix(nn, params, level) + ring_matrix_from_coefficients(x, params, level);
    RingMatrix inv = ring_matrix_inverse(g);
    std::vector<ScalarMatrix> out;
    for (int i = 0; i <= level; ++i) out.push_back(ring_coefficient(inv, i));
    out[0] = out[0] - scalar_identity(nn);
    return out;
}

/// Algebroid bracket on coefficient tuples through psi_c.
inline std::vector<ScalarMatrix> algebroid_bracket(const std::vector<ScalarMatrix>& x,
                                                   const std::vector<ScalarMatrix>& y, const UnfoldParams& params) {
    if (x.size() != y.size() || x.empty()) throw PreconditionError("algebroid_bracket: tuple length mismatch");
    int level = static_cast<int>(x.size()) - 1;
    RingMatrix gx = ring_matrix_from_coefficients(x, params, level);
    RingMatrix gy = ring_matrix_from_coefficients(y, params, level);
    RingMatrix br = bracket(gx, gy);
    std::vector<ScalarMatrix> out;
    for (int i = 0; i <= level; ++i) out.push_back(ring_coefficient(br, i));
    return out;
}

/// Coadjoint action of a lower-unipotent factor on an upper-patterned dual
/// element: conjugate and project back onto the dual pattern (upper blocks,
/// no simple-pole coefficient).
inline FormMatrix deformed_coadjoint(const RingMatrix& n, const FormMatrix& xi, const Composition& fine,
                                     const Composition& coarse) {
    RingMatrix x = n - ring_identity_matrix(n.rows(), n.at(0, 0).params(), n.at(0, 0).level());
    if (!(project_relative_shape(x, fine, coarse, BlockShape::LowerNil) == x))
        throw PreconditionError("deformed_coadjoint: group factor violates the lower pattern");
    FormMatrix conj = n * xi * ring_matrix_inverse(n);
    FormMatrix out = project_relative_shape(conj, fine, coarse, BlockShape::UpperNil);
    for (int r = 0; r < out.rows(); ++r)
        for (int s = 0; s < out.cols(); ++s) {
            auto coeffs = out.at(r, s).coeffs();
            coeffs[0] = GaussianRational(0);
            out.at(r, s) = OneFormElement(out.at(r, s).params(), out.at(r, s).level(), std::move(coeffs));
        }
    return out;
}

/// Assemble the full rational matrix described by the coordinates (orbit
/// realization plus the residue tail) and split it by the stratum of the
/// parameters into one principal part per distinct pole.
inline std::vector<PrincipalPart> realize_fiber(const TriangularCoords& tc, const HTLForm& h) {
    if (tc.params.k() != h.k) throw PreconditionError("realize_fiber: parameter length mismatch");
    DeformationSpaceReport report = dh_membership(h, tc.params);
    if (!report.member) throw PreconditionError("realize_fiber: parameters outside the deformation space");
    FormMatrix orbit = coords_to_orbit(tc, unfold_irregular_type(h, tc.params));
    ScalarMatrix tail = diagonal_matrix(h.S[0]) + h.N0;
    FormMatrix assembled = orbit + form_matrix_term(tail, tc.params, h.k, 0);
    SetPartition stratum = classify_point(tc.params.c);
    std::vector<PrincipalPart> out;
    for (const auto& part : matrix_partial_fractions(assembled, stratum)) out.push_back(from_matrix_part(part));
    return out;
}

}  // namespace htl
