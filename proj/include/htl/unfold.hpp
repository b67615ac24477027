#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "htl/spectral.hpp"

namespace htl {

/// First level at (or above) which two blocks of level i merge, minus i.
/// Level k+1 counts as the single formal block, so 1 <= d <= k+1-i.
inline int merge_distance(const SpectralData& data, int i, int j, int jp) {
    int k = static_cast<int>(data.level_blocks.size()) - 1;
    if (j == jp) throw PreconditionError("merge_distance: blocks must differ");
    int bj = j, bjp = jp;
    for (int l = i; l < k; ++l) {
        bj = data.type.maps[static_cast<size_t>(l)].target[static_cast<size_t>(bj)];
        bjp = data.type.maps[static_cast<size_t>(l)].target[static_cast<size_t>(bjp)];
        if (bj == bjp) return l + 1 - i;
    }
    return k + 1 - i;
}

/// alpha_{<i,j>}(x) = sum_{i<=l<=k} s^{(l)} prod_{l<v<=k} (x_i - x_v).
inline GaussianRational alpha(const HTLForm& h, const SpectralData& data, int i, int j,
                              const std::vector<GaussianRational>& x) {
    if (static_cast<int>(x.size()) != h.k + 1) throw PreconditionError("alpha: argument length mismatch");
    if (i < 0 || i > h.k) throw PreconditionError("alpha: level out of range");
    if (j < 0 || j >= data.type.chain[static_cast<size_t>(i)].size())
        throw PreconditionError("alpha: block index out of range");
    GaussianRational acc(0);
    GaussianRational tail(1);  // prod_{l<v<=k}(x_i - x_v), accumulated downward
    for (int l = h.k; l >= i; --l) {
        acc += data.eigenvalue(h, i, j, l) * tail;
        tail *= x[static_cast<size_t>(i)] - x[static_cast<size_t>(l)];
    }
    return acc;
}

/// alpha*_{i;j,j'}(x): the cofactor of alpha_{<i,j>} - alpha_{<i,j'>} after
/// removing the forced vanishing factors prod_{i+d<=v<=k}(x_i - x_v).
inline GaussianRational alpha_star(const HTLForm& h, const SpectralData& data, int i, int j, int jp,
                                   const std::vector<GaussianRational>& x) {
    if (static_cast<int>(x.size()) != h.k + 1) throw PreconditionError("alpha_star: argument length mismatch");
    int d = merge_distance(data, i, j, jp);
    GaussianRational acc(0);
    GaussianRational tail(1);  // prod_{l<v<=i+d-1}(x_i - x_v)
    for (int l = i + d - 1; l >= i; --l) {
        acc += (data.eigenvalue(h, i, j, l) - data.eigenvalue(h, i, jp, l)) * tail;
        tail *= x[static_cast<size_t>(i)] - x[static_cast<size_t>(l)];
    }
    return acc;
}

struct DeformationSpaceReport {
    bool member = true;
    std::vector<std::tuple<int, int, int>> violated;  // (i, j, j') with alpha* = 0
};

/// Membership in the deformation space: no alpha* vanishes at c, over levels
/// i = 0..k-1 and unordered block pairs j < j'.
inline DeformationSpaceReport dh_membership(const HTLForm& h, const UnfoldParams& c) {
    if (c.k() != h.k) throw PreconditionError("dh_membership: parameter length mismatch");
    SpectralData data = htl_spectral_data(h);
    DeformationSpaceReport report;
    for (int i = 0; i < h.k; ++i) {
        int m = data.type.chain[static_cast<size_t>(i)].size();
        for (int j = 0; j < m; ++j)
            for (int jp = j + 1; jp < m; ++jp)
                if (alpha_star(h, data, i, j, jp, c.c).is_zero()) report.violated.emplace_back(i, j, jp);
    }
    report.member = report.violated.empty();
    return report;
}

/// H(c) as a matrix of polar one-forms at level k.  In the standard basis the
/// unfolding keeps the coefficients of H itself: the coefficient of
/// dz/((z-c_0)...(z-c_l)) is S_l, plus N_0 on the simple-pole term.
inline FormMatrix unfold_htl(const HTLForm& h, const UnfoldParams& c) {
    if (c.k() != h.k) throw PreconditionError("unfold_htl: parameter length mismatch");
    std::vector<ScalarMatrix> coeffs;
    for (int l = 0; l <= h.k; ++l) {
        ScalarMatrix a = diagonal_matrix(h.S[static_cast<size_t>(l)]);
        if (l == 0) a = a + h.N0;
        coeffs.push_back(std::move(a));
    }
    return form_matrix_from_coefficients(coeffs, c, h.k);
}

/// One local normal form of the unfolded connection, in the coordinate z - point.
struct LocalForm {
    GaussianRational point;
    HTLForm form;
};

/// Matrix partial fractions of a form matrix over the stratum of a partition.
struct MatrixPrincipalPartData {
    GaussianRational point;
    std::vector<ScalarMatrix> coeffs;  // coeffs[v] is the 1/(z-point)^{v+1} dz coefficient
};

inline std::vector<MatrixPrincipalPartData> matrix_partial_fractions(const FormMatrix& w,
                                                                     const SetPartition& partition) {
    int n = w.rows();
    const UnfoldParams& p = w.at(0, 0).params();
    int level = w.at(0, 0).level();
    auto blocks = partition.restricted_to(level);
    std::vector<MatrixPrincipalPartData> parts(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b) {
        parts[b].point = p.at(blocks[b].second.front());
        parts[b].coeffs.assign(blocks[b].second.size(), scalar_zero(n, n));
    }
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            auto entry_parts = partial_fractions(w.at(r, s), partition);
            for (size_t b = 0; b < entry_parts.size(); ++b)
                for (size_t v = 0; v < entry_parts[b].coeffs.size(); ++v)
                    parts[b].coeffs[v].at(r, s) = entry_parts[b].coeffs[v];
        }
    return parts;
}

/// Split H(c) into one HTL normal form per distinct pole.  Requires c in the
/// deformation space; the nilpotent part travels with the block containing 0.
inline std::vector<LocalForm> local_forms(const HTLForm& h, const UnfoldParams& c) {
    DeformationSpaceReport report = dh_membership(h, c);
    if (!report.member) throw PreconditionError("local_forms: parameters outside the deformation space");
    SetPartition stratum = classify_point(c.c);
    FormMatrix unfolded = unfold_htl(h, c);
    auto parts = matrix_partial_fractions(unfolded, stratum);
    std::vector<LocalForm> out;
    for (size_t b = 0; b < parts.size(); ++b) {
        int order = static_cast<int>(parts[b].coeffs.size());
        std::vector<std::vector<GaussianRational>> s(static_cast<size_t>(order));
        ScalarMatrix n0 = scalar_zero(h.n, h.n);
        for (int v = 0; v < order; ++v) {
            s[static_cast<size_t>(v)].resize(static_cast<size_t>(h.n));
            ScalarMatrix coeff = parts[b].coeffs[static_cast<size_t>(v)];
            for (int i = 0; i < h.n; ++i) s[static_cast<size_t>(v)][static_cast<size_t>(i)] = coeff.at(i, i);
            for (int r = 0; r < h.n; ++r)
                for (int col = 0; col < h.n; ++col) {
                    if (r == col || coeff.at(r, col).is_zero()) continue;
                    if (v != 0 || b != 0)
                        throw InternalError("local_forms: off-diagonal entry outside the residue of the 0-block");
                    n0.at(r, col) = coeff.at(r, col);
                }
        }
        LocalForm lf;
        lf.point = parts[b].point;
        try {
            lf.form = HTLForm(h.n, order - 1, std::move(s), std::move(n0));
        } catch (const ValidationError& e) {
            throw InternalError(std::string("local_forms: split violates the normal-form shape: ") + e.what());
        }
        out.push_back(std::move(lf));
    }
    return out;
}

/// Stratum-wise prediction: the sub-chain of compositions indexed by each
/// block of the partition, with composed refinement maps; the signature is
/// attached to the block containing 0 and is trivial elsewhere.
inline std::vector<SpectralType> predicted_spectral_types(const HTLForm& h, const SetPartition& partition) {
    partition.validate();
    if (partition.ground_size() != h.k + 1) throw PreconditionError("predicted_spectral_types: partition of {0..k} required");
    SpectralData data = htl_spectral_data(h);
    std::vector<SpectralType> out;
    for (int b = 0; b < partition.block_count(); ++b) {
        const auto& levels = partition.blocks()[static_cast<size_t>(b)];
        SpectralType t;
        for (int lvl : levels) t.chain.push_back(data.type.chain[static_cast<size_t>(lvl)]);
        for (size_t step = 0; step + 1 < levels.size(); ++step) {
            // compose the refinement maps from level i_[b,step] to i_[b,step+1]
            int from = levels[step], to = levels[step + 1];
            RefinementMap composed;
            int m = data.type.chain[static_cast<size_t>(from)].size();
            for (int j = 0; j < m; ++j) {
                int cur = j;
                for (int l = from; l < to; ++l) cur = data.type.maps[static_cast<size_t>(l)].target[static_cast<size_t>(cur)];
                composed.target.push_back(cur);
            }
            composed.validate(t.chain[step], t.chain[step + 1]);
            t.maps.push_back(std::move(composed));
        }
        if (b == 0) {
            t.signature = data.type.signature;
        } else {
            for (int j = 0; j < t.chain.front().size(); ++j) t.signature.push_back({t.chain.front().part(j)});
        }
        t.validate();
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace htl
