#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "htl/orbit.hpp"

namespace htl {

/// Global meromorphic connection data on the trivial bundle: one principal
/// part per pole.  On the projective line the residues must sum to zero.
struct ConnectionData {
    std::vector<PrincipalPart> parts;
    bool residue_sum_zero = false;

    int n() const { return parts.empty() ? 0 : parts.front().n(); }
};

inline ConnectionData assemble(std::vector<PrincipalPart> parts) {
    if (parts.empty()) throw ValidationError("assemble: no principal parts");
    for (size_t a = 0; a < parts.size(); ++a)
        for (size_t b = a + 1; b < parts.size(); ++b)
            if (parts[a].pole == parts[b].pole) throw ValidationError("assemble: duplicate poles");
    int n = parts.front().n();
    ScalarMatrix sum = scalar_zero(n, n);
    for (const auto& pp : parts) {
        if (pp.n() != n) throw ValidationError("assemble: rank mismatch");
        sum = sum + residue_moment(pp);
    }
    ConnectionData data;
    data.parts = std::move(parts);
    data.residue_sum_zero = is_zero(sum);
    return data;
}

/// Moment of the diagonal constant action: the sum of all residues.
inline ScalarMatrix moment_sum(const ConnectionData& data) {
    ScalarMatrix sum = scalar_zero(data.n(), data.n());
    for (const auto& pp : data.parts) sum = sum + residue_moment(pp);
    return sum;
}

/// Burnside span test: the tuple of coefficient matrices is irreducible iff
/// the unital algebra they generate is the full matrix algebra.  The span
/// dimension is computed over Q(i); it matches the complex dimension of the
/// generated algebra.
inline bool is_irreducible(const std::vector<PrincipalPart>& parts) {
    if (parts.empty()) throw PreconditionError("is_irreducible: no parts");
    int n = parts.front().n();
    std::vector<ScalarMatrix> generators;
    for (const auto& pp : parts)
        for (const auto& coeff : pp.coeffs) generators.push_back(coeff);

    // span basis in vectorized echelon form; seeded with the identity
    std::vector<std::vector<GaussianRational>> echelon;  // reduced rows
    std::vector<ScalarMatrix> basis;
    auto try_insert = [&](const ScalarMatrix& m) {
        std::vector<GaussianRational> v(static_cast<size_t>(n) * n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) v[static_cast<size_t>(r) * n + c] = m.at(r, c);
        for (const auto& row : echelon) {
            size_t lead = 0;
            while (lead < row.size() && row[lead].is_zero()) ++lead;
            if (lead < v.size() && !v[lead].is_zero()) {
                GaussianRational f = v[lead];
                for (size_t i = lead; i < v.size(); ++i) v[i] -= f * row[i];
            }
        }
        size_t lead = 0;
        while (lead < v.size() && v[lead].is_zero()) ++lead;
        if (lead == v.size()) return false;
        GaussianRational inv = v[lead].inverse();
        for (size_t i = lead; i < v.size(); ++i) v[i] *= inv;
        echelon.push_back(std::move(v));
        basis.push_back(m);
        return true;
    };

    try_insert(scalar_identity(n));
    size_t frontier_begin = 0;
    while (frontier_begin < basis.size() && static_cast<int>(basis.size()) < n * n) {
        size_t frontier_end = basis.size();
        for (size_t b = frontier_begin; b < frontier_end; ++b)
            for (const auto& g : generators) {
                try_insert(g * basis[b]);
                if (static_cast<int>(basis.size()) == n * n) return true;
            }
        frontier_begin = frontier_end;
    }
    return static_cast<int>(basis.size()) == n * n;
}

/// Coordinate-subspace invariance probe: the smallest proper nonempty subset
/// of basis vectors spanning a simultaneous invariant subspace, if one exists.
/// One-sided: its absence does not certify irreducibility.
inline std::optional<std::vector<int>> invariant_coordinate_subspace(const std::vector<PrincipalPart>& parts) {
    if (parts.empty()) throw PreconditionError("invariant_coordinate_subspace: no parts");
    int n = parts.front().n();
    std::vector<ScalarMatrix> generators;
    for (const auto& pp : parts)
        for (const auto& coeff : pp.coeffs) generators.push_back(coeff);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        bool ok = true;
        for (const auto& g : generators) {
            for (int col = 0; col < n && ok; ++col) {
                if (!(mask & (1u << col))) continue;
                for (int row = 0; row < n && ok; ++row)
                    if (!(mask & (1u << row)) && !g.at(row, col).is_zero()) ok = false;
            }
            if (!ok) break;
        }
        if (ok) {
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) subset.push_back(i);
            return subset;
        }
    }
    return std::nullopt;
}

/// Collection of normal forms over several poles with the trace-residue
/// constraint sum_a res tr H_a = 0.
struct HTLCollection {
    std::vector<GaussianRational> poles;
    std::vector<HTLForm> forms;

    void validate() const {
        if (poles.size() != forms.size() || poles.empty()) throw ValidationError("collection: shape mismatch");
        for (size_t a = 0; a < poles.size(); ++a)
            for (size_t b = a + 1; b < poles.size(); ++b)
                if (poles[a] == poles[b]) throw ValidationError("collection: duplicate poles");
        GaussianRational tr(0);
        for (const auto& f : forms) {
            f.validate();
            for (int i = 0; i < f.n; ++i) tr += f.S[0][static_cast<size_t>(i)];
        }
        if (!tr.is_zero()) throw ValidationError("collection: residue traces do not sum to zero");
    }
};

struct CollectionLocalData {
    GaussianRational original_pole;
    SetPartition stratum;
    std::vector<LocalForm> local;  // points already re-centered globally
    std::vector<SpectralType> types;
};

struct CollectionUnfolding {
    std::vector<CollectionLocalData> per_pole;
    GaussianRational residue_trace_sum;  // over all new poles; stays zero
};

/// Unfold every member of the collection; local poles move to a + c_j and
/// must stay disjoint across different original poles.
inline CollectionUnfolding unfold_collection(const HTLCollection& coll, const std::vector<UnfoldParams>& params) {
    coll.validate();
    if (params.size() != coll.poles.size()) throw PreconditionError("unfold_collection: one parameter vector per pole");
    CollectionUnfolding out;
    for (size_t a = 0; a < coll.poles.size(); ++a) {
        const HTLForm& h = coll.forms[a];
        if (params[a].k() != h.k) throw PreconditionError("unfold_collection: parameter length mismatch");
        CollectionLocalData data;
        data.original_pole = coll.poles[a];
        data.stratum = classify_point(params[a].c);
        for (auto& lf : local_forms(h, params[a])) {
            data.types.push_back(htl_spectral_type(lf.form));
            lf.point = lf.point + coll.poles[a];
            data.local.push_back(std::move(lf));
        }
        out.per_pole.push_back(std::move(data));
    }
    for (size_t a = 0; a < out.per_pole.size(); ++a)
        for (size_t b = a + 1; b < out.per_pole.size(); ++b)
            for (const auto& x : out.per_pole[a].local)
                for (const auto& y : out.per_pole[b].local)
                    if (x.point == y.point)
                        throw PreconditionError("unfold_collection: pole collision between different singularities");
    GaussianRational tr(0);
    for (const auto& data : out.per_pole)
        for (const auto& lf : data.local)
            for (int i = 0; i < lf.form.n; ++i) tr += lf.form.S[0][static_cast<size_t>(i)];
    out.residue_trace_sum = tr;
    return out;
}

/// One stratum entry of the rank-2 pole-order-4 worked example.
struct PainleveStratum {
    std::string name;
    SetPartition partition;
    std::vector<GaussianRational> sample;       // a member of the stratum inside the deformation space
    std::vector<int> pole_orders;               // per local form
    std::vector<SpectralType> types;
};

struct Painleve2Report {
    HTLForm form;
    std::vector<PainleveStratum> strata;
    std::vector<std::pair<std::string, std::string>> hasse_edges;
};

/// The degeneration family of the rank-2, pole-order-4 normal form: five
/// stratum types with representative partitions, a sample point each, the
/// local data, and the restricted Hasse diagram II-III-IV-V-VI.
inline Painleve2Report painleve2_family(const std::vector<GaussianRational>& a,
                                        const std::vector<GaussianRational>& b) {
    if (a.size() != 4 || b.size() != 4) throw ValidationError("painleve2_family: expected 4+4 scalars");
    if (a[3] == b[3]) throw ValidationError("painleve2_family: leading coefficients must differ");
    std::vector<std::vector<GaussianRational>> s;
    for (int i = 0; i <= 3; ++i) s.push_back({a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]});
    HTLForm h = HTLForm::semisimple(2, 3, std::move(s));

    Painleve2Report report;
    report.form = h;
    const std::vector<std::pair<std::string, SetPartition>> representatives = {
        {"II", SetPartition({{0, 1, 2, 3}})},
        {"III", SetPartition({{0, 1}, {2, 3}})},
        {"IV", SetPartition({{0}, {1, 2, 3}})},
        {"V", SetPartition({{0}, {1}, {2, 3}})},
        {"VI", SetPartition({{0}, {1}, {2}, {3}})},
    };
    for (const auto& [name, partition] : representatives) {
        PainleveStratum entry;
        entry.name = name;
        entry.partition = partition;
        // deterministic sample: increasing integer block values, shifted until
        // the point enters the deformation space
        int r = partition.block_count();
        bool found = false;
        for (long shift = 0; shift < 64 && !found; ++shift) {
            std::vector<GaussianRational> values;
            for (int j = 0; j < r; ++j) values.emplace_back(static_cast<long>(j) * (shift + 1) + (j ? shift : 0));
            auto c = embed_stratum_point(partition, values);
            if (!dh_membership(h, UnfoldParams(c)).member) continue;
            entry.sample = c;
            found = true;
        }
        if (!found) throw InternalError("painleve2_family: no stratum sample found in the deformation space");
        auto locals = local_forms(h, UnfoldParams(entry.sample));
        for (const auto& lf : locals) {
            entry.pole_orders.push_back(lf.form.k + 1);
            entry.types.push_back(htl_spectral_type(lf.form));
        }
        report.strata.push_back(std::move(entry));
    }
    // restricted Hasse diagram: covering relations among the representatives
    for (size_t x = 0; x < representatives.size(); ++x)
        for (size_t y = 0; y < representatives.size(); ++y) {
            if (x == y) continue;
            const auto& finer = representatives[x].second;
            const auto& coarser = representatives[y].second;
            if (!(partition_leq(coarser, finer)) || coarser == finer) continue;
            bool covering = true;
            for (size_t z = 0; z < representatives.size() && covering; ++z) {
                if (z == x || z == y) continue;
                const auto& mid = representatives[z].second;
                if (partition_leq(coarser, mid) && partition_leq(mid, finer) && !(mid == coarser) && !(mid == finer))
                    covering = false;
            }
            if (covering) report.hasse_edges.emplace_back(representatives[x].first, representatives[y].first);
        }
    return report;
}

}  // namespace htl
