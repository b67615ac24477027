#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "htl/connection.hpp"

namespace htl {

using Json = nlohmann::ordered_json;

inline Json to_json(const GaussianRational& v) { return v.str(); }

inline GaussianRational scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return GaussianRational(static_cast<long>(j.get<long long>()));
    if (!j.is_string()) throw ValidationError("scalar: expected a string like \"a/b+c/d*i\"");
    return GaussianRational::parse(j.get<std::string>());
}

inline Json to_json(const ScalarMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const HTLForm& h) {
    Json j;
    j["n"] = h.n;
    j["k"] = h.k;
    Json s = Json::array();
    for (const auto& diag : h.S) {
        Json row = Json::array();
        for (const auto& v : diag) row.push_back(to_json(v));
        s.push_back(std::move(row));
    }
    j["S"] = std::move(s);
    Json n0 = Json::array();
    for (int r = 0; r < h.n; ++r)
        for (int c = 0; c < h.n; ++c)
            if (!h.N0.at(r, c).is_zero()) n0.push_back(Json::array({r, c, to_json(h.N0.at(r, c))}));
    j["N0"] = std::move(n0);
    return j;
}

inline HTLForm htl_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("S"))
        throw ValidationError("HTL form: expected {n, k, S, N0}");
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    if (!j.at("S").is_array() || static_cast<int>(j.at("S").size()) != k + 1)
        throw ValidationError("HTL form: S must list k+1 diagonals");
    std::vector<std::vector<GaussianRational>> s;
    for (const auto& row : j.at("S")) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ValidationError("HTL form: each diagonal needs n entries");
        std::vector<GaussianRational> diag;
        for (const auto& v : row) diag.push_back(scalar_from_json(v));
        s.push_back(std::move(diag));
    }
    ScalarMatrix n0 = scalar_zero(n, n);
    if (j.contains("N0"))
        for (const auto& t : j.at("N0")) {
            if (!t.is_array() || t.size() != 3) throw ValidationError("HTL form: N0 entries are [row, col, value]");
            int r = t[0].get<int>(), c = t[1].get<int>();
            if (r < 0 || r >= n || c < 0 || c >= n) throw ValidationError("HTL form: N0 index out of range");
            n0.at(r, c) = scalar_from_json(t[2]);
        }
    return {n, k, std::move(s), std::move(n0)};
}

inline Json to_json(const SpectralType& t) {
    Json j;
    Json chain = Json::array();
    for (const auto& comp : t.chain) chain.push_back(comp.parts());
    j["chain"] = std::move(chain);
    Json maps = Json::array();
    for (const auto& m : t.maps) maps.push_back(m.target);
    j["maps"] = std::move(maps);
    j["signature"] = t.signature;
    return j;
}

inline Json to_json(const SetPartition& p) {
    Json j = Json::array();
    for (const auto& b : p.blocks()) j.push_back(b);
    return j;
}

inline SetPartition partition_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("partition: expected an array of blocks");
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j) blocks.push_back(b.get<std::vector<int>>());
    SetPartition p(std::move(blocks));
    p.validate();
    return p;
}

inline Json to_json(const DeformationSpaceReport& r) {
    Json j;
    j["member"] = r.member;
    Json v = Json::array();
    for (const auto& [i, a, b] : r.violated) v.push_back(Json::array({i, a, b}));
    j["violated"] = std::move(v);
    return j;
}

inline Json to_json(const LocalForm& lf) {
    Json j;
    j["point"] = to_json(lf.point);
    j["form"] = to_json(lf.form);
    return j;
}

inline Json to_json(const PrincipalPart& pp) {
    Json j;
    j["pole"] = to_json(pp.pole);
    Json coeffs = Json::array();
    for (const auto& c : pp.coeffs) coeffs.push_back(to_json(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline Json to_json(const HTLCollection& coll) {
    Json j;
    Json poles = Json::array();
    for (const auto& p : coll.poles) poles.push_back(to_json(p));
    j["poles"] = std::move(poles);
    Json forms = Json::array();
    for (const auto& f : coll.forms) forms.push_back(to_json(f));
    j["forms"] = std::move(forms);
    return j;
}

inline HTLCollection collection_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("poles") || !j.contains("forms"))
        throw ValidationError("collection: expected {poles, forms}");
    HTLCollection coll;
    for (const auto& p : j.at("poles")) coll.poles.push_back(scalar_from_json(p));
    for (const auto& f : j.at("forms")) coll.forms.push_back(htl_from_json(f));
    coll.validate();
    return coll;
}

inline std::vector<GaussianRational> scalars_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("expected an array of scalars");
    std::vector<GaussianRational> out;
    for (const auto& v : j) out.push_back(scalar_from_json(v));
    return out;
}

/// DOT rendering of the partition poset; arrows point from finer strata to
/// the coarser strata in their closure.
inline std::string strata_to_dot(const StratumPoset& poset) {
    std::string dot = "digraph strata {\n";
    for (const auto& p : poset.partitions) dot += "  \"" + p.str() + "\";\n";
    for (const auto& [finer, coarser] : poset.hasse_edges)
        dot += "  \"" + poset.partitions[static_cast<size_t>(finer)].str() + "\" -> \"" +
               poset.partitions[static_cast<size_t>(coarser)].str() + "\";\n";
    dot += "}\n";
    return dot;
}

inline std::string painleve_to_dot(const Painleve2Report& report) {
    std::string dot = "digraph painleve {\n";
    for (const auto& s : report.strata)
        dot += "  \"" + s.name + "\" [label=\"C_" + s.name + " (" + s.partition.str() + ")\"];\n";
    for (const auto& [finer, coarser] : report.hasse_edges) dot += "  \"" + finer + "\" -> \"" + coarser + "\";\n";
    dot += "}\n";
    return dot;
}

inline Json to_json(const Painleve2Report& report) {
    Json j;
    j["form"] = to_json(report.form);
    Json strata = Json::array();
    for (const auto& s : report.strata) {
        Json e;
        e["name"] = s.name;
        e["partition"] = to_json(s.partition);
        Json sample = Json::array();
        for (const auto& v : s.sample) sample.push_back(to_json(v));
        e["sample"] = std::move(sample);
        e["pole_orders"] = s.pole_orders;
        Json types = Json::array();
        for (const auto& t : s.types) types.push_back(to_json(t));
        e["spectral_types"] = std::move(types);
        strata.push_back(std::move(e));
    }
    j["strata"] = std::move(strata);
    Json edges = Json::array();
    for (const auto& [x, y] : report.hasse_edges) edges.push_back(Json::array({x, y}));
    j["hasse_edges"] = std::move(edges);
    return j;
}

}  // namespace htl
