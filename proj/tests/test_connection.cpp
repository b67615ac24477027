#include <catch2/catch_amalgamated.hpp>

#include "htl/connection.hpp"
#include "htl/verify.hpp"

using namespace htl;

namespace {
GaussianRational q(long a, long b = 1) { return GaussianRational(Rational(a, b)); }
}

TEST_CASE("assemble: residue-sum flag and duplicate poles") {
    verify::Rng rng(71);
    PrincipalPart a, b;
    a.pole = q(0);
    b.pole = q(1);
    a.coeffs = {rng.matrix(2, 2)};
    b.coeffs = {-a.coeffs[0]};
    REQUIRE(assemble({a, b}).residue_sum_zero);

    PrincipalPart lone;
    lone.pole = q(0);
    lone.coeffs = {diagonal_matrix({q(1), q(0)})};
    REQUIRE(!assemble({lone}).residue_sum_zero);

    PrincipalPart dup = a;
    REQUIRE_THROWS_AS(assemble({a, dup}), ValidationError);

    for (int t = 0; t < 30; ++t) {
        PrincipalPart x, y;
        x.pole = q(0);
        y.pole = q(1);
        x.coeffs = {rng.matrix(2, 2), rng.matrix(2, 2)};
        y.coeffs = {rng.matrix(2, 2)};
        ScalarMatrix sum = x.coeffs[0] + y.coeffs[0];
        REQUIRE(assemble({x, y}).residue_sum_zero == is_zero(sum));
    }
}

TEST_CASE("irreducibility: worked examples") {
    PrincipalPart diag;
    diag.pole = q(0);
    diag.coeffs = {diagonal_matrix({q(1), q(2)})};
    REQUIRE(!is_irreducible({diag}));

    PrincipalPart swap_pair;
    swap_pair.pole = q(0);
    ScalarMatrix e12 = scalar_zero(2, 2), e21 = scalar_zero(2, 2);
    e12.at(0, 1) = q(1);
    e21.at(1, 0) = q(1);
    swap_pair.coeffs = {e12, e21};
    REQUIRE(is_irreducible({swap_pair}));

    PrincipalPart zero;
    zero.pole = q(0);
    zero.coeffs = {scalar_zero(3, 3), scalar_zero(3, 3)};
    REQUIRE(!is_irreducible({zero}));
}

TEST_CASE("irreducibility is invariant under simultaneous conjugation") {
    verify::Rng rng(72);
    for (int t = 0; t < 40; ++t) {
        int n = static_cast<int>(rng.integer(2, 3));
        PrincipalPart pp;
        pp.pole = q(0);
        for (int i = 0; i < 2; ++i) pp.coeffs.push_back(rng.matrix(n, n, -1, 1));
        ScalarMatrix g = scalar_identity(n) + project_shape(rng.matrix(n, n), Composition({1, n - 1}), BlockShape::LowerNil);
        PrincipalPart conj = pp;
        ScalarMatrix gi = scalar_inverse(g);
        for (auto& c : conj.coeffs) c = g * c * gi;
        REQUIRE(is_irreducible({pp}) == is_irreducible({conj}));
    }
}

TEST_CASE("coordinate-subspace probe is one-sided but consistent") {
    // a coordinate invariant subspace forces reducibility
    verify::Rng rng(73);
    for (int t = 0; t < 40; ++t) {
        int n = static_cast<int>(rng.integer(2, 3));
        PrincipalPart pp;
        pp.pole = q(0);
        for (int i = 0; i < 2; ++i) pp.coeffs.push_back(rng.matrix(n, n, -1, 1));
        auto subspace = invariant_coordinate_subspace({pp});
        if (subspace.has_value()) REQUIRE(!is_irreducible({pp}));
        if (is_irreducible({pp})) REQUIRE(!subspace.has_value());
    }
    // the known gap: reducible with no coordinate-aligned invariant subspace
    PrincipalPart sym;
    sym.pole = q(0);
    ScalarMatrix s = scalar_zero(2, 2);
    s.at(0, 1) = q(1);
    s.at(1, 0) = q(1);
    sym.coeffs = {s};
    REQUIRE(!is_irreducible({sym}));
    REQUIRE(!invariant_coordinate_subspace({sym}).has_value());
}

TEST_CASE("moment sum: zero level set and equivariance") {
    verify::Rng rng(74);
    for (int t = 0; t < 30; ++t) {
        int n = 3;
        PrincipalPart a, b;
        a.pole = q(0);
        b.pole = q(5);
        a.coeffs = {rng.matrix(n, n), rng.matrix(n, n)};
        b.coeffs = {-a.coeffs[0], rng.matrix(n, n)};
        ConnectionData data = assemble({a, b});
        REQUIRE(is_zero(moment_sum(data)));
        // equivariance
        ScalarMatrix g = scalar_identity(n);
        g.at(2, 0) = q(3);
        g.at(1, 0) = q(-1);
        ConnectionData conj = data;
        ScalarMatrix gi = scalar_inverse(g);
        for (auto& pp : conj.parts)
            for (auto& c : pp.coeffs) c = g * c * gi;
        REQUIRE(moment_sum(conj) == g * moment_sum(data) * gi);
    }
}

TEST_CASE("collection validation") {
    HTLCollection bad;
    bad.poles = {q(0), q(1)};
    bad.forms = {HTLForm::semisimple(2, 0, {{q(1), q(0)}}), HTLForm::semisimple(2, 0, {{q(1), q(0)}})};
    REQUIRE_THROWS_AS(bad.validate(), ValidationError);
    HTLCollection good = bad;
    good.forms[1] = HTLForm::semisimple(2, 0, {{q(-1), q(0)}});
    REQUIRE_NOTHROW(good.validate());
    HTLCollection dup = good;
    dup.poles = {q(0), q(0)};
    REQUIRE_THROWS_AS(dup.validate(), ValidationError);
}

TEST_CASE("collection unfolding: identity at zero, recentering, collisions") {
    HTLCollection coll;
    coll.poles = {q(0), q(10)};
    coll.forms = {HTLForm::semisimple(2, 1, {{q(1), q(2)}, {q(1), q(-1)}}),
                  HTLForm::semisimple(2, 0, {{q(-1), q(-2)}})};
    auto at_zero = unfold_collection(coll, {UnfoldParams::zeros(1), UnfoldParams::zeros(0)});
    REQUIRE(at_zero.per_pole.size() == 2);
    REQUIRE(at_zero.per_pole[0].local.size() == 1);
    REQUIRE(at_zero.per_pole[0].local[0].form == coll.forms[0]);
    REQUIRE(at_zero.per_pole[0].local[0].point == q(0));
    REQUIRE(at_zero.per_pole[1].local[0].point == q(10));
    REQUIRE(at_zero.residue_trace_sum.is_zero());

    auto split = unfold_collection(coll, {UnfoldParams({q(0), q(3)}), UnfoldParams({q(0)})});
    REQUIRE(split.per_pole[0].local.size() == 2);
    REQUIRE(split.per_pole[0].local[0].point == q(0));
    REQUIRE(split.per_pole[0].local[1].point == q(3));
    REQUIRE(split.residue_trace_sum.is_zero());

    // the unfolded pole of the first singularity lands on the second one
    REQUIRE_THROWS_AS(unfold_collection(coll, {UnfoldParams({q(0), q(10)}), UnfoldParams({q(0)})}),
                      PreconditionError);
}

TEST_CASE("painleve family: stratum data and hasse diagram") {
    auto rep = painleve2_family({q(0), q(1), q(3), q(1)}, {q(0), q(2), q(4), q(-1)});
    REQUIRE(rep.strata.size() == 5);
    REQUIRE(rep.strata[0].name == "II");
    REQUIRE(rep.strata[0].pole_orders == std::vector<int>{4});
    // the full-collision sample reproduces the input form
    REQUIRE(rep.strata[0].sample == std::vector<GaussianRational>(4, q(0)));
    REQUIRE(rep.strata[1].name == "III");
    REQUIRE(rep.strata[1].pole_orders == std::vector<int>{2, 2});
    for (const auto& t : rep.strata[1].types) {
        REQUIRE(t.chain.size() == 2);
        REQUIRE(t.chain[0].parts() == std::vector<int>{1, 1});
        REQUIRE(t.chain[1].parts() == std::vector<int>{1, 1});
    }
    REQUIRE(rep.strata[2].pole_orders == std::vector<int>{1, 3});
    REQUIRE(rep.strata[3].pole_orders == std::vector<int>{1, 1, 2});
    REQUIRE(rep.strata[4].pole_orders == std::vector<int>{1, 1, 1, 1});
    for (const auto& t : rep.strata[4].types) REQUIRE(t.chain.size() == 1);

    std::set<std::pair<std::string, std::string>> edges(rep.hasse_edges.begin(), rep.hasse_edges.end());
    std::set<std::pair<std::string, std::string>> expect = {
        {"VI", "V"}, {"V", "IV"}, {"V", "III"}, {"IV", "II"}, {"III", "II"}};
    REQUIRE(edges == expect);

    REQUIRE_THROWS_AS(painleve2_family({q(0), q(1), q(3), q(1)}, {q(0), q(2), q(4), q(1)}), ValidationError);
    REQUIRE_THROWS_AS(painleve2_family({q(0)}, {q(0)}), ValidationError);
}
