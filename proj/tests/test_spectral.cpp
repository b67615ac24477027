#include <catch2/catch_amalgamated.hpp>

#include "htl/spectral.hpp"
#include "htl/verify.hpp"

using namespace htl;

namespace {
GaussianRational q(long a, long b = 1) { return GaussianRational(Rational(a, b)); }
}

TEST_CASE("matrix spectral type: worked examples") {
    auto [c1, s1] = matrix_spectral_type(diagonal_matrix({q(1), q(2)}));
    REQUIRE(c1.parts() == std::vector<int>{1, 1});
    REQUIRE(signature_is_trivial(s1));

    ScalarMatrix nil = scalar_zero(2, 2);
    nil.at(0, 1) = q(1);
    auto [c2, s2] = matrix_spectral_type(nil);
    REQUIRE(c2.parts() == std::vector<int>{2});
    REQUIRE(s2 == Signature{{2, 1}});

    auto [c3, s3] = matrix_spectral_type(diagonal_matrix({q(5), q(5)}));
    REQUIRE(c3.parts() == std::vector<int>{2});
    REQUIRE(signature_is_trivial(s3));
}

TEST_CASE("matrix spectral type: gaussian eigenvalues and rejections") {
    ScalarMatrix rot = scalar_zero(2, 2);
    rot.at(0, 1) = q(1);
    rot.at(1, 0) = q(-1);  // eigenvalues +i, -i
    auto [comp, sig] = matrix_spectral_type(rot);
    REQUIRE(comp.parts() == std::vector<int>{1, 1});
    REQUIRE(signature_is_trivial(sig));

    ScalarMatrix irr = scalar_zero(2, 2);
    irr.at(0, 1) = q(1);
    irr.at(1, 0) = q(2);  // eigenvalues +-sqrt(2)
    REQUIRE_THROWS_AS(matrix_spectral_type(irr), PreconditionError);
}

TEST_CASE("matrix spectral type: jordan structure via exact ranks") {
    // two Jordan blocks of sizes 2 and 1 at eigenvalue 3, one simple eigenvalue 1/2
    int n = 4;
    ScalarMatrix x = scalar_zero(n, n);
    x.at(0, 0) = q(3);
    x.at(1, 1) = q(3);
    x.at(0, 1) = q(1);
    x.at(2, 2) = q(3);
    x.at(3, 3) = q(1, 2);
    auto [comp, sig] = matrix_spectral_type(x);
    REQUIRE(comp.parts() == std::vector<int>{1, 3});  // eigenvalues sorted: 1/2 before 3
    REQUIRE(sig[0] == std::vector<int>{1});
    REQUIRE(sig[1] == std::vector<int>{3, 1});
}

TEST_CASE("htl spectral type: worked examples") {
    HTLForm pii = HTLForm::semisimple(2, 3, {{q(0), q(0)}, {q(1), q(2)}, {q(3), q(4)}, {q(1), q(-1)}});
    SpectralType t = htl_spectral_type(pii);
    REQUIRE(t.chain.size() == 4);
    for (const auto& comp : t.chain) REQUIRE(comp.parts() == std::vector<int>{1, 1});
    REQUIRE(signature_is_trivial(t.signature));

    ScalarMatrix nil = scalar_zero(2, 2);
    nil.at(1, 0) = q(1);
    HTLForm all_zero(2, 3, {{q(0), q(0)}, {q(0), q(0)}, {q(0), q(0)}, {q(0), q(0)}}, nil);
    SpectralType t2 = htl_spectral_type(all_zero);
    for (const auto& comp : t2.chain) REQUIRE(comp.parts() == std::vector<int>{2});
    REQUIRE(t2.signature == Signature{{2, 1}});

    HTLForm fuchsian = HTLForm::semisimple(2, 0, {{q(1), q(2)}});
    SpectralType t3 = htl_spectral_type(fuchsian);
    REQUIRE(t3.chain.size() == 1);
    REQUIRE(t3.chain[0].parts() == std::vector<int>{1, 1});
    REQUIRE(signature_is_trivial(t3.signature));
}

TEST_CASE("htl spectral type is invariant under simultaneous permutation") {
    verify::Rng rng(31);
    for (int t = 0; t < 40; ++t) {
        int n = static_cast<int>(rng.integer(2, 5));
        int k = static_cast<int>(rng.integer(0, 3));
        HTLForm h = rng.random_form(n, k, rng.integer(0, 1) == 0);
        std::vector<int> dest(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) dest[static_cast<size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) std::swap(dest[static_cast<size_t>(i)], dest[static_cast<size_t>(rng.integer(0, i))]);
        HTLForm hp = conjugate_by_permutation(h, dest);
        REQUIRE(same_spectral_type(htl_spectral_type(h), htl_spectral_type(hp)));
    }
}

TEST_CASE("refinement sums and signature bounds hold on generated types") {
    verify::Rng rng(32);
    for (int t = 0; t < 40; ++t) {
        int n = static_cast<int>(rng.integer(2, 5));
        int k = static_cast<int>(rng.integer(0, 3));
        HTLForm h = rng.random_form(n, k, true);
        SpectralType type = htl_spectral_type(h);
        REQUIRE_NOTHROW(type.validate());
        for (const auto& comp : type.chain) REQUIRE(comp.n() == n);
        for (const auto& sig : type.signature) {
            for (size_t i = 0; i + 1 < sig.size(); ++i) REQUIRE(sig[i] > sig[i + 1]);
            REQUIRE(sig.back() > 0);
        }
        if (is_zero(h.N0)) REQUIRE(signature_is_trivial(type.signature));
    }
}

TEST_CASE("canonical order: idempotence, comparator, monotone maps") {
    // two level-0 blocks with tuples (1,.) and (-1,.); the (-1,.) block comes first
    HTLForm h = HTLForm::semisimple(2, 1, {{q(7), q(8)}, {q(1), q(-1)}});
    SpectralData data = htl_spectral_data(h);
    REQUIRE(data.eigenvalue(h, 1, 0, 1) == q(-1));
    REQUIRE(data.eigenvalue(h, 1, 1, 1) == q(1));

    // canonical_order is the identity on already-sorted data
    std::vector<std::vector<std::vector<GaussianRational>>> tuples(data.level_blocks.size());
    for (size_t lvl = 0; lvl < data.level_blocks.size(); ++lvl)
        for (const auto& blk : data.level_blocks[lvl]) {
            std::vector<GaussianRational> tuple;
            for (int l = static_cast<int>(lvl); l <= h.k; ++l)
                tuple.push_back(h.S[static_cast<size_t>(l)][static_cast<size_t>(blk.front())]);
            tuples[lvl].push_back(std::move(tuple));
        }
    SpectralType sorted = canonical_order(data.type, tuples);
    REQUIRE(sorted.chain == data.type.chain);
    REQUIRE(sorted.signature == data.type.signature);
    for (size_t i = 0; i < sorted.maps.size(); ++i) REQUIRE(sorted.maps[i].target == data.type.maps[i].target);

    // scrambled input gets re-sorted with monotone maps
    verify::Rng rng(33);
    for (int t = 0; t < 30; ++t) {
        int n = static_cast<int>(rng.integer(2, 5));
        int k = static_cast<int>(rng.integer(1, 3));
        HTLForm hr = rng.random_form(n, k, false);
        SpectralData dr = htl_spectral_data(hr);
        for (const auto& map : dr.type.maps) REQUIRE(map.is_monotone());
    }
}

TEST_CASE("structural fingerprints distinguish chains") {
    HTLForm a = HTLForm::semisimple(2, 1, {{q(0), q(0)}, {q(1), q(2)}});
    HTLForm b = HTLForm::semisimple(2, 1, {{q(0), q(1)}, {q(3), q(3)}});
    REQUIRE(!same_spectral_type(htl_spectral_type(a), htl_spectral_type(b)));
    HTLForm c = HTLForm::semisimple(2, 1, {{q(9), q(9)}, {q(-5), q(4)}});
    REQUIRE(same_spectral_type(htl_spectral_type(a), htl_spectral_type(c)));
}

TEST_CASE("htl form validation") {
    REQUIRE_THROWS_AS(HTLForm(2, 1, {{q(0), q(0)}}, scalar_zero(2, 2)), ValidationError);
    ScalarMatrix not_nilpotent = scalar_identity(2);
    REQUIRE_THROWS_AS(HTLForm(2, 0, {{q(0), q(0)}}, not_nilpotent), ValidationError);
    // nilpotent part must commute with every diagonal
    ScalarMatrix nil = scalar_zero(2, 2);
    nil.at(0, 1) = q(1);
    REQUIRE_THROWS_AS(HTLForm(2, 0, {{q(1), q(2)}}, nil), ValidationError);
    REQUIRE_NOTHROW(HTLForm(2, 0, {{q(1), q(1)}}, nil));
}

TEST_CASE("adapting permutation produces contiguous blocks") {
    verify::Rng rng(34);
    for (int t = 0; t < 30; ++t) {
        int n = static_cast<int>(rng.integer(2, 5));
        int k = static_cast<int>(rng.integer(0, 3));
        HTLForm h = rng.random_form(n, k, false);
        std::vector<int> dest(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) dest[static_cast<size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) std::swap(dest[static_cast<size_t>(i)], dest[static_cast<size_t>(rng.integer(0, i))]);
        HTLForm scrambled = conjugate_by_permutation(h, dest);
        HTLForm adapted = conjugate_by_permutation(scrambled, adapting_permutation(scrambled));
        REQUIRE(is_adapted(adapted));
        REQUIRE(same_spectral_type(htl_spectral_type(scrambled), htl_spectral_type(adapted)));
    }
}
