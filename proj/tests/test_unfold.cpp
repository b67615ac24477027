#include <catch2/catch_amalgamated.hpp>

#include "htl/unfold.hpp"
#include "htl/verify.hpp"
#include "support/oracles.hpp"

using namespace htl;

namespace {
GaussianRational q(long a, long b = 1) { return GaussianRational(Rational(a, b)); }

HTLForm pii_form() { return HTLForm::semisimple(2, 3, {{q(0), q(0)}, {q(1), q(2)}, {q(3), q(4)}, {q(1), q(-1)}}); }
}  // namespace

TEST_CASE("alpha: zero data, direct expansion, specialization") {
    HTLForm zero = HTLForm::semisimple(2, 1, {{q(0), q(0)}, {q(0), q(0)}});
    SpectralData dz = htl_spectral_data(zero);
    REQUIRE(alpha(zero, dz, 0, 0, {q(7), q(-2)}).is_zero());

    // k=1, single index with s^{(0)}=2, s^{(1)}=7: alpha = 2(x0-x1)+7 at (3,1) -> 11
    HTLForm h(1, 1, {{q(2)}, {q(7)}}, scalar_zero(1, 1));
    SpectralData d = htl_spectral_data(h);
    REQUIRE(alpha(h, d, 0, 0, {q(3), q(1)}) == q(11));

    // at x=0 only the empty product survives: alpha = s^{(k)}
    verify::Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        HTLForm hr = rng.random_form(static_cast<int>(rng.integer(2, 4)), static_cast<int>(rng.integer(1, 3)), false);
        SpectralData dr = htl_spectral_data(hr);
        std::vector<GaussianRational> x(static_cast<size_t>(hr.k) + 1);
        for (int j = 0; j < dr.type.chain[0].size(); ++j)
            REQUIRE(alpha(hr, dr, 0, j, x) == dr.eigenvalue(hr, 0, j, hr.k));
    }
}

TEST_CASE("alpha difference factors through alpha_star") {
    verify::Rng rng(42);
    for (int t = 0; t < 40; ++t) {
        HTLForm h = rng.random_form(static_cast<int>(rng.integer(2, 5)), static_cast<int>(rng.integer(1, 3)), false);
        SpectralData data = htl_spectral_data(h);
        std::vector<GaussianRational> x;
        for (int i = 0; i <= h.k; ++i) x.push_back(rng.small_scalar());
        for (int i = 0; i < h.k; ++i) {
            int m = data.type.chain[static_cast<size_t>(i)].size();
            for (int j = 0; j < m; ++j)
                for (int jp = j + 1; jp < m; ++jp) {
                    int d = merge_distance(data, i, j, jp);
                    GaussianRational tail(1);
                    for (int v = i + d; v <= h.k; ++v) tail *= x[static_cast<size_t>(i)] - x[static_cast<size_t>(v)];
                    REQUIRE(alpha(h, data, i, j, x) - alpha(h, data, i, jp, x) ==
                            tail * alpha_star(h, data, i, j, jp, x));
                }
        }
    }
}

TEST_CASE("eigenvalues merge exactly at the merge distance") {
    verify::Rng rng(43);
    for (int t = 0; t < 40; ++t) {
        HTLForm h = rng.random_form(static_cast<int>(rng.integer(2, 5)), static_cast<int>(rng.integer(1, 3)), false);
        SpectralData data = htl_spectral_data(h);
        for (int i = 0; i <= h.k; ++i) {
            int m = data.type.chain[static_cast<size_t>(i)].size();
            for (int j = 0; j < m; ++j)
                for (int jp = j + 1; jp < m; ++jp) {
                    int d = merge_distance(data, i, j, jp);
                    // eigenvalues agree for l >= i+d and differ at l = i+d-1
                    for (int l = i + d; l <= h.k; ++l)
                        REQUIRE(data.eigenvalue(h, i, j, l) == data.eigenvalue(h, i, jp, l));
                    REQUIRE(i + d - 1 <= h.k);
                    REQUIRE(data.eigenvalue(h, i, j, i + d - 1) != data.eigenvalue(h, i, jp, i + d - 1));
                }
        }
    }
}

TEST_CASE("deformation space membership: worked examples") {
    // constant alpha*: member for every c
    HTLForm h1 = HTLForm::semisimple(2, 1, {{q(0), q(0)}, {q(1), q(-1)}});
    SpectralData d1 = htl_spectral_data(h1);
    GaussianRational a_star = alpha_star(h1, d1, 0, 0, 1, {q(123), q(-55)});
    REQUIRE((a_star == q(2) || a_star == q(-2)));
    REQUIRE(dh_membership(h1, UnfoldParams({q(9), q(9)})).member);

    // k=2 worked example: violations exactly on c_0 - c_2 = 2 and c_1 - c_2 = 2
    HTLForm h2 = HTLForm::semisimple(2, 2, {{q(0), q(0)}, {q(2), q(3)}, {q(1), q(-1)}});
    REQUIRE(!dh_membership(h2, UnfoldParams({q(2), q(5), q(0)})).member);
    REQUIRE(dh_membership(h2, UnfoldParams({q(0), q(5), q(0)})).member);
    REQUIRE(!dh_membership(h2, UnfoldParams({q(0), q(2), q(0)})).member);
    auto report = dh_membership(h2, UnfoldParams({q(2), q(5), q(0)}));
    REQUIRE(report.violated.size() == 1);
    REQUIRE(std::get<0>(report.violated.front()) == 0);
}

TEST_CASE("the origin always belongs to the deformation space") {
    verify::Rng rng(44);
    for (int t = 0; t < 40; ++t) {
        HTLForm h = rng.random_form(static_cast<int>(rng.integer(2, 5)), static_cast<int>(rng.integer(1, 3)),
                                    rng.integer(0, 1) == 0);
        REQUIRE(dh_membership(h, UnfoldParams::zeros(h.k)).member);
    }
}

TEST_CASE("unfolding: specialization at zero and coefficient constancy") {
    HTLForm h = pii_form();
    FormMatrix at_zero = unfold_htl(h, UnfoldParams::zeros(3));
    for (int l = 0; l <= 3; ++l) {
        ScalarMatrix expect = diagonal_matrix(h.S[static_cast<size_t>(l)]);
        if (l == 0) expect = expect + h.N0;
        REQUIRE(form_coefficient(at_zero, l) == expect);
    }
    // the standard-basis coefficients do not depend on the parameters
    FormMatrix generic = unfold_htl(h, UnfoldParams({q(0), q(2), q(5), q(7)}));
    for (int l = 0; l <= 3; ++l) REQUIRE(form_coefficient(generic, l) == form_coefficient(at_zero, l));
    REQUIRE_THROWS_AS(unfold_htl(h, UnfoldParams::zeros(2)), PreconditionError);
}

TEST_CASE("unfolding: explicit residues for a two-point split") {
    // n=2, k=1, S1=diag(1,-1), S0=0, c=(0,1): residues diag(-1,1)+S0 at 0 and diag(1,-1) at 1
    HTLForm h = HTLForm::semisimple(2, 1, {{q(0), q(0)}, {q(1), q(-1)}});
    UnfoldParams c({q(0), q(1)});
    auto locals = local_forms(h, c);
    REQUIRE(locals.size() == 2);
    REQUIRE(locals[0].point == q(0));
    REQUIRE(locals[1].point == q(1));
    ScalarMatrix r0 = residue_moment(PrincipalPart::from_htl(locals[0].form, locals[0].point));
    ScalarMatrix r1 = residue_moment(PrincipalPart::from_htl(locals[1].form, locals[1].point));
    REQUIRE(r0 == diagonal_matrix({q(-1), q(1)}));
    REQUIRE(r1 == diagonal_matrix({q(1), q(-1)}));
}

TEST_CASE("residue conservation across the unfolding") {
    verify::Rng rng(45);
    for (int t = 0; t < 40; ++t) {
        HTLForm h = rng.random_form(static_cast<int>(rng.integer(2, 4)), static_cast<int>(rng.integer(1, 3)),
                                    rng.integer(0, 1) == 0);
        auto partitions = all_partitions(h.k);
        const SetPartition& partition =
            partitions[static_cast<size_t>(rng.integer(0, static_cast<long>(partitions.size()) - 1))];
        UnfoldParams c = rng.stratum_sample(h, partition);
        auto locals = local_forms(h, c);
        ScalarMatrix sum = scalar_zero(h.n, h.n);
        for (const auto& lf : locals) sum = sum + residue_moment(PrincipalPart::from_htl(lf.form, lf.point));
        REQUIRE(sum == diagonal_matrix(h.S[0]) + h.N0);
    }
}

TEST_CASE("local forms: zero parameters reproduce the input") {
    HTLForm h = pii_form();
    auto locals = local_forms(h, UnfoldParams::zeros(3));
    REQUIRE(locals.size() == 1);
    REQUIRE(locals[0].point == q(0));
    REQUIRE(locals[0].form == h);
}

TEST_CASE("local forms: pole orders follow the stratum") {
    HTLForm h = pii_form();
    UnfoldParams c({q(0), q(0), q(1), q(1)});
    auto locals = local_forms(h, c);
    REQUIRE(locals.size() == 2);
    REQUIRE(locals[0].form.k + 1 == 2);
    REQUIRE(locals[1].form.k + 1 == 2);
    // sum reconstruction: the local forms recombine to the unfolded family
    FormMatrix unfolded = unfold_htl(h, c);
    SetPartition stratum = classify_point(c.c);
    for (int r = 0; r < h.n; ++r)
        for (int s = 0; s < h.n; ++s) {
            oracle::RationalFn sum;
            for (const auto& lf : locals) {
                Poly denom = Poly::constant(1);
                for (int v = 0; v <= lf.form.k; ++v) {
                    denom = denom * Poly::linear(lf.point);
                    GaussianRational coeff =
                        r == s ? lf.form.S[static_cast<size_t>(v)][static_cast<size_t>(r)]
                               : (v == 0 ? lf.form.N0.at(r, s) : q(0));
                    sum = sum + oracle::RationalFn(Poly::constant(coeff), denom);
                }
            }
            REQUIRE(sum == oracle::one_form_to_rational(unfolded.at(r, s)));
        }
}

TEST_CASE("local forms demand membership") {
    HTLForm h2 = HTLForm::semisimple(2, 2, {{q(0), q(0)}, {q(2), q(3)}, {q(1), q(-1)}});
    REQUIRE_THROWS_AS(local_forms(h2, UnfoldParams({q(2), q(5), q(0)})), PreconditionError);
}

TEST_CASE("predicted spectral types: degenerate partitions") {
    HTLForm h = pii_form();
    auto full = predicted_spectral_types(h, SetPartition::single_block(3));
    REQUIRE(full.size() == 1);
    REQUIRE(same_spectral_type(full[0], htl_spectral_type(h)));

    auto discrete = predicted_spectral_types(h, SetPartition::discrete(3));
    REQUIRE(discrete.size() == 4);
    for (const auto& t : discrete) {
        REQUIRE(t.chain.size() == 1);
        REQUIRE(t.chain[0].parts() == std::vector<int>{1, 1});
    }

    auto pairs = predicted_spectral_types(h, SetPartition({{0, 1}, {2, 3}}));
    REQUIRE(pairs.size() == 2);
    for (const auto& t : pairs) {
        REQUIRE(t.chain.size() == 2);
        REQUIRE(t.chain[0].parts() == std::vector<int>{1, 1});
        REQUIRE(t.chain[1].parts() == std::vector<int>{1, 1});
    }
}

TEST_CASE("stratum-wise spectral types match the prediction and are stratum-constant") {
    verify::Rng rng(46);
    for (int t = 0; t < 12; ++t) {
        HTLForm h = rng.random_form(static_cast<int>(rng.integer(2, 5)), static_cast<int>(rng.integer(1, 3)),
                                    rng.integer(0, 1) == 0);
        for (const auto& partition : all_partitions(h.k)) {
            auto predicted = predicted_spectral_types(h, partition);
            UnfoldParams c1 = rng.stratum_sample(h, partition);
            UnfoldParams c2 = rng.stratum_sample(h, partition);
            auto locals1 = local_forms(h, c1);
            auto locals2 = local_forms(h, c2);
            REQUIRE(locals1.size() == predicted.size());
            REQUIRE(locals2.size() == predicted.size());
            for (size_t j = 0; j < predicted.size(); ++j) {
                SpectralType t1 = htl_spectral_type(locals1[j].form);
                SpectralType t2 = htl_spectral_type(locals2[j].form);
                REQUIRE(same_spectral_type(t1, predicted[j]));
                REQUIRE(same_spectral_type(t2, predicted[j]));
                REQUIRE(same_spectral_type(t1, t2));
            }
        }
    }
}

TEST_CASE("the nilpotent part travels with the block containing zero") {
    ScalarMatrix nil = scalar_zero(2, 2);
    nil.at(1, 0) = q(1);
    HTLForm h(2, 2, {{q(1), q(1)}, {q(2), q(2)}, {q(3), q(3)}}, nil);
    UnfoldParams c({q(0), q(0), q(5)});
    auto locals = local_forms(h, c);
    REQUIRE(locals.size() == 2);
    REQUIRE(locals[0].point == q(0));
    REQUIRE(locals[0].form.N0 == nil);
    REQUIRE(is_zero(locals[1].form.N0));
    auto predicted = predicted_spectral_types(h, classify_point(c.c));
    REQUIRE(!signature_is_trivial(predicted[0].signature));
    REQUIRE(signature_is_trivial(predicted[1].signature));
}
