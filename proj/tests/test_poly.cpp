#include <catch2/catch_amalgamated.hpp>

#include "htl/poly.hpp"
#include "htl/verify.hpp"

using namespace htl;

namespace {
Poly random_poly(verify::Rng& rng, int max_degree) {
    std::vector<GaussianRational> c;
    int d = static_cast<int>(rng.integer(0, max_degree));
    for (int i = 0; i <= d; ++i) c.push_back(rng.small_scalar());
    return Poly(std::move(c));
}
}  // namespace

TEST_CASE("divmod reconstructs the dividend") {
    verify::Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        Poly a = random_poly(rng, 7);
        Poly b = random_poly(rng, 4);
        if (b.is_zero()) continue;
        auto [q, r] = Poly::divmod(a, b);
        REQUIRE(q * b + r == a);
        REQUIRE(r.degree() < b.degree());
    }
}

TEST_CASE("taylor shift matches evaluation") {
    verify::Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        Poly p = random_poly(rng, 6);
        GaussianRational c = rng.small_scalar();
        Poly shifted = p.shifted_to(c);
        // p(c + x) evaluated at a few points
        for (int s = 0; s < 3; ++s) {
            GaussianRational x = rng.small_scalar();
            REQUIRE(shifted.eval(x) == p.eval(c + x));
        }
        REQUIRE(shifted.coeff(0) == p.eval(c));
    }
}

TEST_CASE("series inverse is a modular inverse") {
    verify::Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        Poly p = random_poly(rng, 5);
        if (p.coeff(0).is_zero()) continue;
        int m = static_cast<int>(rng.integer(1, 6));
        Poly inv = p.series_inverse(m);
        Poly prod = p * inv;
        REQUIRE(prod.coeff(0) == GaussianRational(1));
        for (int i = 1; i < m; ++i) REQUIRE(prod.coeff(i).is_zero());
    }
}

TEST_CASE("extended gcd certifies coprimality of distinct linear factors") {
    Poly a = Poly::linear(GaussianRational(2));
    Poly b = Poly::linear(GaussianRational(5));
    auto [g, u, v] = Poly::extended_gcd(a, b);
    REQUIRE(g.degree() == 0);
    REQUIRE(u * a + v * b == g);
}

TEST_CASE("gcd finds common factors") {
    Poly f = Poly::linear(GaussianRational(1)) * Poly::linear(GaussianRational(2));
    Poly g = Poly::linear(GaussianRational(2)) * Poly::linear(GaussianRational(3));
    REQUIRE(Poly::gcd(f, g) == Poly::linear(GaussianRational(2)));
}
