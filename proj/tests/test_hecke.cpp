#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "llz/hecke.hpp"

using namespace llz;

TEST_CASE("dimension formula") {
    CHECK(dim_Sk(12) == 1);
    CHECK(dim_Sk(26) == 1);
    CHECK(dim_Sk(24) == 2);
    CHECK(dim_Sk(14) == 0);
    CHECK(dim_Sk(4) == 0);
    CHECK(dim_Sk(60) == 5);
    CHECK_THROWS_AS(dim_Sk(13), std::domain_error);
    CHECK_THROWS_AS(dim_Sk(2), std::domain_error);
}

TEST_CASE("weight 12 basis is the discriminant form") {
    auto S = build_space(12, 50);
    REQUIRE(S.dimension == 1);
    CHECK(S.basis[0][1] == 1);
    CHECK(S.basis[0][2] == -24);
    CHECK(S.basis[0][3] == 252);
    CHECK(S.basis[0][4] == -1472);
    CHECK(S.basis[0][11] == 534612);
    const auto& T2 = S.hecke_matrix(2);
    REQUIRE(T2.n == 1);
    CHECK(T2(0, 0) == -24);
}

TEST_CASE("weight 24 trace of T_2") {
    auto S = build_space(24, 60);
    REQUIRE(S.dimension == 2);
    const auto& T2 = S.hecke_matrix(2);
    CHECK(T2(0, 0) + T2(1, 1) == 1080);
}

TEST_CASE("Hecke matrices commute exactly") {
    for (int k : {36, 48, 60}) {
        auto S = build_space(k, 320);
        int d = S.dimension;
        for (std::uint64_t p : {2, 3, 5}) {
            for (std::uint64_t q : {7, 47}) {
                const auto& A = S.hecke_matrix(p);
                const auto& B = S.hecke_matrix(q);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        mpz_class ab = 0, ba = 0;
                        for (int l = 0; l < d; ++l) {
                            ab += A(i, l) * B(l, j);
                            ba += B(i, l) * A(l, j);
                        }
                        REQUIRE(ab == ba);
                    }
            }
        }
    }
}

TEST_CASE("nmax guards") {
    auto S = build_space(24, 60);
    CHECK_THROWS_AS(S.hecke_matrix(31), PrecisionError);
    CHECK_THROWS_AS(eigenforms(S, 100), PrecisionError);
}

TEST_CASE("eigenforms weight 12") {
    auto S = build_space(12, 2000);
    auto forms = eigenforms(S, 2000, 1000);
    REQUIRE(forms.size() == 1);
    const auto& f = forms[0];
    CHECK(f.lambda[1] == Catch::Approx(1.0).margin(1e-14));
    CHECK(f.lambda[2] == Catch::Approx(-24.0 / std::pow(2.0, 5.5)).margin(1e-12));
    CHECK(f.lambda[2] * f.lambda[2] - f.lambda[4] == Catch::Approx(1.0).margin(1e-12));
    CHECK(check_multiplicativity(f, 40));
    // dim 1: doubles must agree with the exact integer route
    for (std::uint64_t n : {2, 3, 10, 100, 1999}) {
        mpz_class an = S.basis[0][n];
        double exact = mpz_get_d(an.get_mpz_t()) / std::pow(double(n), 5.5);
        CHECK(f.lambda[n] == Catch::Approx(exact).margin(1e-12 * (1.0 + std::abs(exact))));
    }
}

TEST_CASE("eigenforms weight 24: certified splitting") {
    auto S = build_space(24, 1500);
    auto forms = eigenforms(S, 1500, 1000);
    REQUIRE(forms.size() == 2);
    for (const auto& f : forms) {
        CHECK(f.lambda[1] == Catch::Approx(1.0).margin(1e-12));
        CHECK(check_multiplicativity(f, 35));
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
            CHECK(std::abs(f.lambda[p]) <= 2.0 + 1e-9);
    }
    // lambda(2) sum = 1080 / 2^{11.5}
    double s = forms[0].lambda[2] + forms[1].lambda[2];
    CHECK(s == Catch::Approx(1080.0 / std::pow(2.0, 11.5)).margin(1e-10));
}

TEST_CASE("perturbing a stored eigenvalue breaks multiplicativity") {
    auto S = build_space(12, 400);
    auto forms = eigenforms(S, 400, 200);
    auto f = forms[0];
    f.lambda[6] += 1e-3;
    CHECK(!check_multiplicativity(f, 10));
}

TEST_CASE("symmetric square L-value at 1") {
    auto S = build_space(12, 100000);
    auto forms = eigenforms(S, 100000, 100000);
    const auto& f = forms[0];
    auto L5 = sym2_L_at_1(f, 100000);
    auto L4 = sym2_L_at_1(f, 10000);
    CHECK(L5.value > 0.0);
    // stable to 3 decimals across a decade of cutoff
    CHECK(std::abs(L5.value - L4.value) < 1e-3);
    CHECK(L5.value == Catch::Approx(0.6320).margin(2e-3));  // vs Petersson-norm route
    CHECK_THROWS_AS(sym2_L_at_1(f, 50), std::domain_error);

    // Dirichlet-series route: zeta(2) * sum_t lambda(t^2)/t, multiplicative extension
    double partial = 0.0;
    for (std::uint64_t t = 1; t <= 300; ++t) {
        // need lambda(t^2): use multiplicativity via stored table (t^2 <= 9*10^4 ok)
        partial += f.lambda[t * t] / double(t);
    }
    CHECK(kZeta2 * partial == Catch::Approx(L5.value).margin(5e-2));
}

TEST_CASE("petersson delta: diagonal near 1 at moderate k, harmonic average") {
    auto S = build_space(12, 10000);
    auto forms = eigenforms(S, 10000, 10000);
    double d11 = petersson_delta(forms, 1, 1);
    CHECK(d11 == Catch::Approx(kZeta2 / forms[0].L1sym2).margin(1e-12));
    // small-weight diagonal carries a genuinely large finite-k error term
    CHECK(d11 > 0.0);
    auto S48 = build_space(48, 4000);
    auto f48 = eigenforms(S48, 4000, 4000);
    CHECK(petersson_delta(f48, 1, 1) == Catch::Approx(1.0).margin(0.1));
    CHECK(petersson_delta(f48, 2, 2) == Catch::Approx(1.0).margin(0.35));
}

TEST_CASE("harmonic-weight average inside the measured envelope") {
    // k |avg - 1| <= C with C = 29 fixed empirically; see tests/fixtures/envelopes.md
    for (int k : {12, 26, 40, 60}) {
        auto S = build_space(k, 2000);
        auto forms = eigenforms(S, 2000, 2000);
        double avg = 0.0;
        for (const auto& f : forms) avg += f.harmonic_weight;
        avg /= forms.size();
        CHECK(std::abs(avg - 1.0) * k <= 29.0);
    }
}

TEST_CASE("off-diagonal suppression at large weight") {
    auto S16 = build_space(16, 3000);
    auto f16 = eigenforms(S16, 3000, 2000);
    auto S64 = build_space(64, 3000);
    auto f64 = eigenforms(S64, 3000, 2000);
    double early = std::abs(petersson_delta(f16, 1, 4));
    double late = std::abs(petersson_delta(f64, 1, 4));
    CHECK(late < 1e-2);
    CHECK(late < early / 50.0);
}

TEST_CASE("lambda cache round trip") {
    auto S = build_space(12, 500);
    auto forms = eigenforms(S, 500, 300);
    std::string path = "/tmp/llz_cache_test.txt";
    save_lambda_cache(forms[0], S.dimension, path, 300);
    auto c = load_lambda_cache(path);
    CHECK(c.weight == 12);
    CHECK(c.dimension == 1);
    CHECK(c.index == 0);
    REQUIRE(!c.lam.empty());
    CHECK(c.lam[0].first == 2);
    CHECK(c.lam[0].second == Catch::Approx(forms[0].lambda[2]).margin(1e-13));
    std::remove(path.c_str());
}
