#include <catch2/catch_amalgamated.hpp>

#include "llz/testfns.hpp"
#include "oracles.hpp"

using namespace llz;

TEST_CASE("fejer pair values at 0 and support boundary") {
    auto F = fejer_pair(0.5);
    CHECK(F.ghat(0.0) == 1.0);
    CHECK(F.g(0.0) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(F.ghat(0.5) == 0.0);
    CHECK(F.ghat(0.75) == 0.0);
    CHECK_THROWS_AS(fejer_pair(0.0), std::domain_error);
    CHECK_THROWS_AS(fejer_pair(-1.0), std::domain_error);
}

TEST_CASE("int g = ghat(0) by quadrature") {
    auto F = fejer_pair(0.5);
    double I = fourier_of_g(F, 0.0, 1e-7);
    CHECK(I == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("evenness and support vanishing on a grid") {
    for (double sigma : {0.125, 0.5, 1.0}) {
        auto F = fejer_pair(sigma);
        for (int i = 1; i <= 40; ++i) {
            double x = 0.37 * i;
            CHECK(F.g(x) == Catch::Approx(F.g(-x)).margin(1e-12));
            CHECK(F.ghat(x / 40.0) == Catch::Approx(F.ghat(-x / 40.0)).margin(1e-12));
        }
        CHECK(F.ghat(sigma) == 0.0);
        CHECK(F.ghat(sigma * 1.0000001) == 0.0);
    }
}

TEST_CASE("verify_pair accepts shipped constructors, rejects a broken pair") {
    auto F = fejer_pair(0.5);
    CHECK(verify_pair(F, {0.0, 0.25, 0.4}, 1e-5));
    auto P = product_pair(fejer_pair(0.25), fejer_pair(0.125));
    CHECK(verify_pair(P, {0.0, 0.1, 0.3}, 1e-5));

    auto broken = F;
    broken.ghat = [&F](double u) { return 2.0 * F.ghat(u); };
    CHECK(!verify_pair(broken, {0.0, 0.25}, 1e-5));

    CHECK(verify_pair(F, {0.0}, 1e-3));
    CHECK_THROWS_AS(verify_pair(F, {}, 1e-5), std::domain_error);
}

TEST_CASE("plancherel product") {
    auto F = fejer_pair(0.5);
    // int (1-2|u|)^2 du over [-1/2,1/2] = 1/3
    CHECK(plancherel_product_at_0(F, F) == Catch::Approx(1.0 / 3.0).margin(1e-9));
    auto Z = F;
    Z.ghat = [](double) { return 0.0; };
    CHECK(plancherel_product_at_0(F, Z) == 0.0);
    auto G = fejer_pair(0.3);
    CHECK(plancherel_product_at_0(F, G) >= 0.0);
    CHECK(plancherel_product_at_0(F, G) ==
          Catch::Approx(plancherel_product_at_0(G, F)).margin(1e-12));
}

TEST_CASE("weighted abs integral") {
    auto F = fejer_pair(0.5);
    // 2 int_0^{1/2} u (1-2u)^2 du = 1/24
    CHECK(weighted_abs_integral(F, F) == Catch::Approx(1.0 / 24.0).margin(1e-9));
    auto quad = oracle::trapezoid_integral(
        [&](double u) { return std::abs(u) * F.ghat(u) * F.ghat(u); }, -0.5, 0.5);
    CHECK(weighted_abs_integral(F, F) == Catch::Approx(quad).margin(1e-7));
    auto G = fejer_pair(0.2);
    CHECK(weighted_abs_integral(F, G) ==
          Catch::Approx(weighted_abs_integral(G, F)).margin(1e-12));
}

TEST_CASE("product pair transform is the convolution") {
    auto A = fejer_pair(0.25), B = fejer_pair(0.25);
    auto P = product_pair(A, B);
    CHECK(P.support == Catch::Approx(0.5));
    CHECK(P.g0 == Catch::Approx(0.0625));
    // ghat_P(0) = int ghat_A ghat_B = plancherel
    CHECK(P.ghat0 == Catch::Approx(plancherel_product_at_0(A, B)).margin(1e-9));
    CHECK(P.ghat(0.51) == 0.0);
    // spot value against direct quadrature of int g1 g2 cos(2 pi x u) dx
    double u = 0.2;
    double direct = fourier_of_g(P, u, 1e-7);
    CHECK(P.ghat(u) == Catch::Approx(direct).margin(1e-6));
}
