#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "liepath/automorphism.hpp"

using namespace liepath;

namespace {

const std::complex<double> I{0.0, 1.0};

CMatrix diag2(std::complex<double> a, std::complex<double> b) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("identity automorphism fixes everything") {
    auto g = LieAlgebraModel::su(2);
    auto s = AutomorphismModel::identity(g);
    auto fixed = fixed_algebra(s);
    CHECK(fixed.size() == 3);
    auto dec = eigen_angles(s);
    CHECK(dec.blocks.size() == 1);
    CHECK(dec.blocks[0].angle.exact->is_zero());
    CHECK(dec.total_dim() == 3);
}

TEST_CASE("Ad(diag(i,-i)) on su(2)") {
    auto g = LieAlgebraModel::su(2);
    auto s = AutomorphismModel::build(g, diag2(I, -I), OuterRecipe::none, 2);

    // fixed algebra is the span of H
    auto fixed = fixed_algebra(s);
    REQUIRE(fixed.size() == 1);
    RVector h = RVector::Zero(3);
    h(0) = 1.0;
    double overlap = std::abs(g.inner(fixed[0], h)) / (g.norm(fixed[0]) * g.norm(h));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));

    // X and Y are rotated by pi
    auto dec = eigen_angles(s);
    REQUIRE(dec.blocks.size() == 2);
    CHECK(dec.blocks[0].angle.exact->is_zero());
    CHECK(dec.blocks[0].dim() == 1);
    CHECK(dec.blocks[1].angle.exact->pi_part() == Rational(1));
    CHECK(dec.blocks[1].dim() == 2);
    CHECK(dec.reconstruction_residual < 1e-9);
}

TEST_CASE("complex conjugation on su(3) fixes an so(3) copy") {
    auto g = LieAlgebraModel::su(3);
    auto s = AutomorphismModel::build(g, std::nullopt, OuterRecipe::complex_conjugation, 2);
    auto fixed = fixed_algebra(s);
    CHECK(fixed.size() == 3);
    // closed under bracket: projection residual of brackets back into the span
    RMatrix basis(g.dim(), 3);
    for (int i = 0; i < 3; ++i) basis.col(i) = g.to_ortho(fixed[i]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RVector br = g.to_ortho(g.bracket(fixed[i], fixed[j]));
            RVector proj = basis * (basis.transpose() * br);
            CHECK((br - proj).norm() < 1e-9);
        }
    // involutive: angles within {0, pi}
    for (const auto& blk : eigen_angles(s).blocks) {
        bool zero_or_pi = blk.angle.exact->is_zero() || blk.angle.exact->pi_part() == Rational(1);
        CHECK(zero_or_pi);
    }
}

TEST_CASE("order-3 inner automorphism has angles multiple of 2pi/3") {
    auto g = LieAlgebraModel::su(3);
    std::complex<double> w = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
    CMatrix b = CMatrix::Zero(3, 3);
    b(0, 0) = 1.0;
    b(1, 1) = w;
    b(2, 2) = std::conj(w);
    auto s = AutomorphismModel::build(g, b, OuterRecipe::none, 3);
    CHECK(s.order_residual() < 1e-9);
    auto dec = eigen_angles(s);
    for (const auto& blk : dec.blocks) {
        REQUIRE(blk.angle.is_exact());
        // every angle is a multiple of 2pi/3
        Rational turns = blk.angle.exact->pi_part() * Rational(3, 2);
        CHECK(turns.is_integer());
    }
    CHECK(dec.total_dim() == 8);
    CHECK(dec.reconstruction_residual < 1e-9);
}

TEST_CASE("eigen angle blocks are orthogonal and complete") {
    auto g = LieAlgebraModel::su(3);
    auto s = AutomorphismModel::build(g, std::nullopt, OuterRecipe::complex_conjugation, 2);
    auto dec = eigen_angles(s);
    CHECK(dec.total_dim() == g.dim());
    for (size_t a = 0; a < dec.blocks.size(); ++a)
        for (size_t b = a + 1; b < dec.blocks.size(); ++b)
            for (const auto& va : dec.blocks[a].basis)
                for (const auto& vb : dec.blocks[b].basis)
                    CHECK(std::abs(g.inner(va, vb)) < 1e-10);
    CHECK(dec.reconstruction_residual < 1e-9);
}

TEST_CASE("declared order is verified at build time") {
    auto g = LieAlgebraModel::su(2);
    CHECK_THROWS(AutomorphismModel::build(g, diag2(I, -I), OuterRecipe::none, 3));
}

TEST_CASE("verify_ad_tau_split") {
    auto g = LieAlgebraModel::su(2);
    CMatrix b = diag2(std::polar(1.0, 0.4), std::polar(1.0, -0.4));
    GroupElement bg(g, b);
    auto tau_id = AutomorphismModel::identity(g);

    SUBCASE("sigma = Ad(b), tau = id passes") {
        auto sigma = AutomorphismModel::build(g, b, OuterRecipe::none, 0);
        auto rep = verify_ad_tau_split(sigma, bg, tau_id);
        CHECK(rep.pass);
        CHECK(rep.algebra_residual < 1e-10);
    }

    SUBCASE("sigma = Ad(b) . conj with supplied (b, conj) passes") {
        auto g3 = LieAlgebraModel::su(3);
        CMatrix b3 = CMatrix::Identity(3, 3);
        b3(0, 0) = std::polar(1.0, 0.3);
        b3(2, 2) = std::polar(1.0, -0.3);
        auto sigma = AutomorphismModel::build(g3, b3, OuterRecipe::complex_conjugation, 0);
        auto tau = AutomorphismModel::build(g3, std::nullopt, OuterRecipe::complex_conjugation, 2);
        auto rep = verify_ad_tau_split(sigma, GroupElement(g3, b3), tau);
        CHECK(rep.pass);
    }

    SUBCASE("wrong b fails with a visible residual") {
        auto sigma = AutomorphismModel::build(g, b, OuterRecipe::none, 0);
        CMatrix bad = diag2(std::polar(1.0, 0.9), std::polar(1.0, -0.9));
        auto rep = verify_ad_tau_split(sigma, GroupElement(g, bad), tau_id);
        CHECK(!rep.pass);
        CHECK(rep.algebra_residual > 1e-3);
    }
}
