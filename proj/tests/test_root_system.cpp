#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "liepath/root_system.hpp"

using namespace liepath;

namespace {

const std::complex<double> I{0.0, 1.0};

AutomorphismModel ad_diag_i(const LieAlgebraModel& g) {
    CMatrix b = CMatrix::Zero(2, 2);
    b(0, 0) = I;
    b(1, 1) = -I;
    return AutomorphismModel::build(g, b, OuterRecipe::none, 2);
}

}  // namespace

TEST_CASE("maximal abelian subspace of su(2), sigma = id") {
    auto g = LieAlgebraModel::su(2);
    auto s = AutomorphismModel::identity(g);
    auto frame = find_maximal_abelian(s);
    CHECK(frame.rank() == 1);
    CHECK(frame.maximal());
    CHECK(frame.exact());
    // the deterministic seed picks the span of H, section vector = H itself
    RVector h = RVector::Zero(3);
    h(0) = 1.0;
    CHECK((frame.section[0] - h).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(frame.section_norms[0] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rank of su(3) and su(4), sigma = id") {
    auto g3 = LieAlgebraModel::su(3);
    auto f3 = find_maximal_abelian(AutomorphismModel::identity(g3));
    CHECK(f3.rank() == 2);
    CHECK(f3.maximal());
    CHECK(f3.exact());

    auto g4 = LieAlgebraModel::su(4);
    auto f4 = find_maximal_abelian(AutomorphismModel::identity(g4));
    CHECK(f4.rank() == 3);
    CHECK(f4.exact());
}

TEST_CASE("g^sigma already abelian: su(2) with Ad(diag(i,-i))") {
    auto g = LieAlgebraModel::su(2);
    auto s = ad_diag_i(g);
    auto frame = find_maximal_abelian(s);
    CHECK(frame.rank() == 1);
    RVector h = RVector::Zero(3);
    h(0) = 1.0;
    CHECK((frame.section[0] - h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random frames commute and certify maximality") {
    auto g = LieAlgebraModel::su(3);
    auto s = AutomorphismModel::identity(g);
    for (unsigned seed : {3u, 4u, 5u}) {
        auto frame = find_maximal_abelian(s, FrameSeed::random(), seed);
        CHECK(frame.rank() == 2);
        CHECK(frame.maximal());
        CHECK(g.bracket(frame.frame[0], frame.frame[1]).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("su(2) root data at the trace metric") {
    auto g = LieAlgebraModel::su(2);
    auto frame = find_maximal_abelian(AutomorphismModel::identity(g));
    auto coarse = root_decomposition(frame);
    auto roots = coarse.positive_roots();
    REQUIRE(roots.size() == 1);
    // <alpha, H> = 2 exactly, m(alpha) = 2, dim g_0 = 1
    REQUIRE(roots[0]->alpha.size() == 1);
    CHECK(roots[0]->alpha[0].is_exact());
    CHECK(roots[0]->alpha[0].exact->rational_part() == Rational(2));
    CHECK(roots[0]->mult() == 2);
    CHECK(coarse.zero_block()->mult() == 1);
    CHECK(coarse.total_dim() == 3);
}

TEST_CASE("su(3) root system is A2") {
    auto g = LieAlgebraModel::su(3);
    auto frame = find_maximal_abelian(AutomorphismModel::identity(g));
    auto coarse = root_decomposition(frame);
    auto roots = coarse.positive_roots();
    CHECK(roots.size() == 3);
    for (const auto* b : roots) {
        CHECK(b->mult() == 2);
        CHECK(b->alpha_exact());
    }
    CHECK(coarse.zero_block()->mult() == 2);
    CHECK(coarse.total_dim() == 8);
}

TEST_CASE("refinement with sigma = id is a relabeling") {
    auto g = LieAlgebraModel::su(3);
    auto s = AutomorphismModel::identity(g);
    auto frame = find_maximal_abelian(s);
    auto refined = refine_by_sigma(root_decomposition(frame), s);
    CHECK(refined.total_dim() == 8);
    for (const auto& b : refined.root_blocks) {
        CHECK(b.eps_angle.exact->is_zero());
        CHECK(b.mult() == 2);
    }
    REQUIRE(refined.zero_blocks.size() == 1);
    CHECK(refined.zero_blocks[0].eps_angle.exact->is_zero());
    CHECK(refined.ad_square_residual() < 1e-9);
    CHECK(refined.sigma_rotation_residual(s) < 1e-9);
    CHECK(refined.orthogonality_residual() < 1e-10);
}

TEST_CASE("su(2) with Ad(diag(i,-i)): m(alpha,-1) = 2, m(alpha,1) = 0") {
    auto g = LieAlgebraModel::su(2);
    auto s = ad_diag_i(g);
    auto frame = find_maximal_abelian(s);
    auto refined = refine_by_sigma(root_decomposition(frame, {}), s);

    REQUIRE(refined.root_blocks.size() == 1);
    const auto& b = refined.root_blocks[0];
    CHECK(b.alpha[0].exact->rational_part() == Rational(2));
    CHECK(b.eps_angle.exact->pi_part() == Rational(1));  // angle pi
    CHECK(b.mult() == 2);
    REQUIRE(refined.zero_blocks.size() == 1);  // g_{0,1} = t only
    CHECK(refined.zero_blocks[0].mult() == 1);
    CHECK(refined.total_dim() == 3);
    CHECK(refined.sigma_rotation_residual(s) < 1e-9);
}

TEST_CASE("involutive refinement has angles in {0, pi} only") {
    auto g = LieAlgebraModel::su(3);
    auto s = AutomorphismModel::build(g, std::nullopt, OuterRecipe::complex_conjugation, 2);
    auto frame = find_maximal_abelian(s);
    CHECK(frame.rank() == 1);
    auto refined = refine_by_sigma(root_decomposition(frame), s);
    for (const auto& b : refined.root_blocks) {
        bool ok = b.eps_angle.exact->is_zero() || b.eps_angle.exact->pi_part() == Rational(1);
        CHECK(ok);
    }
    // BC1 structure: pairings {1, 2}, multiplicities m(1)=4, m(2)=2, dim g_0 = 2
    std::map<std::string, int> mult;
    for (const auto& b : refined.root_blocks) mult[b.alpha_key()] += b.mult();
    REQUIRE(mult.size() == 2);
    CHECK(mult["1"] == 4);
    CHECK(mult["2"] == 2);
    int zero_dim = 0;
    for (const auto& b : refined.zero_blocks) zero_dim += b.mult();
    CHECK(zero_dim == 2);
    CHECK(refined.total_dim() == 8);
    CHECK(refined.ad_square_residual() < 1e-9);
    CHECK(refined.sigma_rotation_residual(s) < 1e-9);

    // the conjugation splits g_1 evenly and sends all of g_2 to the -1 part
    for (const auto& b : refined.root_blocks) {
        if (b.alpha_key() == "1") CHECK(b.mult() == 2);
        if (b.alpha_key() == "2") CHECK(b.eps_angle.exact->pi_part() == Rational(1));
    }
}

TEST_CASE("order-3 automorphism produces complex eps blocks") {
    auto g = LieAlgebraModel::su(3);
    std::complex<double> w = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
    CMatrix b = CMatrix::Zero(3, 3);
    b(0, 0) = 1.0;
    b(1, 1) = w;
    b(2, 2) = std::conj(w);
    auto s = AutomorphismModel::build(g, b, OuterRecipe::none, 3);
    auto frame = find_maximal_abelian(s);
    CHECK(frame.rank() == 2);
    auto refined = refine_by_sigma(root_decomposition(frame), s);
    CHECK(refined.total_dim() == 8);
    CHECK(refined.sigma_rotation_residual(s) < 1e-9);
    // each root block carries angle 0 or +-2pi/3, and at least one is complex
    bool saw_complex = false;
    for (const auto& b2 : refined.root_blocks) {
        REQUIRE(b2.eps_angle.is_exact());
        Rational turns = b2.eps_angle.exact->pi_part() * Rational(3, 2);
        CHECK(turns.is_integer());
        if (!b2.eps_angle.exact->is_zero()) saw_complex = true;
    }
    CHECK(saw_complex);
}

TEST_CASE("completeness holds for every bundled pair") {
    auto run = [](const LieAlgebraModel& g, const AutomorphismModel& s) {
        auto frame = find_maximal_abelian(s);
        auto refined = refine_by_sigma(root_decomposition(frame), s);
        CHECK(refined.total_dim() == g.dim());
        CHECK(refined.ad_square_residual() < 1e-9);
        CHECK(refined.sigma_rotation_residual(s) < 1e-9);
    };
    {
        auto g = LieAlgebraModel::su(2);
        run(g, AutomorphismModel::identity(g));
        run(g, ad_diag_i(g));
    }
    {
        auto g = LieAlgebraModel::su(3);
        run(g, AutomorphismModel::identity(g));
        run(g, AutomorphismModel::build(g, std::nullopt, OuterRecipe::complex_conjugation, 2));
    }
    {
        auto g = LieAlgebraModel::so(4);
        run(g, AutomorphismModel::identity(g));
        run(g, AutomorphismModel::build(g, std::nullopt, OuterRecipe::orthogonal_flip, 2));
    }
    {
        auto g = LieAlgebraModel::sp(2);
        run(g, AutomorphismModel::identity(g));
    }
    {
        auto a = LieAlgebraModel::su(2);
        auto p = LieAlgebraModel::product(a, a);
        run(p, AutomorphismModel::identity(p));
    }
}

TEST_CASE("frame remix produces the same root geometry") {
    auto g = LieAlgebraModel::su(3);
    auto s = AutomorphismModel::identity(g);
    auto f1 = find_maximal_abelian(s);
    auto f2 = find_maximal_abelian(s, FrameSeed::random(), 99);

    auto c1 = root_decomposition(f1);
    auto c2 = root_decomposition(f2);
    // same number of positive roots with the same multiset of multiplicities
    auto r1 = c1.positive_roots();
    auto r2 = c2.positive_roots();
    CHECK(r1.size() == r2.size());
    std::multiset<int> m1, m2;
    for (auto* b : r1) m1.insert(b->mult());
    for (auto* b : r2) m2.insert(b->mult());
    CHECK(m1 == m2);
    // root norms agree as multisets (the root system is an invariant of t)
    std::vector<double> n1, n2;
    for (auto* b : r1) n1.push_back(b->alpha_frame.norm());
    for (auto* b : r2) n2.push_back(b->alpha_frame.norm());
    std::sort(n1.begin(), n1.end());
    std::sort(n2.begin(), n2.end());
    for (size_t i = 0; i < n1.size(); ++i) CHECK(n1[i] == doctest::Approx(n2[i]).epsilon(1e-6));
}

TEST_CASE("seed element is projected into g^sigma") {
    auto g = LieAlgebraModel::su(3);
    auto s = AutomorphismModel::build(g, std::nullopt, OuterRecipe::complex_conjugation, 2);
    RVector mixed = RVector::Zero(g.dim());
    mixed(0) = 0.3;  // H1, outside g^sigma
    mixed(2) = 1.0;  // A12, inside
    auto frame = find_maximal_abelian(s, FrameSeed::from(mixed));
    CHECK(frame.rank() == 1);
    CHECK(frame.exact());
}
