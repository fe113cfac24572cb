#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <memory>
#include <random>

#include "liepath/orbit.hpp"

using namespace liepath;

namespace {

const std::complex<double> I{0.0, 1.0};

// Models are heap-held so the pointer-tied structures survive moves of the fixture.
struct Setup {
    std::shared_ptr<LieAlgebraModel> g;
    std::shared_ptr<AutomorphismModel> sigma;
    AbelianFrame frame;
    CoarseRootData coarse;
    RefinedRootData refined;
};

template <typename MakeSigma>
Setup make_setup(LieAlgebraModel model, MakeSigma mk) {
    Setup s;
    s.g = std::make_shared<LieAlgebraModel>(std::move(model));
    s.sigma = std::make_shared<AutomorphismModel>(mk(*s.g));
    s.frame = find_maximal_abelian(*s.sigma);
    s.coarse = root_decomposition(s.frame);
    s.refined = refine_by_sigma(s.coarse, *s.sigma);
    return s;
}

Setup su2_id() {
    return make_setup(LieAlgebraModel::su(2),
                      [](const LieAlgebraModel& g) { return AutomorphismModel::identity(g); });
}

Setup su2_ad() {
    return make_setup(LieAlgebraModel::su(2), [](const LieAlgebraModel& g) {
        CMatrix b = CMatrix::Zero(2, 2);
        b(0, 0) = I;
        b(1, 1) = -I;
        return AutomorphismModel::build(g, b, OuterRecipe::none, 2);
    });
}

Setup su3_conj() {
    return make_setup(LieAlgebraModel::su(3), [](const LieAlgebraModel& g) {
        return AutomorphismModel::build(g, std::nullopt, OuterRecipe::complex_conjugation, 2);
    });
}

std::vector<MaybeExact> coords1(const char* s) { return {MaybeExact(*ExactScalar::parse(s))}; }

}  // namespace

TEST_CASE("su(2) sigma=id split for generic w") {
    auto su2 = su2_id();
    // w = (pi/4) H: <alpha, w> = pi/2, tangent = g_alpha (dim 2), normal = t (dim 1)
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/4"));
    auto split = split_tangent_normal(spec);
    CHECK(split.dim_tangent == 2);
    CHECK(split.dim_normal == 1);
    CHECK(split.normal_is_section_only());
    CHECK(split.span_residual < 1e-8);
}

TEST_CASE("w = 0, sigma = id: the orbit is the single point e") {
    auto su2 = su2_id();
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("0"));
    auto split = split_tangent_normal(spec);
    CHECK(split.dim_tangent == 0);
    CHECK(split.dim_normal == 3);
    CHECK(!split.normal_is_section_only());
}

TEST_CASE("Cartan embedding orbit of su(2) with Ad(diag(i,-i))") {
    auto su2 = su2_ad();
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("0"));
    auto split = split_tangent_normal(spec);
    CHECK(split.dim_tangent == 2);  // theta = pi block
    CHECK(split.dim_normal == 1);
    // totally geodesic: zero spectrum
    auto spec2 = shape_spectrum(spec, coords1("1"));
    for (const auto& e : spec2.entries) CHECK(e.value == 0.0);
}

TEST_CASE("undecidable lattice membership raises") {
    auto su2 = su2_id();
    // w float with <alpha,w> = 2w within 1e-9 of 2pi
    std::vector<MaybeExact> w{MaybeExact(3.14159265358979 + 1e-13)};
    auto spec = make_orbit(su2.refined, *su2.sigma, w);
    CHECK_THROWS_AS(split_tangent_normal(spec), UndecidableError);
}

TEST_CASE("closed-form spectrum for su(2), sigma = id") {
    auto su2 = su2_id();
    // w = s*H with s = pi/5: theta = 2s; xi = H: eigenvalue -cot(s), mult 2
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/5"));
    auto fs = shape_spectrum(spec, coords1("1"));
    REQUIRE(fs.entries.size() == 1);
    CHECK(fs.entries[0].mult == 2);
    CHECK(fs.entries[0].value == doctest::Approx(-1.0 / std::tan(3.14159265358979323846 / 5.0)).epsilon(1e-12));
    // xi = 0 gives the zero operator
    auto fz = shape_spectrum(spec, coords1("0"));
    CHECK(fz.entries[0].value == 0.0);
}

TEST_CASE("oracle matches the closed form on su(2), sigma = id, w = (pi/4)H") {
    auto su2 = su2_id();
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/4"));
    // xi = H/sqrt2 is not exact; use the unnormalized direction H and also
    // check the spec values against a scaled run
    auto fs = shape_spectrum(spec, coords1("1"));
    auto oracle = numeric_shape_oracle(spec, coords1("1"));
    REQUIRE(oracle.eigenvalues.size() == 2);
    CHECK(spectrum_distance(fs, oracle) < 1e-5);
    // closed form: -cot(pi/4) = -1 with xi = H; at xi = H/sqrt2 this is -sqrt2/2
    CHECK(fs.entries[0].value == doctest::Approx(-1.0));
    CHECK(oracle.eigenvalues[0] / std::sqrt(2.0) == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-5));
}

TEST_CASE("oracle confirms the totally geodesic Cartan orbit") {
    auto su2 = su2_ad();
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("0"));
    auto oracle = numeric_shape_oracle(spec, coords1("1"));
    REQUIRE(oracle.eigenvalues.size() == 2);
    for (double v : oracle.eigenvalues) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("oracle matches closed form on su(3) with complex conjugation") {
    auto su3 = su3_conj();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pick(0.1, 0.9);
    for (const char* ws : {"pi/3", "pi/5", "2pi/7"}) {
        auto spec = make_orbit(su3.refined, *su3.sigma, coords1(ws));
        for (const char* xs : {"1", "1/2", "3"}) {
            auto fs = shape_spectrum(spec, coords1(xs));
            auto oracle = numeric_shape_oracle(spec, coords1(xs));
            CAPTURE(ws);
            CAPTURE(xs);
            CHECK(spectrum_distance(fs, oracle) < 1e-5);
        }
    }
}

TEST_CASE("spectra are invariant under a full lattice shift of w") {
    auto su2 = su2_id();
    auto s1 = make_orbit(su2.refined, *su2.sigma, coords1("pi/5"));
    auto s2 = make_orbit(su2.refined, *su2.sigma, coords1("6pi/5"));  // shift by pi: theta shifts by 2pi
    auto f1 = shape_spectrum(s1, coords1("1")).expanded();
    auto f2 = shape_spectrum(s2, coords1("1")).expanded();
    REQUIRE(f1.size() == f2.size());
    for (size_t i = 0; i < f1.size(); ++i) CHECK(f1[i] == doctest::Approx(f2[i]).epsilon(1e-12));
}

TEST_CASE("curvature adapted check passes for sigma orbits and fails on corrupted bases") {
    auto su2 = su2_id();
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/4"));
    auto rep = curvature_adapted_check(spec);
    CHECK(rep.pass);
    CHECK(rep.cohomogeneity == 1);

    auto su3 = su3_conj();
    auto spec3 = make_orbit(su3.refined, *su3.sigma, coords1("pi/3"));
    auto rep3 = curvature_adapted_check(spec3);
    CHECK(rep3.pass);

    auto su3id = make_setup(LieAlgebraModel::su(3),
                            [](const LieAlgebraModel& g) { return AutomorphismModel::identity(g); });
    std::vector<MaybeExact> w{MaybeExact(*ExactScalar::parse("pi/5")), MaybeExact(*ExactScalar::parse("pi/7"))};
    auto spec_g = make_orbit(su3id.refined, *su3id.sigma, w);
    auto rep_g = curvature_adapted_check(spec_g);
    CHECK(rep_g.pass);
    CHECK(rep_g.cohomogeneity == 2);

    // negative control: replace a tangent vector with something skew to the split
    auto split = split_tangent_normal(spec_g);
    std::vector<RVector> corrupted;
    for (const auto* e : split.tangent_entries())
        for (const auto& v : e->block->basis) corrupted.push_back(v);
    corrupted[0] = 0.7 * corrupted[0] + 0.7 * su3id.frame.frame[0];  // mix in a normal direction
    auto bad = curvature_adapted_check_on(spec_g, corrupted);
    CHECK(!bad.pass);
}

TEST_CASE("austere certification on su(2), sigma = id") {
    auto su2 = su2_id();

    SUBCASE("equator <alpha,w> = pi is austere") {
        auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/2"));
        auto rep = austere_check_finite(spec);
        CHECK(rep.is_austere());
        CHECK(rep.scope == "full");
        REQUIRE(rep.pairs.size() == 1);
        CHECK(rep.pairs[0].method == "zero");
    }

    SUBCASE("<alpha,w> = pi/2 is not austere") {
        auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/4"));
        auto rep = austere_check_finite(spec);
        CHECK(!rep.is_austere());
        CHECK(rep.verdict == AustereReport::Verdict::not_austere);
        CHECK(!rep.unmatched.empty());
    }

    SUBCASE("inexact input refuses a verdict") {
        std::vector<MaybeExact> w{MaybeExact(0.7)};
        auto spec = make_orbit(su2.refined, *su2.sigma, w);
        auto rep = austere_check_finite(spec);
        CHECK(rep.verdict == AustereReport::Verdict::undecidable);
    }
}

TEST_CASE("Cartan orbits are austere") {
    auto su2 = su2_ad();
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("0"));
    auto rep = austere_check_finite(spec);
    CHECK(rep.is_austere());

    auto su3 = su3_conj();
    auto spec3 = make_orbit(su3.refined, *su3.sigma, coords1("0"));
    auto rep3 = austere_check_finite(spec3);
    CHECK(rep3.is_austere());
    CHECK(rep3.scope == "section-only");  // the normal space exceeds the section
}

TEST_CASE("weakly reflective witnesses") {
    auto su2 = su2_id();

    SUBCASE("point orbit with inversion") {
        auto spec = make_orbit(su2.refined, *su2.sigma, coords1("0"));
        IsometryRecipe inv;
        inv.steps.push_back({IsometryStep::Kind::inversion, {}, nullptr});
        auto rep = weakly_reflective_witness(spec, coords1("1"), inv, 50);
        CHECK(rep.pass);
        CHECK(rep.pf_label_transfers);
    }

    SUBCASE("equator orbit with nu: a -> b a^-1 b, b = exp w") {
        auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/2"));
        IsometryRecipe nu;
        nu.steps.push_back({IsometryStep::Kind::inversion, {}, nullptr});
        nu.steps.push_back({IsometryStep::Kind::left_translation, spec.a, nullptr});
        nu.steps.push_back({IsometryStep::Kind::right_translation, spec.a, nullptr});
        auto rep = weakly_reflective_witness(spec, coords1("1"), nu, 60);
        CHECK(rep.fixes_point_residual < 1e-10);
        CHECK(rep.reverses_normal_residual < 1e-8);
        CHECK(rep.max_orbit_distance < 1e-6);
        CHECK(rep.pass);
    }

    SUBCASE("identity candidate with nonzero xi is rejected") {
        auto spec = make_orbit(su2.refined, *su2.sigma, coords1("pi/2"));
        IsometryRecipe ident;  // empty recipe = identity map
        auto rep = weakly_reflective_witness(spec, coords1("1"), ident, 10);
        CHECK(!rep.pass);
        CHECK(rep.reverses_normal_residual > 1e-3);
    }
}

TEST_CASE("inversion preserves the Cartan embedding orbit") {
    auto su2 = su2_ad();
    auto spec = make_orbit(su2.refined, *su2.sigma, coords1("0"));
    IsometryRecipe inv;
    inv.steps.push_back({IsometryStep::Kind::inversion, {}, nullptr});
    auto rep = weakly_reflective_witness(spec, coords1("1"), inv, 60);
    CHECK(rep.pass);
}
