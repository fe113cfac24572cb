#ifndef LIEPATH_ORBIT_HPP
#define LIEPATH_ORBIT_HPP

#include <string>
#include <vector>

#include "liepath/root_system.hpp"

namespace liepath {

// Orbit of the twisted conjugation action through a = exp w, with w given by
// exact coordinates over the section basis of the frame.
struct OrbitSpec {
    const RefinedRootData* data = nullptr;
    const AutomorphismModel* sigma = nullptr;
    std::vector<MaybeExact> w_coords;
    RVector w;  // model coordinates
    CMatrix a;  // exp w

    const LieAlgebraModel& algebra() const { return *data->frame.model; }
    const AbelianFrame& frame() const { return data->frame; }
};

OrbitSpec make_orbit(const RefinedRootData& data, const AutomorphismModel& sigma,
                     const std::vector<MaybeExact>& w_coords);

// pairing <alpha, w> + arg(eps) for a block, exact whenever possible
MaybeExact block_theta(const RootBlock& block, const std::vector<MaybeExact>& w_coords);
MaybeExact pairing_with(const RootBlock& block, const std::vector<MaybeExact>& coords);

struct SplitEntry {
    const RootBlock* block = nullptr;
    MaybeExact theta;
    bool tangent = false;
};

struct TangentNormalSplit {
    std::vector<SplitEntry> entries;  // all blocks, zero blocks first
    int dim_tangent = 0;
    int dim_normal = 0;  // includes the section itself
    double span_residual = 0.0;  // declared tangent vs numeric action-field span

    std::vector<const SplitEntry*> tangent_entries() const;
    bool normal_is_section_only() const;  // no normal root blocks
};

TangentNormalSplit split_tangent_normal(const OrbitSpec& spec);

struct SpectrumEntry {
    double value = 0.0;
    int mult = 0;
    const RootBlock* block = nullptr;
    MaybeExact theta;
    MaybeExact numer;  // <alpha, xi>
};

struct FiniteSpectrum {
    std::vector<SpectrumEntry> entries;
    std::vector<double> expanded() const;  // sorted, one value per multiplicity
    int total_mult() const;
};

// closed-form shape operator spectrum in the direction xi (coordinates over
// the section basis)
FiniteSpectrum shape_spectrum(const OrbitSpec& spec, const std::vector<MaybeExact>& xi_coords);

struct OracleOptions {
    double fd_step = 1e-4;
    double cluster_tol = 1e-5;
    double max_gram_condition = 1e8;
};

struct OracleSpectrum {
    std::vector<double> eigenvalues;                  // sorted, dim N entries
    std::vector<std::pair<double, int>> clustered;    // tolerance-clustered view
};

// Independent finite-difference second-fundamental-form oracle: builds action
// curves through a, differentiates them numerically and diagonalizes the
// assembled shape operator.
OracleSpectrum numeric_shape_oracle(const OrbitSpec& spec, const std::vector<MaybeExact>& xi_coords,
                                    const OracleOptions& opts = {});

double spectrum_distance(const FiniteSpectrum& closed, const OracleSpectrum& oracle);

struct CurvatureAdaptedReport {
    bool pass = false;
    int cohomogeneity = 0;
    double jacobi_preserves_tangent_residual = 0.0;
    double commutator_residual = 0.0;
};

CurvatureAdaptedReport curvature_adapted_check(const OrbitSpec& spec);
// test hook: same check on an explicitly supplied tangent basis
CurvatureAdaptedReport curvature_adapted_check_on(const OrbitSpec& spec,
                                                  const std::vector<RVector>& tangent_basis);

struct AusterePairing {
    std::string vector_a;  // (alpha, theta) labels
    std::string vector_b;
    int mult = 0;
    std::string method;  // "zero", "exact", "numeric"
};

struct AustereReport {
    enum class Verdict { austere, not_austere, undecidable };
    Verdict verdict = Verdict::undecidable;
    std::string scope;  // "full" or "section-only"
    std::vector<AusterePairing> pairs;
    std::string unmatched;  // first unmatched vector when not austere
    std::string note;

    bool is_austere() const { return verdict == Verdict::austere; }
};

AustereReport austere_check_finite(const OrbitSpec& spec);

// Ambient isometry candidate: a composition of left/right translations,
// catalog automorphisms and group inversion, applied left to right.
struct IsometryStep {
    enum class Kind { left_translation, right_translation, inversion, automorphism };
    Kind kind = Kind::inversion;
    CMatrix mat;                                // for translations
    const AutomorphismModel* autom = nullptr;   // for automorphism steps
};

struct IsometryRecipe {
    std::vector<IsometryStep> steps;

    CMatrix apply_point(const CMatrix& p) const;
    // differential along the recipe at base point p
    CMatrix apply_tangent(const CMatrix& p, const CMatrix& v) const;
};

struct WitnessReport {
    bool pass = false;
    double fixes_point_residual = 0.0;
    double reverses_normal_residual = 0.0;
    double max_orbit_distance = 0.0;
    int samples = 0;
    bool pf_label_transfers = false;  // set when the witness passes
};

WitnessReport weakly_reflective_witness(const OrbitSpec& spec, const std::vector<MaybeExact>& xi_coords,
                                        const IsometryRecipe& candidate, int samples = 200,
                                        unsigned seed = 12345);

// distance from q to the orbit through a, by damped Gauss-Newton over the
// acting group from several seeds
double orbit_distance(const OrbitSpec& spec, const CMatrix& q, unsigned seed = 7);

}  // namespace liepath

#endif
