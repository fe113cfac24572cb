#ifndef LIEPATH_ROOT_SYSTEM_HPP
#define LIEPATH_ROOT_SYSTEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "liepath/automorphism.hpp"
#include "liepath/errors.hpp"
#include "liepath/lie_algebra.hpp"

namespace liepath {

// Maximal abelian subspace of the fixed algebra, carried in two forms: an
// orthonormal frame for numerics and a parallel "section basis" of integer
// coordinate vectors whenever one exists. Exact w and xi coordinates in the
// scenario files refer to the section basis, so root pairings against it are
// the quantities that get snapped to rationals.
struct AbelianFrame {
    const LieAlgebraModel* model = nullptr;
    std::vector<RVector> frame;        // orthonormal t_1..t_k, model coordinates
    std::vector<RVector> section;      // s_j parallel to t_j; integer coords when exact
    std::vector<bool> section_exact;
    std::vector<double> section_norms;  // |s_j|
    int centralizer_dim = 0;            // joint centralizer inside g^sigma; == rank when maximal

    int rank() const { return static_cast<int>(frame.size()); }
    bool exact() const;
    bool maximal() const { return centralizer_dim == rank(); }

    // numeric vector from coordinates over the section basis
    RVector vector_from(const std::vector<MaybeExact>& coords) const;
};

struct DecompositionOptions {
    double cluster_tol = 1e-8;  // eigenvalues closer than this belong together
    double min_gap = 1e-6;      // anything between the two is ambiguous
};

struct FrameSeed {
    enum class Kind { automatic, random, element } kind = Kind::automatic;
    RVector element;  // model coordinates, used when kind == element

    static FrameSeed automatic() { return {}; }
    static FrameSeed random() { return {Kind::random, {}}; }
    static FrameSeed from(const RVector& x) { return {Kind::element, x}; }
};

AbelianFrame find_maximal_abelian(const AutomorphismModel& sigma,
                                  const FrameSeed& seed = FrameSeed::automatic(),
                                  unsigned rng_seed = 1,
                                  const DecompositionOptions& opts = {});

// One block g_{alpha,eps} of the refined decomposition. Zero blocks carry
// alpha = 0 and eps angle in [0, pi]; root blocks carry the positive root with
// eps angle in (-pi, pi]. The basis is orthonormal, organized in canonical
// planes for non-real eps so that sigma rotates (b_{2l}, b_{2l+1}) by the
// stored angle.
struct RootBlock {
    std::vector<MaybeExact> alpha;  // pairings <alpha, s_j> against the section basis
    RVector alpha_frame;            // <alpha, t_j> in the orthonormal frame
    MaybeExact eps_angle;
    std::vector<RVector> basis;     // model coordinates

    int mult() const { return static_cast<int>(basis.size()); }
    bool is_zero_root() const;
    bool alpha_exact() const;
    std::string alpha_key() const;  // canonical string identity of the root
};

struct CoarseRootData {
    AbelianFrame frame;
    std::vector<RootBlock> blocks;  // one per alpha in Delta^+ plus the zero block

    int total_dim() const;
    const RootBlock* zero_block() const;
    std::vector<const RootBlock*> positive_roots() const;
};

struct RefinedRootData {
    AbelianFrame frame;
    std::vector<RootBlock> zero_blocks;  // (0, eps)
    std::vector<RootBlock> root_blocks;  // (alpha, eps)

    int total_dim() const;
    int algebra_dim() const { return frame.model->dim(); }

    // coarse multiplicity m(alpha) = sum_eps m(alpha, eps)
    std::vector<std::pair<std::string, int>> coarse_multiplicities() const;

    double ad_square_residual() const;
    double sigma_rotation_residual(const AutomorphismModel& sigma) const;
    double orthogonality_residual() const;
};

CoarseRootData root_decomposition(const AbelianFrame& frame, const DecompositionOptions& opts = {});

RefinedRootData refine_by_sigma(const CoarseRootData& coarse, const AutomorphismModel& sigma,
                                const DecompositionOptions& opts = {});

}  // namespace liepath

#endif
