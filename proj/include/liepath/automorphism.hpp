#ifndef LIEPATH_AUTOMORPHISM_HPP
#define LIEPATH_AUTOMORPHISM_HPP

#include <optional>
#include <string>
#include <vector>

#include "liepath/lie_algebra.hpp"

namespace liepath {

// Named outer recipes. complex_conjugation acts entrywise on SU(n); the
// orthogonal flip conjugates by diag(1,...,1,-1), which has determinant -1
// and realizes the diagram flip on SO(2n).
enum class OuterRecipe { none, complex_conjugation, orthogonal_flip };

OuterRecipe outer_recipe_from_name(const std::string& name);
std::string outer_recipe_name(OuterRecipe r);

// Group automorphism sigma = Ad(b) composed with an outer matrix recipe,
// together with its differential D on the algebra. Both levels are kept: the
// group recipe drives curves and witnesses, D drives the eigenstructure.
class AutomorphismModel {
public:
    static AutomorphismModel identity(const LieAlgebraModel& g);
    static AutomorphismModel build(const LieAlgebraModel& g, std::optional<CMatrix> inner_b,
                                   OuterRecipe outer, int declared_order);

    const LieAlgebraModel& algebra() const { return *model_; }

    // sigma as a real-linear map on matrices; valid on group elements and on
    // tangent matrices alike since every recipe piece is real-linear
    CMatrix apply_matrix(const CMatrix& m) const;
    RVector apply_algebra(const RVector& x) const { return diff_ * x; }

    const RMatrix& differential() const { return diff_; }
    int declared_order() const { return declared_order_; }  // 0 means unverified
    bool is_identity() const { return identity_; }
    OuterRecipe outer() const { return outer_; }
    const std::optional<CMatrix>& inner() const { return inner_b_; }

    // invariant residuals, all checked at build time
    double metric_residual() const;
    double bracket_residual() const;
    double group_compat_residual(int samples = 50, unsigned seed = 1) const;
    double order_residual() const;  // ||D^p - I||, 0 if order unverified

private:
    const LieAlgebraModel* model_ = nullptr;
    std::optional<CMatrix> inner_b_;
    OuterRecipe outer_ = OuterRecipe::none;
    CMatrix flip_;
    RMatrix diff_;
    int declared_order_ = 1;
    bool identity_ = true;
};

// One angle block of the real canonical form of D: the invariant subspace on
// which D rotates by the given angle in [0, pi]. Angle 0 is the fixed algebra,
// angle pi the (-1)-eigenspace; other angles come with oriented plane pairs.
struct AngleBlock {
    MaybeExact angle;                 // in [0, pi]
    std::vector<RVector> basis;       // orthonormal, model coordinates
    int dim() const { return static_cast<int>(basis.size()); }
};

struct EigenAngleDecomposition {
    std::vector<AngleBlock> blocks;   // sorted by angle
    double reconstruction_residual = 0.0;
    int total_dim() const;
};

EigenAngleDecomposition eigen_angles(const AutomorphismModel& sigma);

// orthonormal basis of ker(D - I) = g^sigma
std::vector<RVector> fixed_algebra(const AutomorphismModel& sigma);

struct AdTauReport {
    double algebra_residual = 0.0;
    double group_residual = 0.0;
    bool pass = false;
};

// Checks sigma = Ad(b) . tau on the algebra and on group samples, certifying
// that sigma computations may be transported to tau.
AdTauReport verify_ad_tau_split(const AutomorphismModel& sigma, const GroupElement& b,
                                const AutomorphismModel& tau);

}  // namespace liepath

#endif
