#ifndef LIEPATH_LIE_ALGEBRA_HPP
#define LIEPATH_LIE_ALGEBRA_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "liepath/exact.hpp"

namespace liepath {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Compact semisimple Lie algebra given by a concrete anti-Hermitian matrix
// basis. Structure constants, Killing form and the invariant inner product
// <x,y> = -c * B(x,y) are computed from the basis at construction time; the
// family constructors only choose the basis matrices and the default scale.
class LieAlgebraModel {
public:
    static LieAlgebraModel su(int n);
    static LieAlgebraModel so(int n);
    static LieAlgebraModel sp(int n);
    static LieAlgebraModel product(const LieAlgebraModel& a, const LieAlgebraModel& b);

    // Rescale the metric: <x,y> = -c*B(x,y) with c = scale. The default
    // constructors pick c so that <x,y> = -tr(x y) in the defining
    // representation; the scale is kept explicit so spectra can report it.
    void set_metric_scale(const Rational& c);

    const std::string& family() const { return family_; }
    int dim() const { return dim_; }
    int matrix_size() const { return msize_; }
    const CMatrix& basis_matrix(int i) const { return basis_[i]; }

    // coordinates <-> matrices
    CMatrix matrix_of(const RVector& coords) const;
    RVector coords_of(const CMatrix& m) const;

    RVector bracket(const RVector& x, const RVector& y) const;
    double inner(const RVector& x, const RVector& y) const;
    double norm(const RVector& x) const;
    double killing(const RVector& x, const RVector& y) const;

    // matrix of ad(x): y -> [x,y] acting on coordinates
    RMatrix ad_matrix(const RVector& x) const;

    // the same operator expressed in <.,.>-orthonormal coordinates
    RMatrix ad_ortho(const RVector& x) const;

    CMatrix exp(const RVector& x) const;

    // principal logarithm of a unitary matrix, returned as coordinates
    RVector log_coords(const CMatrix& g) const;
    CMatrix log_matrix(const CMatrix& g) const;

    const RMatrix& gram() const { return gram_; }
    const RMatrix& killing_matrix() const { return killing_; }
    const RMatrix& ortho_map() const { return ortho_; }          // z = ortho_ * x
    const RMatrix& ortho_map_inv() const { return ortho_inv_; }
    RVector to_ortho(const RVector& x) const { return ortho_ * x; }
    RVector from_ortho(const RVector& z) const { return ortho_inv_ * z; }

    const std::vector<Rational>& metric_scales() const { return metric_scales_; }

    // validation residuals (construction throws if they exceed tolerances)
    double jacobi_residual() const;
    double antisymmetry_residual() const;
    double ad_invariance_residual() const;
    double tangent_defect(const CMatrix& m) const;  // anti-Hermitian + family structure

    bool is_product() const { return !factor_dims_.empty(); }
    const std::vector<int>& factor_dims() const { return factor_dims_; }

private:
    LieAlgebraModel() = default;
    void finalize(double default_trace_scale_hint);
    void rebuild_metric();

    std::string family_;
    int dim_ = 0;
    int msize_ = 0;
    std::vector<CMatrix> basis_;
    std::vector<RMatrix> struct_mats_;  // struct_mats_[i](k,j) = c_{ij}^k
    RMatrix killing_;
    RMatrix gram_;
    RMatrix ortho_, ortho_inv_;
    std::vector<Rational> metric_scales_;  // one per simple/product factor block
    std::vector<int> factor_dims_;         // empty unless product
};

// Validated element of the algebra: coordinate vector plus cached matrix.
struct AlgebraElement {
    const LieAlgebraModel* model = nullptr;
    RVector coords;

    AlgebraElement() = default;
    AlgebraElement(const LieAlgebraModel& m, RVector c);
    CMatrix matrix() const { return model->matrix_of(coords); }
    double norm() const { return model->norm(coords); }
};

struct GroupElement {
    const LieAlgebraModel* model = nullptr;
    CMatrix matrix;

    GroupElement() = default;
    GroupElement(const LieAlgebraModel& m, CMatrix g, double tol = 1e-10);
    double unitarity_defect() const;
    GroupElement inverse() const { return GroupElement(*model, matrix.adjoint()); }
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
double inner(const AlgebraElement& x, const AlgebraElement& y);
GroupElement exp_map(const AlgebraElement& x);
RMatrix ad_operator(const AlgebraElement& x);

// matrix of Ad(g): x -> g x g^-1 on coordinates
RMatrix adjoint_matrix(const LieAlgebraModel& model, const CMatrix& g);

}  // namespace liepath

#endif
