#include "liepath/lie_algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace liepath {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

CMatrix unit(int size, int r, int c, cd v) {
    CMatrix m = CMatrix::Zero(size, size);
    m(r, c) = v;
    return m;
}

// real Frobenius pairing; nondegenerate on anti-Hermitian matrices
double frob(const CMatrix& a, const CMatrix& b) {
    return (a.adjoint() * b).trace().real();
}

}  // namespace

LieAlgebraModel LieAlgebraModel::su(int n) {
    if (n < 2) throw std::invalid_argument("su(n) requires n >= 2");
    LieAlgebraModel m;
    m.family_ = "su(" + std::to_string(n) + ")";
    m.msize_ = n;
    for (int k = 0; k + 1 < n; ++k)
        m.basis_.push_back(unit(n, k, k, kI) + unit(n, k + 1, k + 1, -kI));
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            m.basis_.push_back(unit(n, j, k, 1.0) + unit(n, k, j, -1.0));
            m.basis_.push_back(unit(n, j, k, kI) + unit(n, k, j, kI));
        }
    m.finalize(1.0 / (2.0 * n));
    return m;
}

LieAlgebraModel LieAlgebraModel::so(int n) {
    if (n < 3) throw std::invalid_argument("so(n) requires n >= 3 (so(2) is abelian)");
    LieAlgebraModel m;
    m.family_ = "so(" + std::to_string(n) + ")";
    m.msize_ = n;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            m.basis_.push_back(unit(n, j, k, 1.0) + unit(n, k, j, -1.0));
    m.finalize(1.0 / (n - 2.0));
    return m;
}

LieAlgebraModel LieAlgebraModel::sp(int n) {
    if (n < 1) throw std::invalid_argument("sp(n) requires n >= 1");
    LieAlgebraModel m;
    m.family_ = "sp(" + std::to_string(n) + ")";
    const int s = 2 * n;
    m.msize_ = s;
    auto blk = [&](const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
        CMatrix r = CMatrix::Zero(s, s);
        r.block(0, 0, n, n) = a;
        r.block(0, n, n, n) = b;
        r.block(n, 0, n, n) = c;
        r.block(n, n, n, n) = d;
        return r;
    };
    CMatrix z = CMatrix::Zero(n, n);
    // u(n) block [[A,0],[0,conj(A)]]
    for (int k = 0; k < n; ++k) {
        CMatrix a = unit(n, k, k, kI);
        m.basis_.push_back(blk(a, z, z, a.conjugate()));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            CMatrix a = unit(n, j, k, 1.0) + unit(n, k, j, -1.0);
            m.basis_.push_back(blk(a, z, z, a.conjugate()));
            CMatrix b = unit(n, j, k, kI) + unit(n, k, j, kI);
            m.basis_.push_back(blk(b, z, z, b.conjugate()));
        }
    // symmetric block [[0,B],[-conj(B),0]]
    auto push_sym = [&](const CMatrix& b) {
        m.basis_.push_back(blk(z, b, -b.conjugate(), z));
    };
    for (int k = 0; k < n; ++k) {
        push_sym(unit(n, k, k, 1.0));
        push_sym(unit(n, k, k, kI));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            push_sym(unit(n, j, k, 1.0) + unit(n, k, j, 1.0));
            push_sym(unit(n, j, k, kI) + unit(n, k, j, kI));
        }
    m.finalize(1.0 / (2.0 * n + 2.0));
    return m;
}

LieAlgebraModel LieAlgebraModel::product(const LieAlgebraModel& a, const LieAlgebraModel& b) {
    LieAlgebraModel m;
    m.family_ = a.family_ + "+" + b.family_;
    m.msize_ = a.msize_ + b.msize_;
    for (const auto& e : a.basis_) {
        CMatrix x = CMatrix::Zero(m.msize_, m.msize_);
        x.block(0, 0, a.msize_, a.msize_) = e;
        m.basis_.push_back(x);
    }
    for (const auto& e : b.basis_) {
        CMatrix x = CMatrix::Zero(m.msize_, m.msize_);
        x.block(a.msize_, a.msize_, b.msize_, b.msize_) = e;
        m.basis_.push_back(x);
    }
    for (int d : a.factor_dims_.empty() ? std::vector<int>{a.dim_} : a.factor_dims_)
        m.factor_dims_.push_back(d);
    for (int d : b.factor_dims_.empty() ? std::vector<int>{b.dim_} : b.factor_dims_)
        m.factor_dims_.push_back(d);
    m.metric_scales_.clear();
    for (const auto& c : a.metric_scales_) m.metric_scales_.push_back(c);
    for (const auto& c : b.metric_scales_) m.metric_scales_.push_back(c);
    m.finalize(-1.0);  // scales already known per factor
    return m;
}

void LieAlgebraModel::finalize(double default_trace_scale_hint) {
    dim_ = static_cast<int>(basis_.size());
    const int d = dim_;

    // coordinates of a matrix via the Frobenius Gram matrix of the basis
    RMatrix fg(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) fg(i, j) = frob(basis_[i], basis_[j]);
    Eigen::LLT<RMatrix> fg_llt(fg);
    if (fg_llt.info() != Eigen::Success)
        throw std::runtime_error(family_ + ": basis matrices are not independent");

    auto coords_raw = [&](const CMatrix& m) {
        RVector rhs(d);
        for (int j = 0; j < d; ++j) rhs(j) = frob(basis_[j], m);
        return RVector(fg_llt.solve(rhs));
    };

    // structure constants from the matrix commutators
    struct_mats_.assign(d, RMatrix::Zero(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            CMatrix c = basis_[i] * basis_[j] - basis_[j] * basis_[i];
            RVector v = coords_raw(c);
            for (int k = 0; k < d; ++k) struct_mats_[i](k, j) = v(k);
        }

    killing_ = RMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            killing_(i, j) = (struct_mats_[i] * struct_mats_[j]).trace();
            killing_(j, i) = killing_(i, j);
        }

    Eigen::SelfAdjointEigenSolver<RMatrix> kes(killing_);
    if (kes.eigenvalues().maxCoeff() > -1e-9)
        throw std::runtime_error(family_ + ": Killing form is not negative definite (not semisimple)");

    if (metric_scales_.empty()) {
        // pin the default scale so that <x,y> = -tr(x y) in the defining rep,
        // derived from the computed Killing matrix rather than a table
        double t00 = -frob(basis_[0], basis_[0]) * -1.0;  // -tr(e0^2) = +frob for anti-Hermitian
        t00 = frob(basis_[0], basis_[0]);
        double c = t00 / (-killing_(0, 0));
        auto snapped = snap_rational(c, 4096, 1e-9 * std::abs(c) + 1e-12);
        Rational cr = snapped ? *snapped : Rational(0);
        if (!snapped || std::abs(cr.value() - c) > 1e-9)
            throw std::runtime_error(family_ + ": could not pin rational metric scale");
        if (default_trace_scale_hint > 0 && std::abs(c - default_trace_scale_hint) > 1e-9)
            throw std::runtime_error(family_ + ": computed trace scale disagrees with family value");
        metric_scales_.assign(1, cr);
    }
    rebuild_metric();

    if (jacobi_residual() > 1e-12)
        throw std::runtime_error(family_ + ": Jacobi identity violated");
    if (antisymmetry_residual() > 1e-12)
        throw std::runtime_error(family_ + ": bracket antisymmetry violated");
    if (ad_invariance_residual() > 1e-10)
        throw std::runtime_error(family_ + ": inner product is not Ad-invariant");
    for (const auto& e : basis_)
        if (tangent_defect(e) > 1e-12)
            throw std::runtime_error(family_ + ": basis matrix fails tangent-space structure");
}

void LieAlgebraModel::rebuild_metric() {
    const int d = dim_;
    gram_ = RMatrix::Zero(d, d);
    std::vector<int> fdims = factor_dims_.empty() ? std::vector<int>{d} : factor_dims_;
    int off = 0;
    for (size_t f = 0; f < fdims.size(); ++f) {
        int fd = fdims[f];
        double c = metric_scales_[f].value();
        gram_.block(off, off, fd, fd) = -c * killing_.block(off, off, fd, fd);
        off += fd;
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> ges(gram_);
    if (ges.eigenvalues().minCoeff() <= 0)
        throw std::runtime_error(family_ + ": inner product not positive definite");
    RVector sq = ges.eigenvalues().cwiseSqrt();
    ortho_ = sq.asDiagonal() * ges.eigenvectors().transpose();
    ortho_inv_ = ges.eigenvectors() * sq.cwiseInverse().asDiagonal();
}

void LieAlgebraModel::set_metric_scale(const Rational& c) {
    if (c.value() <= 0) throw std::invalid_argument("metric scale must be positive");
    metric_scales_.assign(factor_dims_.empty() ? 1 : factor_dims_.size(), c);
    rebuild_metric();
}

CMatrix LieAlgebraModel::matrix_of(const RVector& coords) const {
    if (coords.size() != dim_) throw std::invalid_argument(family_ + ": coordinate dimension mismatch");
    CMatrix m = CMatrix::Zero(msize_, msize_);
    for (int i = 0; i < dim_; ++i)
        if (coords(i) != 0.0) m += coords(i) * basis_[i];
    return m;
}

RVector LieAlgebraModel::coords_of(const CMatrix& m) const {
    RVector rhs(dim_);
    for (int j = 0; j < dim_; ++j) rhs(j) = frob(basis_[j], m);
    RMatrix fg(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) fg(i, j) = frob(basis_[i], basis_[j]);
    return fg.llt().solve(rhs);
}

RVector LieAlgebraModel::bracket(const RVector& x, const RVector& y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw std::invalid_argument(family_ + ": bracket dimension mismatch");
    return ad_matrix(x) * y;
}

double LieAlgebraModel::inner(const RVector& x, const RVector& y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw std::invalid_argument(family_ + ": inner dimension mismatch");
    return x.dot(gram_ * y);
}

double LieAlgebraModel::norm(const RVector& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

double LieAlgebraModel::killing(const RVector& x, const RVector& y) const {
    return x.dot(killing_ * y);
}

RMatrix LieAlgebraModel::ad_matrix(const RVector& x) const {
    RMatrix a = RMatrix::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        if (x(i) != 0.0) a += x(i) * struct_mats_[i];
    return a;
}

RMatrix LieAlgebraModel::ad_ortho(const RVector& x) const {
    return ortho_ * ad_matrix(x) * ortho_inv_;
}

CMatrix LieAlgebraModel::exp(const RVector& x) const { return matrix_of(x).exp(); }

CMatrix LieAlgebraModel::log_matrix(const CMatrix& g) const {
    // principal log of a unitary matrix via Schur form (diagonal for normal input)
    Eigen::ComplexSchur<CMatrix> schur(g);
    const CMatrix& t = schur.matrixT();
    const CMatrix& u = schur.matrixU();
    double offdiag = 0.0;
    for (int i = 0; i < t.rows(); ++i)
        for (int j = i + 1; j < t.cols(); ++j) offdiag = std::max(offdiag, std::abs(t(i, j)));
    if (offdiag > 1e-8) throw std::runtime_error(family_ + ": log of non-normal matrix");
    CMatrix lg = CMatrix::Zero(t.rows(), t.cols());
    for (int i = 0; i < t.rows(); ++i) lg(i, i) = std::log(t(i, i));
    return u * lg * u.adjoint();
}

RVector LieAlgebraModel::log_coords(const CMatrix& g) const { return coords_of(log_matrix(g)); }

double LieAlgebraModel::jacobi_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j) {
            RMatrix lhs = struct_mats_[i] * struct_mats_[j] - struct_mats_[j] * struct_mats_[i];
            for (int k = 0; k < dim_; ++k) lhs -= struct_mats_[i](k, j) * struct_mats_[k];
            r = std::max(r, lhs.cwiseAbs().maxCoeff());
        }
    return r;
}

double LieAlgebraModel::antisymmetry_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k)
                r = std::max(r, std::abs(struct_mats_[i](k, j) + struct_mats_[j](k, i)));
    return r;
}

double LieAlgebraModel::ad_invariance_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i) {
        RMatrix m = gram_ * struct_mats_[i];
        r = std::max(r, (m + m.transpose()).cwiseAbs().maxCoeff());
    }
    return r;
}

double LieAlgebraModel::tangent_defect(const CMatrix& m) const {
    double r = (m + m.adjoint()).cwiseAbs().maxCoeff();
    if (family_.rfind("su", 0) == 0) r = std::max(r, std::abs(m.trace()));
    if (family_.rfind("so", 0) == 0) r = std::max(r, m.imag().cwiseAbs().maxCoeff());
    return r;
}

AlgebraElement::AlgebraElement(const LieAlgebraModel& m, RVector c) : model(&m), coords(std::move(c)) {
    if (coords.size() != m.dim())
        throw std::invalid_argument("AlgebraElement: coordinate dimension mismatch");
}

GroupElement::GroupElement(const LieAlgebraModel& m, CMatrix g, double tol) : model(&m), matrix(std::move(g)) {
    if (matrix.rows() != m.matrix_size() || matrix.cols() != m.matrix_size())
        throw std::invalid_argument("GroupElement: matrix size mismatch");
    if (unitarity_defect() > tol)
        throw std::invalid_argument("GroupElement: unitarity defect exceeds tolerance");
}

double GroupElement::unitarity_defect() const {
    CMatrix r = matrix.adjoint() * matrix - CMatrix::Identity(matrix.rows(), matrix.cols());
    return r.cwiseAbs().maxCoeff();
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.model != y.model || x.coords.size() != y.coords.size())
        throw std::invalid_argument("bracket: elements from different models");
    return AlgebraElement(*x.model, x.model->bracket(x.coords, y.coords));
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.model != y.model) throw std::invalid_argument("inner: elements from different models");
    return x.model->inner(x.coords, y.coords);
}

GroupElement exp_map(const AlgebraElement& x) { return GroupElement(*x.model, x.model->exp(x.coords)); }

RMatrix ad_operator(const AlgebraElement& x) { return x.model->ad_matrix(x.coords); }

RMatrix adjoint_matrix(const LieAlgebraModel& model, const CMatrix& g) {
    const int d = model.dim();
    RMatrix a(d, d);
    CMatrix gi = g.adjoint();
    for (int i = 0; i < d; ++i)
        a.col(i) = model.coords_of(g * model.basis_matrix(i) * gi);
    return a;
}

}  // namespace liepath
