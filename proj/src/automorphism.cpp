#include "liepath/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace liepath {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

OuterRecipe outer_recipe_from_name(const std::string& name) {
    if (name == "none") return OuterRecipe::none;
    if (name == "complex_conjugation") return OuterRecipe::complex_conjugation;
    if (name == "orthogonal_flip") return OuterRecipe::orthogonal_flip;
    throw std::invalid_argument("unknown outer recipe: " + name);
}

std::string outer_recipe_name(OuterRecipe r) {
    switch (r) {
        case OuterRecipe::none: return "none";
        case OuterRecipe::complex_conjugation: return "complex_conjugation";
        case OuterRecipe::orthogonal_flip: return "orthogonal_flip";
    }
    return "?";
}

AutomorphismModel AutomorphismModel::identity(const LieAlgebraModel& g) {
    AutomorphismModel s;
    s.model_ = &g;
    s.diff_ = RMatrix::Identity(g.dim(), g.dim());
    s.declared_order_ = 1;
    s.identity_ = true;
    return s;
}

AutomorphismModel AutomorphismModel::build(const LieAlgebraModel& g, std::optional<CMatrix> inner_b,
                                           OuterRecipe outer, int declared_order) {
    AutomorphismModel s;
    s.model_ = &g;
    s.outer_ = outer;
    s.declared_order_ = declared_order;
    s.identity_ = !inner_b && outer == OuterRecipe::none;
    if (inner_b) {
        GroupElement check(g, *inner_b);  // validates unitarity
        s.inner_b_ = std::move(*inner_b);
    }
    if (outer == OuterRecipe::orthogonal_flip) {
        s.flip_ = CMatrix::Identity(g.matrix_size(), g.matrix_size());
        s.flip_(g.matrix_size() - 1, g.matrix_size() - 1) = -1.0;
    }

    const int d = g.dim();
    s.diff_ = RMatrix(d, d);
    for (int i = 0; i < d; ++i)
        s.diff_.col(i) = g.coords_of(s.apply_matrix(g.basis_matrix(i)));

    if (s.metric_residual() > 1e-12)
        throw std::runtime_error("automorphism does not preserve the inner product");
    if (s.bracket_residual() > 1e-10)
        throw std::runtime_error("automorphism does not preserve the bracket");
    if (s.group_compat_residual() > 1e-8)
        throw std::runtime_error("group and algebra levels of the automorphism disagree");
    if (declared_order > 0 && s.order_residual() > 1e-9)
        throw std::runtime_error("automorphism does not have the declared order");
    return s;
}

CMatrix AutomorphismModel::apply_matrix(const CMatrix& m) const {
    CMatrix r = m;
    switch (outer_) {
        case OuterRecipe::none: break;
        case OuterRecipe::complex_conjugation: r = r.conjugate(); break;
        case OuterRecipe::orthogonal_flip: r = flip_ * r * flip_; break;
    }
    if (inner_b_) r = (*inner_b_) * r * inner_b_->adjoint();
    return r;
}

double AutomorphismModel::metric_residual() const {
    const RMatrix& m = model_->gram();
    return (diff_.transpose() * m * diff_ - m).cwiseAbs().maxCoeff();
}

double AutomorphismModel::bracket_residual() const {
    const int d = model_->dim();
    double r = 0.0;
    for (int i = 0; i < d; ++i) {
        RVector di = diff_.col(i);
        for (int j = i + 1; j < d; ++j) {
            RVector lhs = diff_ * model_->bracket(RVector(RVector::Unit(d, i)), RVector(RVector::Unit(d, j)));
            RVector rhs = model_->bracket(di, RVector(diff_.col(j)));
            r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    return r;
}

double AutomorphismModel::group_compat_residual(int samples, unsigned seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 0.7);
    double r = 0.0;
    for (int s = 0; s < samples; ++s) {
        RVector x(model_->dim());
        for (int i = 0; i < model_->dim(); ++i) x(i) = dist(rng);
        CMatrix lhs = apply_matrix(model_->exp(x));
        CMatrix rhs = model_->exp(diff_ * x);
        r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return r;
}

double AutomorphismModel::order_residual() const {
    if (declared_order_ <= 0) return 0.0;
    RMatrix p = RMatrix::Identity(model_->dim(), model_->dim());
    for (int k = 0; k < declared_order_; ++k) p = diff_ * p;
    return (p - RMatrix::Identity(model_->dim(), model_->dim())).cwiseAbs().maxCoeff();
}

int EigenAngleDecomposition::total_dim() const {
    int d = 0;
    for (const auto& b : blocks) d += b.dim();
    return d;
}

EigenAngleDecomposition eigen_angles(const AutomorphismModel& sigma) {
    const LieAlgebraModel& g = sigma.algebra();
    const int d = g.dim();
    RMatrix dn = g.ortho_map() * sigma.differential() * g.ortho_map_inv();

    // Real Schur form of an orthogonal matrix: block diagonal with +-1 entries
    // and 2x2 rotation blocks; U is orthogonal so columns give the planes.
    Eigen::RealSchur<RMatrix> schur(dn);
    RMatrix t = schur.matrixT();
    RMatrix u = schur.matrixU();

    struct Plane {
        double angle;
        std::vector<RVector> vecs;  // orthonormal coords
    };
    std::vector<Plane> planes;
    int i = 0;
    while (i < d) {
        bool two = (i + 1 < d) && std::abs(t(i + 1, i)) > 1e-12;
        if (two) {
            double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
            double s = 0.5 * (t(i + 1, i) - t(i, i + 1));
            double angle = std::atan2(std::abs(s), c);
            RVector v1 = u.col(i), v2 = u.col(i + 1);
            // orient the plane so the rotation angle is +angle
            if (s < 0) std::swap(v1, v2);
            planes.push_back({angle, {v1, v2}});
            i += 2;
        } else {
            double angle = t(i, i) > 0 ? 0.0 : kPi;
            planes.push_back({angle, {u.col(i)}});
            i += 1;
        }
    }

    // group planes by snapped angle
    std::sort(planes.begin(), planes.end(), [](const Plane& a, const Plane& b) { return a.angle < b.angle; });
    EigenAngleDecomposition dec;
    for (size_t k = 0; k < planes.size();) {
        size_t j = k;
        while (j < planes.size() && std::abs(planes[j].angle - planes[k].angle) < 1e-9) ++j;
        AngleBlock blk;
        double mean = 0.0;
        for (size_t l = k; l < j; ++l) mean += planes[l].angle;
        mean /= static_cast<double>(j - k);
        blk.angle = MaybeExact(mean);
        if (auto ex = snap_pi_multiple(mean)) blk.angle = MaybeExact(*ex);
        for (size_t l = k; l < j; ++l)
            for (const auto& v : planes[l].vecs) blk.basis.push_back(g.from_ortho(v));
        dec.blocks.push_back(std::move(blk));
        k = j;
    }

    // reconstruction residual: rebuild D from the blocks
    RMatrix rebuilt = RMatrix::Zero(d, d);
    for (const auto& blk : dec.blocks) {
        double a = blk.angle.value;
        if (blk.angle.exact) a = blk.angle.exact->value();
        if (std::abs(a) < 1e-15 || std::abs(a - kPi) < 1e-15) {
            double s = std::abs(a) < 1e-15 ? 1.0 : -1.0;
            for (const auto& v : blk.basis) {
                RVector z = g.to_ortho(v);
                rebuilt += s * z * z.transpose();
            }
        } else {
            for (size_t p = 0; p + 1 < blk.basis.size(); p += 2) {
                RVector z1 = g.to_ortho(blk.basis[p]), z2 = g.to_ortho(blk.basis[p + 1]);
                rebuilt += std::cos(a) * (z1 * z1.transpose() + z2 * z2.transpose());
                rebuilt += std::sin(a) * (z2 * z1.transpose() - z1 * z2.transpose());
            }
        }
    }
    dec.reconstruction_residual = (rebuilt - dn).cwiseAbs().maxCoeff();
    return dec;
}

std::vector<RVector> fixed_algebra(const AutomorphismModel& sigma) {
    auto dec = eigen_angles(sigma);
    for (const auto& blk : dec.blocks)
        if (std::abs(blk.angle.value) < 1e-12) return blk.basis;
    return {};
}

AdTauReport verify_ad_tau_split(const AutomorphismModel& sigma, const GroupElement& b,
                                const AutomorphismModel& tau) {
    if (tau.declared_order() < 1 || tau.declared_order() > 3)
        throw std::invalid_argument("verify_ad_tau_split: tau must have declared order 1, 2 or 3");
    const LieAlgebraModel& g = sigma.algebra();
    AdTauReport rep;
    RMatrix adb = adjoint_matrix(g, b.matrix);
    rep.algebra_residual = (sigma.differential() - adb * tau.differential()).cwiseAbs().maxCoeff();

    std::mt19937_64 rng(2);
    std::normal_distribution<double> dist(0.0, 0.7);
    for (int s = 0; s < 25; ++s) {
        RVector x(g.dim());
        for (int i = 0; i < g.dim(); ++i) x(i) = dist(rng);
        CMatrix lhs = sigma.apply_matrix(g.exp(x));
        CMatrix rhs = b.matrix * tau.apply_matrix(g.exp(x)) * b.matrix.adjoint();
        rep.group_residual = std::max(rep.group_residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    rep.pass = rep.algebra_residual <= 1e-8 && rep.group_residual <= 1e-8;
    return rep;
}

}  // namespace liepath
