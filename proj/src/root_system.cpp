#include "liepath/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace liepath {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
using cd = std::complex<double>;

// Split sorted eigenvalues into clusters; gaps inside (cluster_tol, min_gap)
// are ambiguous and raise a ClusteringError with the offending gap.
std::vector<std::pair<double, std::vector<int>>> cluster_values(const std::vector<double>& vals,
                                                                const DecompositionOptions& opts,
                                                                double scale) {
    std::vector<int> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });

    double ctol = opts.cluster_tol * std::max(1.0, scale);
    double gap = opts.min_gap * std::max(1.0, scale);

    std::vector<std::pair<double, std::vector<int>>> clusters;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && vals[order[j + 1]] - vals[order[j]] <= ctol) ++j;
        if (j + 1 < order.size()) {
            double d = vals[order[j + 1]] - vals[order[j]];
            if (d < gap) {
                std::ostringstream os;
                os << "ambiguous eigenvalue cluster: gap " << d << " lies between tolerance " << ctol
                   << " and required spectral gap " << gap;
                throw ClusteringError(os.str());
            }
        }
        double mean = 0.0;
        std::vector<int> idx;
        for (size_t l = i; l <= j; ++l) {
            mean += vals[order[l]];
            idx.push_back(order[l]);
        }
        mean /= static_cast<double>(j - i + 1);
        if (std::abs(mean) <= 10.0 * ctol) mean = 0.0;
        clusters.push_back({mean, idx});
        i = j + 1;
    }
    return clusters;
}

struct ComplexLeaf {
    Eigen::MatrixXcd basis;   // d x m, orthonormal columns (ortho coordinates)
    std::vector<double> mu;   // <alpha, t_j> along the frame
    double eps_angle = 0.0;   // arg eps, only meaningful when refined
    bool refined = false;
};

// Nested simultaneous eigenspace decomposition of the commuting Hermitian
// family {-i ad(t_j)} over C^d, optionally refined by the unitary action of
// sigma on each joint eigenspace.
std::vector<ComplexLeaf> joint_eigenspaces(const AbelianFrame& frame, const AutomorphismModel* sigma,
                                           const DecompositionOptions& opts) {
    const LieAlgebraModel& g = *frame.model;
    const int d = g.dim();
    const int k = frame.rank();

    std::vector<Eigen::MatrixXcd> ops;
    double scale = 1.0;
    for (int j = 0; j < k; ++j) {
        RMatrix s = g.ad_ortho(frame.frame[j]);
        ops.push_back(cd(0.0, -1.0) * s.cast<cd>());
        scale = std::max(scale, s.cwiseAbs().maxCoeff());
    }

    std::vector<ComplexLeaf> leaves;
    leaves.push_back({Eigen::MatrixXcd::Identity(d, d), {}, 0.0, false});

    for (int j = 0; j < k; ++j) {
        std::vector<ComplexLeaf> next;
        for (auto& leaf : leaves) {
            Eigen::MatrixXcd a = leaf.basis.adjoint() * ops[j] * leaf.basis;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (a + a.adjoint()));
            std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
            for (auto& [mean, idx] : cluster_values(vals, opts, scale)) {
                ComplexLeaf child;
                child.mu = leaf.mu;
                child.mu.push_back(mean);
                child.basis.resize(d, idx.size());
                for (size_t c = 0; c < idx.size(); ++c)
                    child.basis.col(c) = leaf.basis * es.eigenvectors().col(idx[c]);
                next.push_back(std::move(child));
            }
        }
        leaves = std::move(next);
    }

    if (!sigma) return leaves;

    RMatrix dn = g.ortho_map() * sigma->differential() * g.ortho_map_inv();
    for (int j = 0; j < k; ++j) {
        double comm = (dn.cast<cd>() * ops[j] - ops[j] * dn.cast<cd>()).cwiseAbs().maxCoeff();
        if (comm > 1e-9 * std::max(1.0, scale))
            throw std::runtime_error("sigma does not commute with ad of the frame");
    }

    std::vector<ComplexLeaf> refined;
    for (auto& leaf : leaves) {
        Eigen::MatrixXcd u = leaf.basis.adjoint() * dn.cast<cd>() * leaf.basis;
        Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
        const Eigen::MatrixXcd& t = schur.matrixT();
        double offdiag = 0.0;
        for (int r = 0; r < t.rows(); ++r)
            for (int c = r + 1; c < t.cols(); ++c) offdiag = std::max(offdiag, std::abs(t(r, c)));
        if (offdiag > 1e-9)
            throw std::runtime_error("sigma restriction to a root space is not normal");

        std::vector<double> angles(t.rows());
        for (int r = 0; r < t.rows(); ++r) angles[r] = std::arg(t(r, r));
        // cluster on the circle: values near -pi are moved next to +pi first
        std::vector<double> adjusted = angles;
        bool near_cut = false;
        for (double a : angles)
            if (std::abs(std::abs(a) - kPi) < 1e-6) near_cut = true;
        if (near_cut)
            for (double& a : adjusted)
                if (a < 0) a += 2.0 * kPi;  // park the cut at angle 0 instead

        Eigen::MatrixXcd vecs = leaf.basis * schur.matrixU();
        for (auto& [mean, idx] : cluster_values(adjusted, opts, 1.0)) {
            ComplexLeaf child;
            child.mu = leaf.mu;
            child.refined = true;
            double a = mean;
            if (a > kPi + 1e-12) a -= 2.0 * kPi;
            if (a < -kPi + 1e-9) a += 2.0 * kPi;
            if (std::abs(a - kPi) < 1e-9 || std::abs(a + kPi) < 1e-9) a = kPi;
            if (std::abs(a) < 1e-12) a = 0.0;
            child.eps_angle = a;
            child.basis.resize(d, idx.size());
            for (size_t c = 0; c < idx.size(); ++c) child.basis.col(c) = vecs.col(idx[c]);
            refined.push_back(std::move(child));
        }
    }
    return refined;
}

bool mu_is_zero(const std::vector<double>& mu, double tol) {
    for (double m : mu)
        if (std::abs(m) > tol) return false;
    return true;
}

// sign of the first nonzero coordinate decides the positive representative
int mu_sign(const std::vector<double>& mu, double tol) {
    for (double m : mu)
        if (std::abs(m) > tol) return m > 0 ? 1 : -1;
    return 0;
}

// realification of a non-self-conjugate complex piece: for each complex basis
// vector z the pair (sqrt2 Re z, -sqrt2 Im z) spans an oriented plane on which
// sigma rotates by arg eps
std::vector<RVector> realify_planes(const LieAlgebraModel& g, const Eigen::MatrixXcd& z) {
    std::vector<RVector> out;
    const double s2 = std::sqrt(2.0);
    for (int c = 0; c < z.cols(); ++c) {
        out.push_back(g.from_ortho(s2 * z.col(c).real()));
        out.push_back(g.from_ortho(-s2 * z.col(c).imag()));
    }
    return out;
}

// realification of a conjugation-stable piece (mu = 0, eps real): rank-revealing
// QR over the real and imaginary parts
std::vector<RVector> realify_stable(const LieAlgebraModel& g, const Eigen::MatrixXcd& z) {
    const int d = static_cast<int>(z.rows());
    RMatrix w(d, 2 * z.cols());
    w.leftCols(z.cols()) = z.real();
    w.rightCols(z.cols()) = -z.imag();
    Eigen::ColPivHouseholderQR<RMatrix> qr(w);
    qr.setThreshold(1e-9);
    int r = static_cast<int>(qr.rank());
    RMatrix q = qr.householderQ() * RMatrix::Identity(d, r);
    std::vector<RVector> out;
    for (int c = 0; c < r; ++c) out.push_back(g.from_ortho(q.col(c)));
    return out;
}

std::vector<MaybeExact> pairings_from_mu(const AbelianFrame& frame, const std::vector<double>& mu) {
    std::vector<MaybeExact> out;
    for (int j = 0; j < frame.rank(); ++j) {
        double p = mu[j] * frame.section_norms[j];
        MaybeExact v(p);
        if (frame.section_exact[j]) {
            if (auto r = snap_rational(p, 64, 1e-9)) v = MaybeExact(ExactScalar(*r));
        }
        out.push_back(v);
    }
    return out;
}

std::string format_pairings(const std::vector<MaybeExact>& alpha) {
    std::ostringstream os;
    for (size_t j = 0; j < alpha.size(); ++j) {
        if (j) os << ";";
        if (alpha[j].exact)
            os << alpha[j].exact->str();
        else {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", alpha[j].value);
            os << buf;
        }
    }
    return os.str();
}

bool mu_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-9) return a[i] < b[i];
    }
    return false;
}

}  // namespace

bool AbelianFrame::exact() const {
    for (bool e : section_exact)
        if (!e) return false;
    return !section_exact.empty() || rank() == 0;
}

RVector AbelianFrame::vector_from(const std::vector<MaybeExact>& coords) const {
    if (static_cast<int>(coords.size()) != rank())
        throw std::invalid_argument("coordinate list does not match the section rank");
    RVector v = RVector::Zero(model->dim());
    for (int j = 0; j < rank(); ++j) v += coords[j].value * section[j];
    return v;
}

bool RootBlock::is_zero_root() const {
    for (const auto& a : alpha)
        if (std::abs(a.value) > 1e-9) return false;
    return true;
}

bool RootBlock::alpha_exact() const {
    for (const auto& a : alpha)
        if (!a.is_exact()) return false;
    return true;
}

std::string RootBlock::alpha_key() const { return format_pairings(alpha); }

namespace {

// Integer vector parallel to v (model coordinates), if one exists with small
// entries. Sign fixed so the first nonzero entry is positive.
std::optional<RVector> integerize(const RVector& v) {
    const double tol = 1e-7;
    std::optional<RVector> best;
    double best_mag = 1e9;
    for (int j = 0; j < v.size(); ++j) {
        if (std::abs(v(j)) < 1e-9) continue;
        for (int k = 1; k <= 16; ++k) {
            double lam = static_cast<double>(k) / std::abs(v(j));
            RVector w = lam * v;
            bool ok = true;
            double mag = 0.0;
            for (int i = 0; i < w.size(); ++i) {
                double r = std::nearbyint(w(i));
                if (std::abs(w(i) - r) > tol * std::max(1.0, lam)) { ok = false; break; }
                if (std::abs(r) > 1e6) { ok = false; break; }
                mag = std::max(mag, std::abs(r));
            }
            if (!ok || mag == 0.0) continue;
            RVector r(w.size());
            for (int i = 0; i < w.size(); ++i) r(i) = std::nearbyint(w(i));
            std::int64_t gg = 0;
            for (int i = 0; i < r.size(); ++i) gg = std::gcd(gg, static_cast<std::int64_t>(std::abs(r(i))));
            if (gg > 1) r /= static_cast<double>(gg);
            for (int i = 0; i < r.size(); ++i)
                if (r(i) != 0.0) { if (r(i) < 0) r = -r; break; }
            double m = r.cwiseAbs().maxCoeff();
            if (m < best_mag) { best_mag = m; best = r; }
        }
    }
    return best;
}

// null space of the stacked constraints {ad(t_i) y = 0, y in g^sigma};
// returns an orthonormal basis in ortho coordinates
RMatrix joint_centralizer(const LieAlgebraModel& g, const RMatrix& q,
                          const std::vector<RVector>& frame, const DecompositionOptions& opts) {
    const int f = static_cast<int>(q.cols());
    if (frame.empty()) return q;
    RMatrix stacked(static_cast<int>(frame.size()) * g.dim(), f);
    for (size_t i = 0; i < frame.size(); ++i)
        stacked.middleRows(static_cast<int>(i) * g.dim(), g.dim()) = g.ad_ortho(frame[i]) * q;
    Eigen::JacobiSVD<RMatrix> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? std::max(sv(0), 1.0) : 1.0;
    int null_dim = 0;
    for (int i = 0; i < sv.size(); ++i) {
        double s = sv(i) / smax;
        if (s <= opts.cluster_tol) {
            ++null_dim;
        } else if (s < opts.min_gap) {
            std::ostringstream os;
            os << "ambiguous rank decision in centralizer: singular value ratio " << s;
            throw ClusteringError(os.str());
        }
    }
    null_dim += f - static_cast<int>(sv.size());  // trailing exact zeros when rows < cols
    RMatrix n = svd.matrixV().rightCols(null_dim);
    return q * n;
}

}  // namespace

AbelianFrame find_maximal_abelian(const AutomorphismModel& sigma, const FrameSeed& seed,
                                  unsigned rng_seed, const DecompositionOptions& opts) {
    const LieAlgebraModel& g = sigma.algebra();
    const int d = g.dim();

    auto fixed = fixed_algebra(sigma);
    if (fixed.empty()) throw std::runtime_error("fixed algebra of sigma is trivial");
    RMatrix q(d, static_cast<int>(fixed.size()));
    for (size_t i = 0; i < fixed.size(); ++i) q.col(static_cast<int>(i)) = g.to_ortho(fixed[i]);

    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> dist;

    AbelianFrame out;
    out.model = &g;

    std::vector<RVector> frame_ortho;
    auto in_span = [&](const RVector& z) {
        RVector p = z;
        for (const auto& t : frame_ortho) p -= t.dot(z) * t;
        return p;
    };

    auto pick_candidate = [&](const RMatrix& space) -> RVector {
        // space: orthonormal basis (ortho coords) of the centralizer
        RMatrix proj = space * space.transpose();
        if (seed.kind == FrameSeed::Kind::random) {
            RVector y(space.cols());
            for (int i = 0; i < y.size(); ++i) y(i) = dist(rng);
            return in_span(space * y);
        }
        double best = 0.0;
        RVector pick;
        for (int i = 0; i < d; ++i) {
            RVector z = g.to_ortho(RVector(RVector::Unit(d, i)));
            RVector v = in_span(proj * z);
            if (v.norm() > best + 1e-12) {
                best = v.norm();
                pick = v;
            }
        }
        if (best < 1e-8) pick = RVector::Zero(d);
        return pick;
    };

    // seed element
    RVector first;
    if (seed.kind == FrameSeed::Kind::element) {
        RVector z = g.to_ortho(seed.element);
        first = q * (q.transpose() * z);  // project into g^sigma
        if (first.norm() < 1e-10) throw std::invalid_argument("seed element has no component in g^sigma");
    } else {
        first = pick_candidate(q);
        if (first.norm() < 1e-10) throw std::runtime_error("could not seed the abelian subspace");
    }
    frame_ortho.push_back(first / first.norm());

    for (;;) {
        RMatrix c = joint_centralizer(g, q, [&] {
            std::vector<RVector> model_frame;
            for (const auto& t : frame_ortho) model_frame.push_back(g.from_ortho(t));
            return model_frame;
        }(), opts);
        if (c.cols() == static_cast<int>(frame_ortho.size())) {
            out.centralizer_dim = static_cast<int>(c.cols());
            break;
        }
        if (c.cols() < static_cast<int>(frame_ortho.size()))
            throw std::runtime_error("centralizer dimension dropped below the frame rank");
        RVector next = pick_candidate(c);
        if (next.norm() < 1e-8) {
            // no candidate extends the span even though the centralizer is bigger
            out.centralizer_dim = static_cast<int>(c.cols());
            break;
        }
        frame_ortho.push_back(next / next.norm());
    }

    for (const auto& t : frame_ortho) {
        RVector v = g.from_ortho(t);
        auto integral = integerize(v);
        if (integral) {
            out.section.push_back(*integral);
            out.section_exact.push_back(true);
        } else {
            out.section.push_back(v);
            out.section_exact.push_back(false);
        }
        double n = g.norm(out.section.back());
        out.section_norms.push_back(n);
        out.frame.push_back(out.section.back() / n);
    }

    // construction guarantees; kept as hard checks
    for (size_t i = 0; i < out.frame.size(); ++i)
        for (size_t j = i + 1; j < out.frame.size(); ++j)
            if (g.bracket(out.frame[i], out.frame[j]).cwiseAbs().maxCoeff() > 1e-12)
                throw std::runtime_error("frame vectors do not commute");
    return out;
}

int CoarseRootData::total_dim() const {
    int d = 0;
    for (const auto& b : blocks) d += b.mult();
    return d;
}

const RootBlock* CoarseRootData::zero_block() const {
    for (const auto& b : blocks)
        if (b.is_zero_root()) return &b;
    return nullptr;
}

std::vector<const RootBlock*> CoarseRootData::positive_roots() const {
    std::vector<const RootBlock*> out;
    for (const auto& b : blocks)
        if (!b.is_zero_root()) out.push_back(&b);
    return out;
}

CoarseRootData root_decomposition(const AbelianFrame& frame, const DecompositionOptions& opts) {
    const LieAlgebraModel& g = *frame.model;
    auto leaves = joint_eigenspaces(frame, nullptr, opts);

    CoarseRootData out;
    out.frame = frame;

    const double ztol = 10.0 * opts.cluster_tol;
    // merged zero block
    {
        RootBlock zb;
        zb.alpha.assign(frame.rank(), MaybeExact(ExactScalar::zero()));
        zb.alpha_frame = RVector::Zero(frame.rank());
        zb.eps_angle = MaybeExact(ExactScalar::zero());
        std::vector<Eigen::MatrixXcd> zs;
        int cols = 0;
        for (const auto& leaf : leaves)
            if (mu_is_zero(leaf.mu, ztol)) cols += static_cast<int>(leaf.basis.cols());
        Eigen::MatrixXcd z(g.dim(), cols);
        int at = 0;
        for (const auto& leaf : leaves)
            if (mu_is_zero(leaf.mu, ztol)) {
                z.middleCols(at, leaf.basis.cols()) = leaf.basis;
                at += static_cast<int>(leaf.basis.cols());
            }
        zb.basis = realify_stable(g, z);
        out.blocks.push_back(std::move(zb));
    }

    std::vector<const ComplexLeaf*> pos;
    for (const auto& leaf : leaves)
        if (mu_sign(leaf.mu, ztol) > 0) pos.push_back(&leaf);
    std::sort(pos.begin(), pos.end(), [](const ComplexLeaf* a, const ComplexLeaf* b) { return mu_less(a->mu, b->mu); });

    for (const ComplexLeaf* leaf : pos) {
        RootBlock b;
        b.alpha = pairings_from_mu(frame, leaf->mu);
        b.alpha_frame = Eigen::Map<const RVector>(leaf->mu.data(), frame.rank());
        b.eps_angle = MaybeExact(ExactScalar::zero());
        b.basis = realify_planes(g, leaf->basis);
        out.blocks.push_back(std::move(b));
    }

    if (out.total_dim() != g.dim()) throw std::runtime_error("root decomposition dimensions do not sum to dim g");
    return out;
}

RefinedRootData refine_by_sigma(const CoarseRootData& coarse, const AutomorphismModel& sigma,
                                const DecompositionOptions& opts) {
    const AbelianFrame& frame = coarse.frame;
    const LieAlgebraModel& g = *frame.model;
    auto leaves = joint_eigenspaces(frame, &sigma, opts);

    RefinedRootData out;
    out.frame = frame;
    const double ztol = 10.0 * opts.cluster_tol;

    // zero blocks: representatives with angle in [0, pi]
    std::map<std::int64_t, std::vector<const ComplexLeaf*>> zero_groups;  // keyed by rounded angle
    std::vector<const ComplexLeaf*> pos;
    for (const auto& leaf : leaves) {
        if (mu_is_zero(leaf.mu, ztol)) {
            zero_groups[llround(leaf.eps_angle * 1e7)].push_back(&leaf);
        } else if (mu_sign(leaf.mu, ztol) > 0) {
            pos.push_back(&leaf);
        }
    }

    for (auto& [key, group] : zero_groups) {
        double angle = group.front()->eps_angle;
        if (angle < -1e-9) continue;  // covered by the conjugate representative
        RootBlock b;
        b.alpha.assign(frame.rank(), MaybeExact(ExactScalar::zero()));
        b.alpha_frame = RVector::Zero(frame.rank());
        b.eps_angle = MaybeExact(angle);
        if (auto ex = snap_pi_multiple(angle)) b.eps_angle = MaybeExact(*ex);
        bool self_conj = std::abs(angle) < 1e-9 || std::abs(angle - kPi) < 1e-9;
        int cols = 0;
        for (auto* l : group) cols += static_cast<int>(l->basis.cols());
        Eigen::MatrixXcd z(g.dim(), cols);
        int at = 0;
        for (auto* l : group) {
            z.middleCols(at, l->basis.cols()) = l->basis;
            at += static_cast<int>(l->basis.cols());
        }
        b.basis = self_conj ? realify_stable(g, z) : realify_planes(g, z);
        out.zero_blocks.push_back(std::move(b));
    }

    std::sort(pos.begin(), pos.end(), [](const ComplexLeaf* a, const ComplexLeaf* b) {
        if (mu_less(a->mu, b->mu)) return true;
        if (mu_less(b->mu, a->mu)) return false;
        return a->eps_angle < b->eps_angle;
    });
    for (const ComplexLeaf* leaf : pos) {
        RootBlock b;
        b.alpha = pairings_from_mu(frame, leaf->mu);
        b.alpha_frame = Eigen::Map<const RVector>(leaf->mu.data(), frame.rank());
        b.eps_angle = MaybeExact(leaf->eps_angle);
        if (auto ex = snap_pi_multiple(leaf->eps_angle)) b.eps_angle = MaybeExact(*ex);
        b.basis = realify_planes(g, leaf->basis);
        out.root_blocks.push_back(std::move(b));
    }

    if (out.total_dim() != g.dim())
        throw std::runtime_error("refined decomposition dimensions do not sum to dim g");

    // cross-check refined multiplicities against the coarse decomposition,
    // matching roots by their frame coordinates
    for (const auto* cb : coarse.positive_roots()) {
        int m = 0;
        for (const auto& b : out.root_blocks)
            if ((b.alpha_frame - cb->alpha_frame).cwiseAbs().maxCoeff() < 1e-7) m += b.mult();
        if (m != cb->mult())
            throw std::runtime_error("refined multiplicities disagree with the coarse decomposition at alpha = " +
                                     cb->alpha_key());
    }
    return out;
}

int RefinedRootData::total_dim() const {
    int d = 0;
    for (const auto& b : zero_blocks) d += b.mult();
    for (const auto& b : root_blocks) d += b.mult();
    return d;
}

std::vector<std::pair<std::string, int>> RefinedRootData::coarse_multiplicities() const {
    std::map<std::string, int> acc;
    for (const auto& b : root_blocks) acc[b.alpha_key()] += b.mult();
    return {acc.begin(), acc.end()};
}

double RefinedRootData::ad_square_residual() const {
    const LieAlgebraModel& g = *frame.model;
    double r = 0.0;
    auto check = [&](const RootBlock& b) {
        for (int j = 0; j < frame.rank(); ++j) {
            RMatrix ad = g.ad_matrix(frame.frame[j]);
            double a2 = b.alpha_frame(j) * b.alpha_frame(j);
            for (const auto& x : b.basis) {
                RVector lhs = ad * (ad * x) + a2 * x;
                r = std::max(r, g.norm(lhs));
            }
        }
    };
    for (const auto& b : zero_blocks) check(b);
    for (const auto& b : root_blocks) check(b);
    return r;
}

double RefinedRootData::sigma_rotation_residual(const AutomorphismModel& sigma) const {
    const LieAlgebraModel& g = *frame.model;
    double r = 0.0;
    auto check = [&](const RootBlock& b) {
        double a = b.eps_angle.value;
        bool diag = std::abs(a) < 1e-12 || std::abs(std::abs(a) - kPi) < 1e-12;
        if (diag) {
            double s = std::abs(a) < 1e-12 ? 1.0 : -1.0;
            for (const auto& x : b.basis)
                r = std::max(r, g.norm(RVector(sigma.apply_algebra(x) - s * x)));
        } else {
            for (size_t p = 0; p + 1 < b.basis.size(); p += 2) {
                const RVector& x = b.basis[p];
                const RVector& y = b.basis[p + 1];
                r = std::max(r, g.norm(RVector(sigma.apply_algebra(x) - std::cos(a) * x - std::sin(a) * y)));
                r = std::max(r, g.norm(RVector(sigma.apply_algebra(y) + std::sin(a) * x - std::cos(a) * y)));
            }
        }
    };
    for (const auto& b : zero_blocks) check(b);
    for (const auto& b : root_blocks) check(b);
    return r;
}

double RefinedRootData::orthogonality_residual() const {
    const LieAlgebraModel& g = *frame.model;
    std::vector<const RootBlock*> all;
    for (const auto& b : zero_blocks) all.push_back(&b);
    for (const auto& b : root_blocks) all.push_back(&b);
    double r = 0.0;
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            for (const auto& x : all[i]->basis)
                for (const auto& y : all[j]->basis) r = std::max(r, std::abs(g.inner(x, y)));
    return r;
}

}  // namespace liepath
