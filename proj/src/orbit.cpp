#include "liepath/orbit.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace liepath {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

double lattice_distance(double theta) {
    return std::abs(theta - kTwoPi * std::nearbyint(theta / kTwoPi));
}

std::string theta_label(const RootBlock& b, const MaybeExact& theta) {
    std::ostringstream os;
    os << "alpha=(" << b.alpha_key() << ") theta=" << theta.str();
    return os.str();
}
}  // namespace

OrbitSpec make_orbit(const RefinedRootData& data, const AutomorphismModel& sigma,
                     const std::vector<MaybeExact>& w_coords) {
    OrbitSpec spec;
    spec.data = &data;
    spec.sigma = &sigma;
    spec.w_coords = w_coords;
    spec.w = data.frame.vector_from(w_coords);
    spec.a = data.frame.model->exp(spec.w);
    return spec;
}

MaybeExact pairing_with(const RootBlock& block, const std::vector<MaybeExact>& coords) {
    MaybeExact acc{ExactScalar::zero()};
    for (size_t j = 0; j < coords.size(); ++j) acc = acc + multiply(block.alpha[j], coords[j]);
    return acc;
}

MaybeExact block_theta(const RootBlock& block, const std::vector<MaybeExact>& w_coords) {
    return pairing_with(block, w_coords) + block.eps_angle;
}

std::vector<const SplitEntry*> TangentNormalSplit::tangent_entries() const {
    std::vector<const SplitEntry*> out;
    for (const auto& e : entries)
        if (e.tangent) out.push_back(&e);
    return out;
}

bool TangentNormalSplit::normal_is_section_only() const {
    for (const auto& e : entries)
        if (!e.tangent && !e.block->is_zero_root()) return false;
    return true;
}

TangentNormalSplit split_tangent_normal(const OrbitSpec& spec) {
    const RefinedRootData& data = *spec.data;
    const LieAlgebraModel& g = spec.algebra();
    TangentNormalSplit out;

    auto classify = [&](const RootBlock& b) {
        SplitEntry e;
        e.block = &b;
        e.theta = block_theta(b, spec.w_coords);
        if (e.theta.is_exact()) {
            e.tangent = !e.theta.exact->in_two_pi_lattice();
        } else {
            double d = lattice_distance(e.theta.value);
            if (d <= 1e-9)
                throw UndecidableError("membership of theta = " + std::to_string(e.theta.value) +
                                       " in 2*pi*Z is not decidable at tolerance; supply exact inputs");
            e.tangent = true;  // d > 1e-9 away from every lattice point
        }
        // a declared-normal block with theta away from the lattice cannot happen
        out.entries.push_back(e);
        if (e.tangent)
            out.dim_tangent += b.mult();
        else
            out.dim_normal += b.mult();
    };

    for (const auto& b : data.zero_blocks) {
        // theta = arg eps; the eps = 1 block is the section and stays normal
        classify(b);
    }
    for (const auto& b : data.root_blocks) classify(b);

    // numeric confirmation: span of the action fields x -> Ad(a^-1)x - Dx
    const int d = g.dim();
    RMatrix admat = adjoint_matrix(g, CMatrix(spec.a.adjoint()));
    RMatrix f = g.ortho_map() * (admat - spec.sigma->differential()) * g.ortho_map_inv();
    Eigen::ColPivHouseholderQR<RMatrix> qr(f);
    qr.setThreshold(1e-8);
    int numeric_dim = static_cast<int>(qr.rank());
    RMatrix qf = qr.householderQ() * RMatrix::Identity(d, numeric_dim);

    RMatrix decl(d, out.dim_tangent);
    int at = 0;
    for (const auto& e : out.entries)
        if (e.tangent)
            for (const auto& v : e.block->basis) decl.col(at++) = g.to_ortho(v);
    double residual = 0.0;
    if (numeric_dim != out.dim_tangent) {
        residual = 1.0;
    } else if (out.dim_tangent > 0) {
        RMatrix pf = qf * qf.transpose();
        RMatrix pd = decl * decl.transpose();
        residual = (pf - pd).cwiseAbs().maxCoeff();
    }
    out.span_residual = residual;
    if (residual > 1e-8)
        throw std::runtime_error("declared tangent space disagrees with the action-field span");
    return out;
}

FiniteSpectrum shape_spectrum(const OrbitSpec& spec, const std::vector<MaybeExact>& xi_coords) {
    auto split = split_tangent_normal(spec);
    FiniteSpectrum out;
    for (const auto& e : split.entries) {
        if (!e.tangent) continue;
        SpectrumEntry s;
        s.block = e.block;
        s.theta = e.theta;
        s.mult = e.block->mult();
        if (e.block->is_zero_root()) {
            s.numer = MaybeExact(ExactScalar::zero());
            s.value = 0.0;
        } else {
            s.numer = pairing_with(*e.block, xi_coords);
            if (e.theta.is_exact() && e.theta.exact->in_two_pi_lattice())
                throw std::runtime_error("internal: tangent block with lattice theta");
            double half = 0.5 * e.theta.value;
            s.value = -0.5 * s.numer.value / std::tan(half);
            // cot is exactly zero on the pi fiber; keep the value clean there
            if (e.theta.is_exact()) {
                ExactScalar norm = e.theta.exact->normalized_angle();
                if (norm.rational_part().is_zero() && norm.pi_part() == Rational(1)) s.value = 0.0;
            }
        }
        out.entries.push_back(s);
    }
    return out;
}

std::vector<double> FiniteSpectrum::expanded() const {
    std::vector<double> v;
    for (const auto& e : entries)
        for (int i = 0; i < e.mult; ++i) v.push_back(e.value);
    std::sort(v.begin(), v.end());
    return v;
}

int FiniteSpectrum::total_mult() const {
    int m = 0;
    for (const auto& e : entries) m += e.mult;
    return m;
}

namespace {

// second derivative of the action curve c(t) = exp(tx) a exp(-t dsigma x),
// pulled back to the algebra: u'(0) = a^-1 c''(0) - u(0)^2
CMatrix curve_second_pullback(const OrbitSpec& spec, const CMatrix& x_mat, const CMatrix& dx_mat,
                              const CMatrix& tau_mat, double h) {
    const LieAlgebraModel& g = spec.algebra();
    auto curve = [&](double t) {
        return CMatrix(((t * x_mat).exp()) * spec.a * ((-t * dx_mat).exp()));
    };
    auto second = [&](double step) {
        CMatrix c2 = (curve(step) - 2.0 * spec.a + curve(-step)) / (step * step);
        return CMatrix(spec.a.adjoint() * c2 - tau_mat * tau_mat);
    };
    CMatrix f1 = second(h);
    CMatrix f2 = second(0.5 * h);
    return (4.0 * f2 - f1) / 3.0;  // one Richardson level
}

}  // namespace

OracleSpectrum numeric_shape_oracle(const OrbitSpec& spec, const std::vector<MaybeExact>& xi_coords,
                                    const OracleOptions& opts) {
    const LieAlgebraModel& g = spec.algebra();
    const int d = g.dim();

    // tangent-generating complement: pivoted QR over the action differential
    RMatrix admat = adjoint_matrix(g, CMatrix(spec.a.adjoint()));
    RMatrix f_model = admat - spec.sigma->differential();
    RMatrix f_on = g.ortho_map() * f_model * g.ortho_map_inv();
    Eigen::ColPivHouseholderQR<RMatrix> qr(f_on);
    qr.setThreshold(1e-8);
    const int m = static_cast<int>(qr.rank());
    if (m == 0) return {};

    std::vector<RVector> gens;  // model coordinates of the chosen x's
    for (int i = 0; i < m; ++i) {
        int col = qr.colsPermutation().indices()(i);
        gens.push_back(g.from_ortho(RVector(RVector::Unit(d, col))));
    }

    std::vector<RVector> taus;
    std::vector<CMatrix> tau_mats;
    for (const auto& x : gens) {
        RVector tau = f_model * x;
        taus.push_back(tau);
        tau_mats.push_back(g.matrix_of(tau));
    }

    RMatrix gram(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) gram(i, j) = g.inner(taus[i], taus[j]);
    Eigen::SelfAdjointEigenSolver<RMatrix> ges(gram);
    double cond = ges.eigenvalues()(m - 1) / std::max(ges.eigenvalues()(0), 1e-300);
    if (!(cond < opts.max_gram_condition))
        throw std::runtime_error("oracle tangent Gram matrix is ill-conditioned");

    // normal projector in orthonormal coordinates
    RMatrix tcols(d, m);
    for (int i = 0; i < m; ++i) tcols.col(i) = g.to_ortho(taus[i]);
    Eigen::HouseholderQR<RMatrix> tqr(tcols);
    RMatrix tq = tqr.householderQ() * RMatrix::Identity(d, m);
    RMatrix pperp = RMatrix::Identity(d, d) - tq * tq.transpose();

    RVector xi = spec.frame().vector_from(xi_coords);
    RVector xi_on = g.to_ortho(xi);

    auto ii_paired = [&](const RVector& x) {
        CMatrix xm = g.matrix_of(x);
        CMatrix dxm = g.matrix_of(spec.sigma->apply_algebra(x));
        CMatrix tau = g.matrix_of(RVector(f_model * x));
        CMatrix v = curve_second_pullback(spec, xm, dxm, tau, opts.fd_step);
        RVector coords = g.coords_of(v);
        return RVector(pperp * g.to_ortho(coords));
    };

    std::vector<RVector> diag(m);
    for (int i = 0; i < m; ++i) diag[i] = ii_paired(gens[i]);

    RMatrix b(m, m);
    for (int i = 0; i < m; ++i) {
        b(i, i) = diag[i].dot(xi_on);
        for (int j = i + 1; j < m; ++j) {
            RVector q = ii_paired(gens[i] + gens[j]);
            RVector cross = 0.5 * (q - diag[i] - diag[j]);
            b(i, j) = b(j, i) = cross.dot(xi_on);
        }
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<RMatrix> es(0.5 * (b + b.transpose()), gram);
    OracleSpectrum out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    size_t i = 0;
    while (i < out.eigenvalues.size()) {
        size_t j = i;
        while (j + 1 < out.eigenvalues.size() && out.eigenvalues[j + 1] - out.eigenvalues[j] <= opts.cluster_tol)
            ++j;
        double mean = 0.0;
        for (size_t l = i; l <= j; ++l) mean += out.eigenvalues[l];
        out.clustered.push_back({mean / static_cast<double>(j - i + 1), static_cast<int>(j - i + 1)});
        i = j + 1;
    }
    return out;
}

double spectrum_distance(const FiniteSpectrum& closed, const OracleSpectrum& oracle) {
    std::vector<double> a = closed.expanded();
    const std::vector<double>& b = oracle.eigenvalues;
    if (a.size() != b.size()) return 1e30;
    double r = 0.0;
    for (size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

CurvatureAdaptedReport curvature_adapted_check(const OrbitSpec& spec) {
    auto split = split_tangent_normal(spec);
    std::vector<RVector> tangent;
    // assemble the eigenvalue ladder per frame direction alongside the basis
    const auto& frame = spec.frame();
    const LieAlgebraModel& g = spec.algebra();
    const int k = frame.rank();

    std::vector<std::vector<double>> eig(k);
    for (const auto& e : split.entries) {
        if (!e.tangent) continue;
        for (const auto& v : e.block->basis) tangent.push_back(v);
        for (int j = 0; j < k; ++j) {
            double lam = 0.0;
            if (!e.block->is_zero_root()) {
                double pair = e.block->alpha_frame(j) * frame.section_norms[j];
                // direction is the section vector s_j; eigenvalue -(1/2) <alpha,s_j> cot(theta/2)
                lam = -0.5 * pair / std::tan(0.5 * e.theta.value);
            }
            for (int c = 0; c < e.block->mult(); ++c) eig[j].push_back(lam);
        }
    }
    return [&] {
        CurvatureAdaptedReport rep;
        rep.cohomogeneity = k;
        const int m = static_cast<int>(tangent.size());
        if (m == 0) {
            rep.pass = true;
            return rep;
        }
        RMatrix t(g.dim(), m);
        for (int i = 0; i < m; ++i) t.col(i) = g.to_ortho(tangent[i]);
        RMatrix pperp = RMatrix::Identity(g.dim(), g.dim()) - t * t.transpose();

        std::vector<RMatrix> ops;
        for (int j = 0; j < k; ++j) {
            RMatrix ad = g.ad_ortho(frame.section[j]);
            RMatrix jac = -0.25 * ad * ad;
            rep.jacobi_preserves_tangent_residual =
                std::max(rep.jacobi_preserves_tangent_residual, (pperp * jac * t).cwiseAbs().maxCoeff());
            ops.push_back(t.transpose() * jac * t);
        }
        for (int j = 0; j < k; ++j) {
            RMatrix a = RMatrix::Zero(m, m);
            for (int i = 0; i < m; ++i) a(i, i) = eig[j][i];
            ops.push_back(a);
        }
        for (size_t p = 0; p < ops.size(); ++p)
            for (size_t q = p + 1; q < ops.size(); ++q)
                rep.commutator_residual = std::max(
                    rep.commutator_residual, (ops[p] * ops[q] - ops[q] * ops[p]).cwiseAbs().maxCoeff());
        rep.pass = rep.jacobi_preserves_tangent_residual <= 1e-8 && rep.commutator_residual <= 1e-8;
        return rep;
    }();
}

CurvatureAdaptedReport curvature_adapted_check_on(const OrbitSpec& spec,
                                                  const std::vector<RVector>& tangent_basis) {
    const auto& frame = spec.frame();
    const LieAlgebraModel& g = spec.algebra();
    CurvatureAdaptedReport rep;
    rep.cohomogeneity = frame.rank();
    const int m = static_cast<int>(tangent_basis.size());
    if (m == 0) {
        rep.pass = true;
        return rep;
    }
    RMatrix t(g.dim(), m);
    for (int i = 0; i < m; ++i) t.col(i) = g.to_ortho(tangent_basis[i]);
    RMatrix pperp = RMatrix::Identity(g.dim(), g.dim()) - t * t.transpose();
    for (int j = 0; j < frame.rank(); ++j) {
        RMatrix ad = g.ad_ortho(frame.section[j]);
        RMatrix jac = -0.25 * ad * ad;
        rep.jacobi_preserves_tangent_residual =
            std::max(rep.jacobi_preserves_tangent_residual, (pperp * jac * t).cwiseAbs().maxCoeff());
    }
    rep.pass = rep.jacobi_preserves_tangent_residual <= 1e-8;
    return rep;
}

AustereReport austere_check_finite(const OrbitSpec& spec) {
    auto split = split_tangent_normal(spec);
    AustereReport rep;
    rep.scope = split.normal_is_section_only() ? "full" : "section-only";

    struct Key {
        std::string alpha;
        ExactScalar theta;  // normalized into (-pi, pi]
        bool operator<(const Key& o) const {
            if (alpha != o.alpha) return alpha < o.alpha;
            return theta < o.theta;
        }
    };
    std::map<Key, int> groups;
    std::map<std::string, RVector> frames;  // alpha key -> frame coordinates

    for (const auto& e : split.entries) {
        if (!e.tangent || e.block->is_zero_root()) continue;
        if (!e.theta.is_exact() || !e.block->alpha_exact()) {
            rep.verdict = AustereReport::Verdict::undecidable;
            rep.note = "inexact angles or root pairings; austere verdict refused at tolerance";
            return rep;
        }
        Key key{e.block->alpha_key(), e.theta.exact->normalized_angle()};
        groups[key] += e.block->mult();
        frames[key.alpha] = e.block->alpha_frame;
    }

    // zero curvature vectors: cot(theta/2) = 0 exactly when theta = pi mod 2pi
    auto is_zero_vector = [](const Key& k) {
        return k.theta.rational_part().is_zero() && k.theta.pi_part() == Rational(1);
    };

    std::map<Key, int> open;
    for (const auto& [k, m] : groups) {
        if (is_zero_vector(k)) {
            rep.pairs.push_back({"alpha=(" + k.alpha + ") theta=" + k.theta.str(), "self", m, "zero"});
        } else {
            open[k] = m;
        }
    }

    // exact pairing: same root, opposite angle mod 2pi
    for (auto it = open.begin(); it != open.end(); ++it) {
        if (it->second == 0) continue;
        Key partner{it->first.alpha, (-it->first.theta).normalized_angle()};
        auto jt = open.find(partner);
        if (jt != open.end() && jt->second > 0 && !(partner < it->first)) {
            int matched = std::min(it->second, jt->second);
            rep.pairs.push_back({"alpha=(" + it->first.alpha + ") theta=" + it->first.theta.str(),
                                 "alpha=(" + partner.alpha + ") theta=" + partner.theta.str(), matched,
                                 "exact"});
            it->second -= matched;
            jt->second -= matched;
        }
    }

    // numeric fallback for whatever is left (collinear roots of different length)
    std::vector<std::pair<RVector, int>> leftovers;
    std::vector<Key> leftover_keys;
    for (const auto& [k, m] : open) {
        if (m == 0) continue;
        double cot = 1.0 / std::tan(0.5 * k.theta.value());
        leftovers.push_back({RVector(-0.5 * cot * frames[k.alpha]), m});
        leftover_keys.push_back(k);
    }
    for (size_t i = 0; i < leftovers.size(); ++i) {
        while (leftovers[i].second > 0) {
            bool matched = false;
            for (size_t j = 0; j < leftovers.size() && !matched; ++j) {
                if (j == i || leftovers[j].second <= 0) continue;
                if ((leftovers[i].first + leftovers[j].first).norm() < 1e-10) {
                    int m = std::min(leftovers[i].second, leftovers[j].second);
                    rep.pairs.push_back({"alpha=(" + leftover_keys[i].alpha + ") theta=" + leftover_keys[i].theta.str(),
                                         "alpha=(" + leftover_keys[j].alpha + ") theta=" + leftover_keys[j].theta.str(),
                                         m, "numeric"});
                    leftovers[i].second -= m;
                    leftovers[j].second -= m;
                    matched = true;
                }
            }
            if (!matched) {
                rep.verdict = AustereReport::Verdict::not_austere;
                rep.unmatched = "alpha=(" + leftover_keys[i].alpha + ") theta=" + leftover_keys[i].theta.str();
                return rep;
            }
        }
    }
    rep.verdict = AustereReport::Verdict::austere;
    return rep;
}

CMatrix IsometryRecipe::apply_point(const CMatrix& p) const {
    CMatrix cur = p;
    for (const auto& s : steps) {
        switch (s.kind) {
            case IsometryStep::Kind::left_translation: cur = s.mat * cur; break;
            case IsometryStep::Kind::right_translation: cur = cur * s.mat; break;
            case IsometryStep::Kind::inversion: cur = cur.adjoint(); break;
            case IsometryStep::Kind::automorphism: cur = s.autom->apply_matrix(cur); break;
        }
    }
    return cur;
}

CMatrix IsometryRecipe::apply_tangent(const CMatrix& p, const CMatrix& v) const {
    CMatrix cp = p, cv = v;
    for (const auto& s : steps) {
        switch (s.kind) {
            case IsometryStep::Kind::left_translation:
                cp = s.mat * cp;
                cv = s.mat * cv;
                break;
            case IsometryStep::Kind::right_translation:
                cp = cp * s.mat;
                cv = cv * s.mat;
                break;
            case IsometryStep::Kind::inversion: {
                CMatrix pinv = cp.adjoint();
                cv = -pinv * cv * pinv;
                cp = pinv;
                break;
            }
            case IsometryStep::Kind::automorphism:
                cp = s.autom->apply_matrix(cp);
                cv = s.autom->apply_matrix(cv);
                break;
        }
    }
    return cv;
}

double orbit_distance(const OrbitSpec& spec, const CMatrix& q, unsigned seed) {
    const LieAlgebraModel& g = spec.algebra();
    const int d = g.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 0.8);

    auto orbit_point = [&](const CMatrix& b) {
        return CMatrix(b * spec.a * spec.sigma->apply_matrix(b).adjoint());
    };

    auto refine = [&](CMatrix b) {
        double best = (orbit_point(b) - q).norm();
        for (int iter = 0; iter < 60; ++iter) {
            CMatrix p = orbit_point(b);
            CMatrix r = q - p;
            // residual as a real vector
            const int n = static_cast<int>(p.rows());
            RVector rv(2 * n * n);
            RMatrix jac(2 * n * n, d);
            for (int c = 0, at = 0; c < n; ++c)
                for (int rr = 0; rr < n; ++rr, at += 2) {
                    rv(at) = r(rr, c).real();
                    rv(at + 1) = r(rr, c).imag();
                }
            for (int i = 0; i < d; ++i) {
                CMatrix xi = g.basis_matrix(i);
                CMatrix dp = xi * p - p * spec.sigma->apply_matrix(xi);
                for (int c = 0, at = 0; c < n; ++c)
                    for (int rr = 0; rr < n; ++rr, at += 2) {
                        jac(at, i) = dp(rr, c).real();
                        jac(at + 1, i) = dp(rr, c).imag();
                    }
            }
            RMatrix jtj = jac.transpose() * jac + 1e-10 * RMatrix::Identity(d, d);
            RVector delta = jtj.ldlt().solve(jac.transpose() * rv);
            if (delta.norm() > 2.0) delta *= 2.0 / delta.norm();
            b = g.exp(delta) * b;
            double now = (orbit_point(b) - q).norm();
            if (now < 1e-13) return now;
            if (std::abs(best - now) < 1e-15 && iter > 8) break;
            best = std::min(best, now);
        }
        return best;
    };

    double best = 1e30;
    std::vector<CMatrix> seeds;
    seeds.push_back(CMatrix::Identity(g.matrix_size(), g.matrix_size()));
    for (int s = 0; s < 6; ++s) {
        RVector x(d);
        for (int i = 0; i < d; ++i) x(i) = dist(rng);
        seeds.push_back(g.exp(x));
    }
    for (const auto& b : seeds) {
        best = std::min(best, refine(b));
        if (best < 1e-8) break;
    }
    return best;
}

WitnessReport weakly_reflective_witness(const OrbitSpec& spec, const std::vector<MaybeExact>& xi_coords,
                                        const IsometryRecipe& candidate, int samples, unsigned seed) {
    const LieAlgebraModel& g = spec.algebra();
    WitnessReport rep;
    rep.samples = samples;

    rep.fixes_point_residual = (candidate.apply_point(spec.a) - spec.a).cwiseAbs().maxCoeff();

    RVector xi = spec.frame().vector_from(xi_coords);
    CMatrix xi_at_a = spec.a * g.matrix_of(xi);  // dl_a xi
    CMatrix dnu = candidate.apply_tangent(spec.a, xi_at_a);
    rep.reverses_normal_residual = (dnu + xi_at_a).cwiseAbs().maxCoeff();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 0.6);
    for (int s = 0; s < samples; ++s) {
        RVector x(g.dim());
        for (int i = 0; i < g.dim(); ++i) x(i) = dist(rng);
        CMatrix b = g.exp(x);
        CMatrix p = b * spec.a * spec.sigma->apply_matrix(b).adjoint();
        CMatrix q = candidate.apply_point(p);
        double dd = orbit_distance(spec, q, seed + 1000 + static_cast<unsigned>(s));
        rep.max_orbit_distance = std::max(rep.max_orbit_distance, dd);
        if (rep.max_orbit_distance > 1e-6) break;  // already rejected
    }

    rep.pass = rep.fixes_point_residual <= 1e-10 && rep.reverses_normal_residual <= 1e-8 &&
               rep.max_orbit_distance <= 1e-6;
    rep.pf_label_transfers = rep.pass;
    return rep;
}

}  // namespace liepath
