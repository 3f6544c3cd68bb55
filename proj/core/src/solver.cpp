#include "pucci/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pucci/errors.hpp"

namespace pucci {

OperatorSpec OperatorSpec::pucci_plus(Ellipticity e, int k_d) {
    return {Kind::pucci_plus, e, k_d, std::nullopt, nullptr};
}

OperatorSpec OperatorSpec::pucci_minus(Ellipticity e, int k_d) {
    return {Kind::pucci_minus, e, k_d, std::nullopt, nullptr};
}

OperatorSpec OperatorSpec::linear(SymMatrix a, Ellipticity e, int k_d) {
    if (a.dim() != 2) throw InputError("OperatorSpec::linear: solver coefficients are 2x2");
    return {Kind::linear, e, k_d, std::move(a), nullptr};
}

OperatorSpec OperatorSpec::linear(std::function<SymMatrix(Point)> a, Ellipticity e, int k_d) {
    return {Kind::linear, e, k_d, std::nullopt, std::move(a)};
}

OperatorSpec OperatorSpec::laplace(int k_d) {
    return linear(SymMatrix::identity(2), Ellipticity(1.0, 1.0, 2), k_d);
}

namespace {

struct WEntry {
    int pair;
    double wv, wp; // weights of the two legs
};

// Nonnegative stencil weights reproducing tr(A D^2 u) exactly: the rank-one
// part of A is resolved on the two tensor directions bracketing its
// eigenframe, the remaining isotropic part rides on the bracket pair.
std::vector<WEntry> linear_weights(const SymMatrix& a, const DirectionSet& ds,
                                   const Ellipticity& ell) {
    const EigenFrame2 ef = eigen_frame2(a);
    if (ef.kappa2 < ell.lambda - 1e-9 || ef.kappa1 > ell.Lambda + 1e-9)
        throw InputError("linear operator: coefficient outside [lambda I, Lambda I]");
    const int P = ds.pairs();
    // tensor directions: angle of pair p leg 0 is pair angle, leg 1 adds pi/2
    struct Tensor {
        double angle;
        int pair, leg;
    };
    std::vector<Tensor> ts;
    for (int p = 0; p < P; ++p) ts.push_back({ds.pair_list()[p].angle, p, 0});
    for (int p = 0; p < P; ++p) ts.push_back({ds.pair_list()[p].angle + M_PI / 2, p, 1});
    std::sort(ts.begin(), ts.end(), [](const Tensor& x, const Tensor& y) { return x.angle < y.angle; });

    const double rank1 = ef.kappa1 - ef.kappa2;
    std::vector<double> w(ts.size(), 0.0);
    int bracket_pair = ts[0].pair;
    double iso = ef.kappa2;
    if (rank1 > 1e-14 * std::max(1.0, ef.kappa1)) {
        const double phi = ef.angle; // [0, pi)
        size_t ia = ts.size() - 1;
        double ta = ts.back().angle - M_PI, tb = ts[0].angle;
        size_t ib = 0;
        for (size_t k = 0; k + 1 < ts.size(); ++k)
            if (ts[k].angle <= phi + 1e-15 && phi < ts[k + 1].angle) {
                ia = k;
                ib = k + 1;
                ta = ts[k].angle;
                tb = ts[k + 1].angle;
                break;
            }
        if (phi >= ts.back().angle - 1e-15) {
            ia = ts.size() - 1;
            ib = 0;
            ta = ts.back().angle;
            tb = ts[0].angle + M_PI;
        }
        const double det = std::sin(2.0 * (tb - ta));
        const double alpha = std::sin(2.0 * (tb - phi)) / det;
        const double beta = std::sin(2.0 * (phi - ta)) / det;
        const double gamma = 0.5 * (1.0 - alpha - beta);
        iso = ef.kappa2 + gamma * rank1;
        if (iso < -1e-12 * std::max(1.0, ef.kappa1))
            throw ConfigError("linear operator: anisotropy too strong for this K_d");
        iso = std::max(iso, 0.0);
        w[ia] += rank1 * std::max(alpha, 0.0);
        w[ib] += rank1 * std::max(beta, 0.0);
        bracket_pair = ts[ia].pair;
    }
    std::vector<WEntry> out(P, WEntry{0, 0.0, 0.0});
    for (int p = 0; p < P; ++p) out[p].pair = p;
    for (size_t k = 0; k < ts.size(); ++k) {
        if (w[k] == 0.0) continue;
        (ts[k].leg == 0 ? out[ts[k].pair].wv : out[ts[k].pair].wp) += w[k];
    }
    out[bracket_pair].wv += iso;
    out[bracket_pair].wp += iso;
    std::vector<WEntry> sparse;
    for (const WEntry& e : out)
        if (e.wv != 0.0 || e.wp != 0.0) sparse.push_back(e);
    return sparse;
}

// Operator resolved against a mask: evaluation mode, weights, per-node
// damped-step bounds and pinned-node data.
struct Bound {
    enum class Mode { max_pairs, min_pairs, linear_const, linear_var };
    Mode mode;
    Ellipticity ell;
    const GridMask* mask;
    std::vector<WEntry> shared_w;
    std::vector<std::vector<WEntry>> node_w;

    double psi_plus(double t) const { return t > 0 ? ell.Lambda * t : ell.lambda * t; }
    double psi_minus(double t) const { return t > 0 ? ell.lambda * t : ell.Lambda * t; }

    // second difference along one leg; cself (if requested) gets |d/du0|
    double delta(const double* u, const double* clo, int node, int pair, int leg,
                 double* cself = nullptr) const {
        const int base = 4 * pair + (leg ? 2 : 0);
        const int rp = base, rm = base + 1;
        const double sp = mask->arm_fraction(node, rp);
        const double sm = mask->arm_fraction(node, rm);
        const int np = mask->arm_neighbor(node, rp);
        const int nm = mask->arm_neighbor(node, rm);
        const double up = np >= 0 ? u[np] : clo[mask->arm_crossing(node, rp)];
        const double um = nm >= 0 ? u[nm] : clo[mask->arm_crossing(node, rm)];
        const double H = mask->h() * mask->dirs().ray_len(rp);
        const double inv = 2.0 / (H * H);
        if (cself) *cself = inv / (sp * sm);
        return inv * (up / (sp * (sp + sm)) + um / (sm * (sp + sm)) - u[node] / (sp * sm));
    }

    double eval(const double* u, const double* clo, int node) const {
        switch (mode) {
            case Mode::max_pairs: {
                double best = -1e300;
                for (int p = 0; p < mask->dirs().pairs(); ++p) {
                    const double v = psi_plus(delta(u, clo, node, p, 0)) +
                                     psi_plus(delta(u, clo, node, p, 1));
                    best = std::max(best, v);
                }
                return best;
            }
            case Mode::min_pairs: {
                double best = 1e300;
                for (int p = 0; p < mask->dirs().pairs(); ++p) {
                    const double v = psi_minus(delta(u, clo, node, p, 0)) +
                                     psi_minus(delta(u, clo, node, p, 1));
                    best = std::min(best, v);
                }
                return best;
            }
            case Mode::linear_const:
            case Mode::linear_var: {
                const std::vector<WEntry>& ws =
                    mode == Mode::linear_const ? shared_w : node_w[node];
                double v = 0.0;
                for (const WEntry& e : ws) {
                    if (e.wv != 0.0) v += e.wv * delta(u, clo, node, e.pair, 0);
                    if (e.wp != 0.0) v += e.wp * delta(u, clo, node, e.pair, 1);
                }
                return v;
            }
        }
        return 0.0;
    }

    // policy-independent bound on |d eval / d u(node)|
    double lipschitz(int node) const {
        double L = 0.0;
        auto cself = [&](int pair, int leg) {
            const int base = 4 * pair + (leg ? 2 : 0);
            const double sp = mask->arm_fraction(node, base);
            const double sm = mask->arm_fraction(node, base + 1);
            const double H = mask->h() * mask->dirs().ray_len(base);
            return 2.0 / (H * H * sp * sm);
        };
        switch (mode) {
            case Mode::max_pairs:
            case Mode::min_pairs:
                for (int p = 0; p < mask->dirs().pairs(); ++p)
                    L = std::max(L, ell.Lambda * (cself(p, 0) + cself(p, 1)));
                return L;
            case Mode::linear_const:
            case Mode::linear_var: {
                const std::vector<WEntry>& ws =
                    mode == Mode::linear_const ? shared_w : node_w[node];
                for (const WEntry& e : ws) L += e.wv * cself(e.pair, 0) + e.wp * cself(e.pair, 1);
                return L;
            }
        }
        return L;
    }
};

Bound bind(const OperatorSpec& op, const GridMask& mask) {
    if (mask.dirs().k_d() != op.k_d)
        throw StructuralError("operator/mask direction sets differ");
    Bound b{Bound::Mode::linear_const, op.ell, &mask, {}, {}};
    const bool iso_extremal = op.kind != OperatorSpec::Kind::linear && op.ell.isotropic();
    if (op.kind == OperatorSpec::Kind::pucci_plus && !iso_extremal) {
        b.mode = Bound::Mode::max_pairs;
    } else if (op.kind == OperatorSpec::Kind::pucci_minus && !iso_extremal) {
        b.mode = Bound::Mode::min_pairs;
    } else if (iso_extremal) {
        // lambda = Lambda collapses both extremal operators to lambda * tr
        b.mode = Bound::Mode::linear_const;
        b.shared_w = linear_weights(SymMatrix::identity(2) * op.ell.lambda, mask.dirs(), op.ell);
    } else if (op.a_const) {
        b.mode = Bound::Mode::linear_const;
        b.shared_w = linear_weights(*op.a_const, mask.dirs(), op.ell);
    } else if (op.a_fn) {
        b.mode = Bound::Mode::linear_var;
        b.node_w.resize(mask.node_count());
        for (int i = 0; i < mask.node_count(); ++i)
            b.node_w[i] = linear_weights(op.a_fn(mask.coord(i)), mask.dirs(), op.ell);
    } else {
        throw InputError("linear operator: no coefficient given");
    }
    return b;
}

// ------------------------------------------------------------------
// damped fixed-point machinery (smoother of the multigrid cycle and the
// plain single-level iteration)

struct Level {
    std::shared_ptr<const GridMask> mask;
    Bound bound;
    std::vector<double> f, gclo, u, tmp, tau;
    std::vector<double> pinned_val; // NaN when not pinned
    long smoother_applications = 0;

    void init_pinned() {
        pinned_val.assign(mask->node_count(), std::numeric_limits<double>::quiet_NaN());
        for (int i = 0; i < mask->node_count(); ++i) {
            if (!mask->pinned(i)) continue;
            double best_s = 2.0;
            int best_c = -1;
            for (int r = 0; r < mask->rays(); ++r) {
                const int c = mask->arm_crossing(i, r);
                if (c >= 0 && mask->arm_fraction(i, r) < best_s) {
                    best_s = mask->arm_fraction(i, r);
                    best_c = c;
                }
            }
            pinned_val[i] = gclo[best_c];
            u[i] = pinned_val[i];
        }
    }

    void smooth(int sweeps, double damping = 0.8) {
        const int n = mask->node_count();
        for (int s = 0; s < sweeps; ++s) {
            for (int i = 0; i < n; ++i) {
                if (!std::isnan(pinned_val[i])) {
                    tmp[i] = pinned_val[i];
                    continue;
                }
                const double rho = bound.eval(u.data(), gclo.data(), i) - f[i];
                tmp[i] = u[i] + damping * tau[i] * rho;
            }
            u.swap(tmp);
            ++smoother_applications;
        }
    }

    double residual() const {
        double r = 0.0;
        for (int i = 0; i < mask->node_count(); ++i) {
            if (!std::isnan(pinned_val[i])) continue;
            r = std::max(r, std::abs(bound.eval(u.data(), gclo.data(), i) - f[i]));
        }
        return r;
    }
};

Level make_level(const OperatorSpec& op, const DomainSpec& domain, double h,
                 const std::function<double(Point)>& f_fn,
                 const std::function<double(Point)>& g_fn, bool strict) {
    Level lv;
    lv.mask = grid_mask(domain, h, op.k_d, strict);
    lv.bound = bind(op, *lv.mask);
    const int n = lv.mask->node_count();
    lv.f.resize(n);
    for (int i = 0; i < n; ++i) lv.f[i] = f_fn(lv.mask->coord(i));
    lv.gclo.resize(lv.mask->crossing_count());
    for (int c = 0; c < lv.mask->crossing_count(); ++c)
        lv.gclo[c] = g_fn(lv.mask->crossing_point(c));
    lv.u.assign(n, 0.0);
    lv.tmp.assign(n, 0.0);
    lv.tau.resize(n);
    for (int i = 0; i < n; ++i) lv.tau[i] = 1.0 / std::max(lv.bound.lipschitz(i), 1e-300);
    lv.init_pinned();
    return lv;
}

// full-weighting restriction of a fine-level node function to the coarse mask
void restrict_to(const Level& fine, const Level& coarse, const std::vector<double>& src,
                 std::vector<double>& dst) {
    static const int off[9][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                  {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    static const double wgt[9] = {0.25, 0.125, 0.125, 0.125, 0.125,
                                  0.0625, 0.0625, 0.0625, 0.0625};
    dst.assign(coarse.mask->node_count(), 0.0);
    for (int c = 0; c < coarse.mask->node_count(); ++c) {
        const auto [I, J] = coarse.mask->lattice(c);
        double acc = 0.0, tot = 0.0;
        for (int k = 0; k < 9; ++k) {
            const int fidx = fine.mask->node_at(2 * I + off[k][0], 2 * J + off[k][1]);
            if (fidx < 0) continue;
            acc += wgt[k] * src[fidx];
            tot += wgt[k];
        }
        dst[c] = tot > 0 ? acc / tot : 0.0;
    }
}

// coincident-node injection (every coarse node has its fine twin)
void inject_to(const Level& fine, const Level& coarse, const std::vector<double>& src,
               std::vector<double>& dst) {
    dst.assign(coarse.mask->node_count(), 0.0);
    for (int c = 0; c < coarse.mask->node_count(); ++c) {
        const auto [I, J] = coarse.mask->lattice(c);
        const int fidx = fine.mask->node_at(2 * I, 2 * J);
        dst[c] = fidx >= 0 ? src[fidx] : 0.0;
    }
}

// bilinear prolongation of a coarse correction onto the fine interior
void prolong_add(const Level& coarse, Level& fine, const std::vector<double>& corr) {
    for (int i = 0; i < fine.mask->node_count(); ++i) {
        if (!std::isnan(fine.pinned_val[i])) continue;
        const auto [fi, fj] = fine.mask->lattice(i);
        const int I = fi >= 0 ? fi / 2 : -((-fi + 1) / 2);
        const int J = fj >= 0 ? fj / 2 : -((-fj + 1) / 2);
        const bool ex = (fi % 2) == 0, ey = (fj % 2) == 0;
        double acc = 0.0, tot = 0.0;
        for (int a = 0; a <= (ex ? 0 : 1); ++a)
            for (int b = 0; b <= (ey ? 0 : 1); ++b) {
                const int c = coarse.mask->node_at(I + a, J + b);
                if (c < 0) continue;
                acc += corr[c];
                tot += 1.0;
            }
        if (tot > 0) fine.u[i] += acc / tot;
    }
}

void fas_cycle(std::vector<Level>& levels, size_t l, int nu) {
    Level& lv = levels[l];
    if (l + 1 == levels.size()) {
        for (int k = 0; k < 40; ++k) {
            lv.smooth(20);
            if (lv.residual() < 1e-13) break;
        }
        return;
    }
    lv.smooth(nu);
    Level& cv = levels[l + 1];
    std::vector<double> rf(lv.mask->node_count());
    for (int i = 0; i < lv.mask->node_count(); ++i)
        rf[i] = std::isnan(lv.pinned_val[i])
                    ? lv.f[i] - lv.bound.eval(lv.u.data(), lv.gclo.data(), i)
                    : 0.0;
    std::vector<double> u0;
    inject_to(lv, cv, lv.u, u0);
    for (int c = 0; c < cv.mask->node_count(); ++c)
        if (!std::isnan(cv.pinned_val[c])) u0[c] = cv.pinned_val[c];
    std::vector<double> rc;
    restrict_to(lv, cv, rf, rc);
    cv.u = u0;
    for (int c = 0; c < cv.mask->node_count(); ++c)
        cv.f[c] = cv.bound.eval(u0.data(), cv.gclo.data(), c) + rc[c];
    fas_cycle(levels, l + 1, nu);
    std::vector<double> corr(cv.mask->node_count());
    for (int c = 0; c < cv.mask->node_count(); ++c) corr[c] = cv.u[c] - u0[c];
    prolong_add(cv, lv, corr);
    lv.smooth(nu);
}

} // namespace

Field apply_operator(const OperatorSpec& op, const Field& u) {
    u.check_complete();
    const Bound b = bind(op, u.mask());
    Field out(u.mask_ptr());
    for (int i = 0; i < u.size(); ++i)
        out[i] = b.eval(u.values().data(), u.closure_values().data(), i);
    return out;
}

std::pair<Field, SolveReport> solve(const OperatorSpec& op,
                                    const std::function<double(Point)>& f,
                                    const DomainSpec& domain,
                                    const std::function<double(Point)>& g, double h,
                                    const SolveOptions& opts) {
    if (opts.tol < 1e-10) throw InputError("solve: tol must be >= 1e-10");
    std::vector<Level> levels;
    levels.push_back(make_level(op, domain, h, f, g, true));
    if (opts.multigrid) {
        double hh = h;
        while (levels.back().mask->node_count() > 80 && levels.size() < 12) {
            hh *= 2.0;
            if (hh > domain.radius() / 2) break;
            try {
                levels.push_back(make_level(op, domain, hh, f, g, false));
            } catch (const ConfigError&) {
                break;
            }
        }
    }

    Level& top = levels.front();
    SolveReport rep;
    rep.nodes = top.mask->node_count();
    rep.step = 1e300;
    for (int i = 0; i < top.mask->node_count(); ++i)
        if (std::isnan(top.pinned_val[i])) rep.step = std::min(rep.step, 0.8 * top.tau[i]);
    if (rep.step == 1e300) rep.step = 0.0;

    const long cap = opts.iteration_cap > 0 ? opts.iteration_cap : 1000L * rep.nodes;
    double res = top.residual();
    double prev = res;
    int nu = 3;
    int stall = 0;
    int cycles = 0;
    while (res > opts.tol && cycles < opts.max_cycles && top.smoother_applications < cap) {
        if (opts.multigrid && levels.size() > 1) {
            fas_cycle(levels, 0, nu);
        } else {
            top.smooth(64);
        }
        ++cycles;
        res = top.residual();
        if (!std::isfinite(res)) throw NumericError("solve: non-finite residual");
        if (res > 0.97 * prev) {
            if (++stall == 5 && nu < 8) {
                nu = 8;
                stall = 0;
            }
        } else {
            stall = 0;
        }
        prev = res;
    }
    rep.cycles = cycles;
    rep.iterations = top.smoother_applications;
    rep.residual = res;
    rep.converged = res <= opts.tol;

    Field out(top.mask, std::move(top.u), std::move(top.gclo));
    return {std::move(out), rep};
}

bool discrete_comparison_check(const OperatorSpec& op, const Field& u, const Field& v) {
    if (u.mask_ptr().get() != v.mask_ptr().get())
        throw InputError("discrete_comparison_check: fields live on different masks");
    const Field fu = apply_operator(op, u);
    const Field fv = apply_operator(op, v);
    for (int i = 0; i < u.size(); ++i)
        if (fu[i] < fv[i] - 1e-12)
            throw PreconditionError("discrete_comparison_check: op[u] >= op[v] fails nodewise");
    for (int c = 0; c < u.mask().crossing_count(); ++c)
        if (u.closure(c) > v.closure(c) + 1e-12)
            throw PreconditionError("discrete_comparison_check: u <= v fails on the closure");
    for (int i = 0; i < u.size(); ++i)
        if (u[i] > v[i] + 1e-10) return false;
    return true;
}

double abp_check(const OperatorSpec& op, const Field& u,
                 const std::function<double(Point)>& f) {
    (void)op;
    double sup_u = u.max();
    double sup_bdry = 0.0;
    for (double g : u.closure_values()) sup_bdry = std::max(sup_bdry, g);
    double l2 = 0.0;
    const double h = u.mask().h();
    for (int i = 0; i < u.size(); ++i) {
        const double fv = f(u.mask().coord(i));
        l2 += h * h * fv * fv;
    }
    const double denom = u.mask().domain().radius() * std::sqrt(l2);
    if (denom <= 0.0) return 0.0;
    return (sup_u - sup_bdry) / denom;
}

} // namespace pucci
