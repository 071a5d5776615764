#include "parab/pucci.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace parab {

namespace {

int tri_slot(int i, int j) {
    if (i == j) return i;
    const int a = std::min(i, j), b = std::max(i, j);
    if (a == 0 && b == 1) return 3;
    if (a == 0 && b == 2) return 4;
    return 5;
}

}  // namespace

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m{n, {0, 0, 0, 0, 0, 0}};
    for (int i = 0; i < n; ++i) m.e[i] = 1.0;
    return m;
}

SymMatrix SymMatrix::diag(int n, double a, double b, double c) {
    SymMatrix m{n, {0, 0, 0, 0, 0, 0}};
    m.e[0] = a;
    if (n > 1) m.e[1] = b;
    if (n > 2) m.e[2] = c;
    return m;
}

double SymMatrix::operator()(int i, int j) const { return e[tri_slot(i, j)]; }
void SymMatrix::set(int i, int j, double v) { e[tri_slot(i, j)] = v; }

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
    SymMatrix m{n, e};
    for (int k = 0; k < 6; ++k) m.e[k] += o.e[k];
    return m;
}

SymMatrix SymMatrix::operator-() const { return scaled(-1.0); }

SymMatrix SymMatrix::scaled(double t) const {
    SymMatrix m{n, e};
    for (int k = 0; k < 6; ++k) m.e[k] *= t;
    return m;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += e[i];
    return t;
}

namespace {

// det(A - s I) for the 3x3 case, in extended precision.
long double char_poly3(const SymMatrix& m, long double s) {
    const long double a = m.e[0] - s, b = m.e[1] - s, c = m.e[2] - s;
    const long double d = m.e[3], f = m.e[4], g = m.e[5];
    return a * (b * c - g * g) - d * (d * c - g * f) + f * (d * g - b * f);
}

long double char_poly3_deriv(const SymMatrix& m, long double s) {
    // d/ds det(A - sI) = -(sum of 2x2 principal minors of (A - sI))
    const long double a = m.e[0] - s, b = m.e[1] - s, c = m.e[2] - s;
    const long double d = m.e[3], f = m.e[4], g = m.e[5];
    return -((a * b - d * d) + (a * c - f * f) + (b * c - g * g));
}

std::array<double, 3> eig3(const SymMatrix& m) {
    const double p1 = m.e[3] * m.e[3] + m.e[4] * m.e[4] + m.e[5] * m.e[5];
    const double q = m.trace() / 3.0;
    if (p1 == 0.0) {
        std::array<double, 3> v = {m.e[0], m.e[1], m.e[2]};
        std::sort(v.begin(), v.end());
        return v;
    }
    const double p2 = (m.e[0] - q) * (m.e[0] - q) + (m.e[1] - q) * (m.e[1] - q) +
                      (m.e[2] - q) * (m.e[2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    // r = det((A - qI)/p) / 2, clamped against rounding
    SymMatrix b = m;
    for (int i = 0; i < 3; ++i) b.e[i] -= q;
    const double detB = static_cast<double>(char_poly3(b, 0.0L));
    double r = detB / (2.0 * p * p * p);
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    std::array<double, 3> v;
    v[2] = q + 2.0 * p * std::cos(phi);
    v[0] = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    v[1] = 3.0 * q - v[0] - v[2];

    // one guarded Newton step against the characteristic polynomial
    const double scale = std::abs(q) + p;
    for (double& lam : v) {
        const long double fp = char_poly3_deriv(m, lam);
        if (std::abs(static_cast<double>(fp)) > 1e-8 * scale * scale) {
            const long double step = char_poly3(m, lam) / fp;
            if (std::abs(static_cast<double>(step)) < 1e-3 * (scale + 1.0))
                lam -= static_cast<double>(step);
        }
    }
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::array<double, 3> eigenvalues(const SymMatrix& m) {
    if (m.n == 1) return {m.e[0], 0.0, 0.0};
    if (m.n == 2) {
        const double a = m.e[0], b = m.e[1], c = m.e[3];
        const double disc = std::sqrt(std::max(0.0, (a - b) * (a - b) + 4.0 * c * c));
        const double s = a + b;
        // larger-magnitude root first, the other via the product (stable)
        double l1 = (s >= 0.0) ? 0.5 * (s + disc) : 0.5 * (s - disc);
        double l2;
        if (disc == 0.0 || l1 == 0.0)
            l2 = 0.5 * (s - (s >= 0.0 ? disc : -disc));
        else
            l2 = (a * b - c * c) / l1;
        if (l1 > l2) std::swap(l1, l2);
        return {l1, l2, 0.0};
    }
    if (m.n == 3) return eig3(m);
    throw std::invalid_argument("eigenvalues: n must be 1, 2, or 3");
}

double pucci_minus(const SymMatrix& m, const PucciParams& p) {
    if (m.n != p.n) throw std::invalid_argument("pucci_minus: dimension mismatch");
    if (p.lambda < 1.0) throw std::invalid_argument("pucci_minus: lambda must be >= 1");
    const auto ev = eigenvalues(m);
    double s = 0.0;
    for (int i = 0; i < m.n; ++i) s += ev[i] > 0.0 ? ev[i] : p.lambda * ev[i];
    return s;
}

double pucci_plus(const SymMatrix& m, const PucciParams& p) { return -pucci_minus(-m, p); }

SymMatrix discrete_hessian(const GridFunction& u, NodeId id) {
    const auto& dom = *u.domain();
    const int n = dom.dim();
    if (!dom.is_interior(id))
        throw std::invalid_argument("discrete_hessian: node is boundary-adjacent");
    const double h = dom.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const double u0 = u[id];
    SymMatrix m = SymMatrix::zero(n);
    for (int a = 0; a < n; ++a) {
        const NodeId ip = dom.neighbor(id, a, +1);
        const NodeId im = dom.neighbor(id, a, -1);
        if (ip < 0 || im < 0) throw std::invalid_argument("discrete_hessian: stencil exits domain");
        m.set(a, a, (u[ip] + u[im] - 2.0 * u0) * inv_h2);
        for (int b = a + 1; b < n; ++b) {
            LatticeIndex i = dom.lattice_index(id);
            auto at = [&](int sa, int sb) {
                LatticeIndex j = i;
                j[a] += sa;
                j[b] += sb;
                return dom.node_at(j);
            };
            const NodeId pp = at(1, 1), mm = at(-1, -1), pm = at(1, -1), mp = at(-1, 1);
            if (pp < 0 || mm < 0 || pm < 0 || mp < 0)
                throw std::invalid_argument("discrete_hessian: stencil exits domain");
            m.set(a, b, (u[pp] + u[mm] - u[pm] - u[mp]) * 0.25 * inv_h2);
        }
    }
    return m;
}

namespace {

bool has_full_stencil(const GridDomain& dom, NodeId id) {
    const int n = dom.dim();
    LatticeIndex i = dom.lattice_index(id);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            LatticeIndex j = i;
            j[a] += 1;
            if (a == b) {
                LatticeIndex k = i;
                k[a] -= 1;
                if (dom.node_at(j) < 0 || dom.node_at(k) < 0) return false;
            } else {
                for (int sa : {-1, 1})
                    for (int sb : {-1, 1}) {
                        LatticeIndex k = i;
                        k[a] += sa;
                        k[b] += sb;
                        if (dom.node_at(k) < 0) return false;
                    }
            }
        }
    return true;
}

}  // namespace

SupersolutionReport check_supersolution(const GridFunction& u, const PucciParams& p, double tau,
                                        double cap) {
    if (tau < 0.0) throw std::invalid_argument("check_supersolution: tau must be >= 0");
    const auto& dom = *u.domain();
    SupersolutionReport rep;
    rep.tol = tau;
    for (NodeId id = 0; id < dom.node_count(); ++id) {
        if (!dom.is_interior(id)) continue;
        if (!has_full_stencil(dom, id)) continue;
        const SymMatrix m = discrete_hessian(u, id);
        const auto ev = eigenvalues(m);
        ++rep.checked;
        if (ev[0] <= -cap) {
            ++rep.capped;
            continue;
        }
        const double val = pucci_minus(m, p);
        if (val > tau) {
            ++rep.violating;
            rep.max_violation = std::max(rep.max_violation, val);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Monotone wide-stencil solver
// ---------------------------------------------------------------------------

namespace {

struct StencilDir {
    LatticeIndex step;
    double inv_d2;  // 1 / (|step| h)^2
};

// Orthogonal direction frames made of lattice lines.
std::vector<std::vector<StencilDir>> build_frames(int n, int K, double h) {
    const double ih2 = 1.0 / (h * h);
    std::vector<std::vector<StencilDir>> frames;
    if (n == 1) {
        frames.push_back({{{1, 0, 0}, ih2}});
        return frames;
    }
    if (n == 2) {
        frames.push_back({{{1, 0, 0}, ih2}, {{0, 1, 0}, ih2}});
        if (K >= 8) frames.push_back({{{1, 1, 0}, 0.5 * ih2}, {{1, -1, 0}, 0.5 * ih2}});
        return frames;
    }
    frames.push_back({{{1, 0, 0}, ih2}, {{0, 1, 0}, ih2}, {{0, 0, 1}, ih2}});
    if (K >= 18) {
        frames.push_back({{{1, 0, 0}, ih2}, {{0, 1, 1, }, 0.5 * ih2}, {{0, 1, -1}, 0.5 * ih2}});
        frames.push_back({{{0, 1, 0}, ih2}, {{1, 0, 1}, 0.5 * ih2}, {{1, 0, -1}, 0.5 * ih2}});
        frames.push_back({{{0, 0, 1}, ih2}, {{1, 1, 0}, 0.5 * ih2}, {{1, -1, 0}, 0.5 * ih2}});
    }
    return frames;
}

struct SolverGrid {
    DomainPtr dom;
    std::vector<std::vector<StencilDir>> frames;
    std::vector<std::uint8_t> solvable;
    // neighbor ids per solvable node, frames flattened: for each frame, for
    // each direction, (plus, minus)
    std::vector<NodeId> nbr;
    int dirs_total = 0;
};

SolverGrid prepare(const DomainPtr& dom, int K) {
    SolverGrid g;
    g.dom = dom;
    g.frames = build_frames(dom->dim(), K, dom->spacing());
    for (const auto& f : g.frames) g.dirs_total += static_cast<int>(f.size());
    g.solvable.assign(dom->node_count(), 0);
    g.nbr.assign(static_cast<std::size_t>(dom->node_count()) * g.dirs_total * 2, -1);
    for (NodeId id = 0; id < dom->node_count(); ++id) {
        if (!dom->is_interior(id)) continue;
        bool ok = true;
        std::size_t base = static_cast<std::size_t>(id) * g.dirs_total * 2;
        std::size_t slot = 0;
        for (const auto& f : g.frames)
            for (const auto& d : f) {
                LatticeIndex ip = dom->lattice_index(id), im = ip;
                for (int c = 0; c < 3; ++c) {
                    ip[c] += d.step[c];
                    im[c] -= d.step[c];
                }
                const NodeId a = dom->node_at(ip), b = dom->node_at(im);
                if (a < 0 || b < 0) ok = false;
                g.nbr[base + 2 * slot] = a;
                g.nbr[base + 2 * slot + 1] = b;
                ++slot;
            }
        g.solvable[id] = ok ? 1 : 0;
    }
    return g;
}

// Value at a node that zeroes min over frames / coefficient choices of the
// wide-stencil M^-. Coefficients in {1, lambda} per direction.
double local_solve(const SolverGrid& g, const std::vector<double>& u, NodeId id, double lambda) {
    const std::size_t base = static_cast<std::size_t>(id) * g.dirs_total * 2;
    double best = std::numeric_limits<double>::infinity();
    std::size_t slot = 0;
    for (const auto& f : g.frames) {
        const int nd = static_cast<int>(f.size());
        // enumerate coefficient assignments
        for (int combo = 0; combo < (1 << nd); ++combo) {
            double num = 0.0, den = 0.0;
            for (int k = 0; k < nd; ++k) {
                const double a = (combo >> k) & 1 ? lambda : 1.0;
                const double w = a * f[k].inv_d2;
                const double up = u[g.nbr[base + 2 * (slot + k)]];
                const double um = u[g.nbr[base + 2 * (slot + k) + 1]];
                num += w * (up + um);
                den += 2.0 * w;
            }
            best = std::min(best, num / den);
        }
        slot += nd;
    }
    return best;
}

double stencil_residual(const SolverGrid& g, const std::vector<double>& u, NodeId id,
                        double lambda) {
    const std::size_t base = static_cast<std::size_t>(id) * g.dirs_total * 2;
    double best = std::numeric_limits<double>::infinity();
    std::size_t slot = 0;
    for (const auto& f : g.frames) {
        double sum = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double up = u[g.nbr[base + 2 * (slot + k)]];
            const double um = u[g.nbr[base + 2 * (slot + k) + 1]];
            const double d2 = (up + um - 2.0 * u[id]) * f[k].inv_d2;
            sum += std::min(d2, lambda * d2);
        }
        best = std::min(best, sum);
        slot += f.size();
    }
    return best;
}

struct SweepOutcome {
    bool converged;
    int sweeps;
};

SweepOutcome relax(const SolverGrid& g, std::vector<double>& u, double lambda, double tol,
                   long max_sweeps) {
    const double damping = 0.5;
    for (long sweep = 1; sweep <= max_sweeps; ++sweep) {
        double max_update = 0.0;
        for (NodeId id = 0; id < g.dom->node_count(); ++id) {
            if (!g.solvable[id]) continue;
            const double target = local_solve(g, u, id, lambda);
            const double upd = damping * (target - u[id]);
            u[id] += upd;
            max_update = std::max(max_update, std::abs(upd));
        }
        if (max_update < tol) return {true, static_cast<int>(sweep)};
    }
    return {false, static_cast<int>(max_sweeps)};
}

}  // namespace

SolveResult solve_pucci_dirichlet(const DomainPtr& dom, const std::function<double(const Vec&)>& g,
                                  const PucciParams& p, int K, double tol, long max_sweeps) {
    if (K < 2 * dom->dim())
        throw std::invalid_argument("solve_pucci_dirichlet: K must be >= 2n");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_pucci_dirichlet: tol must be positive");
    if (p.n != dom->dim()) throw std::invalid_argument("solve_pucci_dirichlet: dimension mismatch");

    // Solve on a padded ball and return the restriction: the staircase band
    // carries an O(1) kink layer that must stay clear of the requested
    // domain's interior.
    const double pad_radius = dom->radius() + 8.0 * dom->spacing();
    const DomainPtr solve_dom =
        make_ball_domain(dom->dim(), pad_radius, dom->spacing(), dom->band_width(), dom->center());

    // coarse-to-fine initialization, then damped sweeps at the target spacing
    std::vector<DomainPtr> levels{solve_dom};
    while (levels.size() < 5) {
        const double h2 = levels.back()->spacing() * 2.0;
        if (h2 > pad_radius / (2.0 * solve_dom->band_width())) break;
        levels.push_back(make_ball_domain(dom->dim(), pad_radius, h2, dom->band_width(),
                                          dom->center()));
    }

    std::vector<double> vals;
    int total_sweeps = 0;
    for (std::size_t li = levels.size(); li-- > 0;) {
        const DomainPtr& d = levels[li];
        std::vector<double> init(d->node_count());
        if (li == levels.size() - 1 || vals.empty()) {
            for (NodeId id = 0; id < d->node_count(); ++id) init[id] = g(d->point(id));
        } else {
            // multilinear interpolation from the coarser level
            const DomainPtr& coarse = levels[li + 1];
            for (NodeId id = 0; id < d->node_count(); ++id) {
                if (!d->is_interior(id)) {
                    init[id] = g(d->point(id));
                    continue;
                }
                const LatticeIndex fi = d->lattice_index(id);
                double num = 0.0, den = 0.0;
                for (int s1 = 0; s1 <= 1; ++s1)
                    for (int s2 = 0; s2 <= (d->dim() > 1 ? 1 : 0); ++s2)
                        for (int s3 = 0; s3 <= (d->dim() > 2 ? 1 : 0); ++s3) {
                            LatticeIndex ci;
                            const int sgn[3] = {s1, s2, s3};
                            double w = 1.0;
                            bool valid = true;
                            for (int c = 0; c < 3; ++c) {
                                const int lo = fi[c] >= 0 ? fi[c] / 2 : -((-fi[c] + 1) / 2);
                                const double frac = 0.5 * fi[c] - lo;
                                ci[c] = lo + (c < d->dim() ? sgn[c] : 0);
                                const double wc = sgn[c] ? frac : 1.0 - frac;
                                if (c < d->dim()) w *= wc;
                                if (w == 0.0) valid = false;
                            }
                            if (!valid) continue;
                            const NodeId cid = coarse->node_at(ci);
                            if (cid < 0) continue;
                            num += w * vals[cid];
                            den += w;
                        }
                init[id] = den > 0.0 ? num / den : g(d->point(id));
            }
        }
        vals = std::move(init);
        SolverGrid grid = prepare(d, K);
        const double level_tol = li == 0 ? tol : std::max(tol, 1e-10);
        const long level_sweeps = li == 0 ? max_sweeps : std::max<long>(200, max_sweeps / 10);
        const SweepOutcome out = relax(grid, vals, p.lambda, level_tol, level_sweeps);
        total_sweeps += out.sweeps;
        if (li == 0) {
            double res = 0.0;
            for (NodeId id = 0; id < d->node_count(); ++id)
                if (grid.solvable[id])
                    res = std::max(res, std::abs(stencil_residual(grid, vals, id, p.lambda)));
            std::vector<double> restricted(dom->node_count());
            for (NodeId id = 0; id < dom->node_count(); ++id) {
                const NodeId j = d->node_at(dom->lattice_index(id));
                restricted[id] = j >= 0 ? vals[j] : g(dom->point(id));
            }
            return {GridFunction(dom, std::move(restricted)), out.converged, total_sweeps, res};
        }
    }
    throw std::logic_error("solve_pucci_dirichlet: unreachable");
}

// ---------------------------------------------------------------------------
// Gallery
// ---------------------------------------------------------------------------

namespace {

std::vector<double> parse_params(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

GridFunction make_barrier(const PucciParams& p, const DomainPtr& dom, const Vec& pole) {
    const double pw = p.n * p.lambda;
    const double denom = 1.0 - std::pow(2.0, -pw);
    const double rmin = 0.5 * dom->spacing();  // pole node clamp
    return GridFunction(dom, [&](const Vec& x) {
        const double r = std::max(norm(x - pole), rmin);
        return (std::pow(r, -pw) - std::pow(2.0, -pw)) / denom;
    });
}

GridFunction make_barrier_sum(const PucciParams&, const DomainPtr& dom) {
    const double R = dom->radius();
    const Vec c = dom->center();
    if (dom->dim() == 1) {
        // min of positive tents, concave kinks only
        return GridFunction(dom, [&](const Vec& x) {
            const double t1 = 2.0 - std::abs(x[0] - (c[0] - 0.4 * R)) / R;
            const double t2 = 1.8 - 0.9 * std::abs(x[0] - (c[0] + 0.5 * R)) / R;
            return std::min(t1, t2);
        });
    }
    // min of clamped log spikes; -log(|x-p|/2R) is a supersolution for
    // lambda (n-1) >= 1 and stays positive on the ball
    struct Spike {
        Vec pole;
        double amp;
    };
    const std::vector<Spike> spikes = {
        {{c[0] + 0.375 * R, c[1] + 0.125 * R, 0.0}, 1.0},
        {{c[0] - 0.5 * R, c[1] + 0.25 * R, dom->dim() > 2 ? c[2] + 0.25 * R : 0.0}, 0.7},
        {{c[0] + 0.125 * R, c[1] - 0.45 * R, 0.0}, 1.3},
    };
    const double clamp_r = 0.2 * R;  // keeps discrete curvature below the check tolerance
    return GridFunction(dom, [&](const Vec& x) {
        double v = std::numeric_limits<double>::infinity();
        for (const auto& s : spikes) {
            const double r = std::max(norm(x - s.pole), clamp_r);
            v = std::min(v, s.amp * (-std::log(r / (2.0 * R))));
        }
        return v;
    });
}

GridFunction make_random_solved(const PucciParams& p, const DomainPtr& dom, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double R = dom->radius();
    const int n = dom->dim();
    Vec lin{0, 0, 0};
    for (int c = 0; c < n; ++c) lin[c] = unif(rng) / R;
    struct Wave {
        Vec k;
        double amp, phase;
    };
    std::vector<Wave> waves(3);
    for (auto& w : waves) {
        for (int c = 0; c < n; ++c) w.k[c] = (1.0 + 1.5 * (unif(rng) + 1.0)) / R;
        w.amp = 0.4 * unif(rng);
        w.phase = M_PI * unif(rng);
    }
    auto g = [=](const Vec& x) {
        double v = dot(lin, x);
        for (const auto& w : waves) v += w.amp * std::sin(dot(w.k, x) + w.phase);
        return v;
    };
    const int K = n == 1 ? 2 : (n == 2 ? 8 : 18);
    auto res = solve_pucci_dirichlet(dom, g, p, K, 1e-9, 100000);
    return std::move(res.u);
}

}  // namespace

GridFunction gallery(const std::string& name, const PucciParams& p, const DomainPtr& dom) {
    std::string head = name, args;
    if (auto pos = name.find(':'); pos != std::string::npos) {
        head = name.substr(0, pos);
        args = name.substr(pos + 1);
    }
    const Vec c = dom->center();

    if (head == "cone") return GridFunction(dom, [&](const Vec& x) { return 1.0 - norm(x - c); });
    if (head == "neg_cone") return GridFunction(dom, [&](const Vec& x) { return -norm(x - c); });
    if (head == "pos_cone") {
        const double R = dom->radius();
        return GridFunction(dom, [&](const Vec& x) { return (R - norm(x - c)) / R; });
    }
    if (head == "rim_cone") {
        Vec v = c;
        v[0] += 0.98 * dom->radius();
        return GridFunction(dom, [&](const Vec& x) { return -norm(x - v); });
    }
    if (head == "ass_block") {
        if (dom->dim() > 2)
            throw std::invalid_argument("gallery: ass_block is a supersolution only for n <= 2");
        const int n = dom->dim();
        const double lam = p.lambda;
        return GridFunction(dom, [&, n, lam](const Vec& x) {
            double xp2 = 0.0;
            for (int d = 0; d + 1 < n; ++d) xp2 += (x[d] - c[d]) * (x[d] - c[d]);
            const double xn = x[n - 1] - c[n - 1];
            return std::min(lam * xp2 - xn * xn - 1.0, 0.0);
        });
    }
    if (head == "barrier") {
        Vec pole = c;
        if (!args.empty()) {
            const auto v = parse_params(args);
            for (std::size_t i = 0; i < v.size() && i < 3; ++i) pole[i] = v[i];
        }
        return make_barrier(p, dom, pole);
    }
    if (head == "barrier_sum") return make_barrier_sum(p, dom);
    if (head == "paraboloid") {
        const auto v = parse_params(args);
        if (static_cast<int>(v.size()) != dom->dim() + 2)
            throw std::invalid_argument("gallery: paraboloid needs a,y1..yn,b");
        Paraboloid q;
        q.opening = v[0];
        for (int d = 0; d < dom->dim(); ++d) q.slope[d] = v[1 + d];
        q.offset = v.back();
        return GridFunction(dom, [&](const Vec& x) { return q.eval(x); });
    }
    if (head == "random_solved") {
        const std::uint64_t seed = args.empty() ? 1 : std::stoull(args);
        return make_random_solved(p, dom, seed);
    }
    throw std::invalid_argument("gallery: unknown name '" + name + "'");
}

std::vector<std::string> gallery_supersolutions(const PucciParams& p) {
    std::vector<std::string> names = {"cone", "neg_cone", "rim_cone"};
    if (p.n <= 2) names.push_back("ass_block");
    std::string parab = "paraboloid:-2";
    for (int d = 0; d < p.n; ++d) parab += ",0";
    parab += ",0.5";
    names.push_back(parab);
    if (p.n >= 2) names.push_back("barrier_sum");
    names.push_back("random_solved:1");
    return names;
}

std::vector<std::string> gallery_harnack_members(const PucciParams& p) {
    std::string one = "paraboloid:0";
    for (int d = 0; d < p.n; ++d) one += ",0";
    one += ",1";
    std::vector<std::string> names = {one, "pos_cone"};
    if (p.n >= 2) names.push_back("barrier_sum");
    return names;
}

}  // namespace parab
