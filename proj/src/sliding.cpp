#include "parab/sliding.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace parab {

std::vector<TangentParaboloid> tangent_paraboloids(const EnvelopeResult& e, const ContactSet& F,
                                                   double new_opening) {
    if (!(new_opening > e.a))
        throw std::invalid_argument("tangent_paraboloids: new_opening must exceed the envelope opening");
    const auto& dom = *e.gamma.domain();
    const double gap = new_opening - e.a;

    std::vector<TangentParaboloid> out;
    out.reserve(F.count());
    for (NodeId id = 0; id < dom.node_count(); ++id) {
        if (!F.contains(id) || !dom.is_interior(id)) continue;
        const Vec x0 = dom.point(id);
        const Vec p = e.hull->node_slope[id];  // subgradient of Gamma + (a/2)|x|^2
        const double w0 = e.gamma[id] + 0.5 * e.a * norm2(x0);

        TangentParaboloid tp;
        tp.source = id;
        tp.parab.opening = -new_opening;
        tp.parab.slope = p + gap * x0;
        tp.parab.offset = w0 - dot(p, x0) - 0.5 * gap * norm2(x0);
        tp.vertex = x0 + (1.0 / gap) * p;
        out.push_back(tp);
    }
    return out;
}

namespace {

double tie_tolerance(double t, double scale) {
    return 1e-12 * std::max({1.0, std::abs(t), scale});
}

}  // namespace

SlideResult slide_up(const GridFunction& u, const Paraboloid& P) {
    const auto& dom = *u.domain();
    const NodeId N = dom.node_count();
    SlideResult res;
    res.parab = P;
    double t = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (NodeId i = 0; i < N; ++i) {
        const double d = u[i] - P.eval(dom.point(i));
        scale = std::max(scale, std::abs(d));
        t = std::min(t, d);
    }
    res.t = t;
    const double tol = tie_tolerance(t, scale);
    for (NodeId i = 0; i < N; ++i) {
        const double d = u[i] - P.eval(dom.point(i));
        if (d <= t + tol) {
            res.contact.push_back(i);
            if (!dom.is_interior(i)) res.interior = false;
        }
    }
    return res;
}

namespace {

// vertex adjacency (CSR over node ids) from the downward facet list
struct HullAdjacency {
    std::vector<std::int32_t> start;
    std::vector<NodeId> adj;

    explicit HullAdjacency(const HullInfo& info, NodeId n_nodes) {
        std::vector<std::int32_t> deg(n_nodes + 1, 0);
        auto edges_of = [](const std::array<NodeId, 3>& f) {
            const bool tri = f[2] >= 0;
            return tri ? 3 : 1;
        };
        for (const auto& f : info.facets) {
            const int ne = edges_of(f);
            for (int k = 0; k < ne; ++k) {
                const NodeId a = f[k], b = f[(k + 1) % (ne == 1 ? 2 : 3)];
                ++deg[a + 1];
                ++deg[b + 1];
            }
        }
        start.resize(n_nodes + 1);
        start[0] = 0;
        for (NodeId i = 0; i < n_nodes; ++i) start[i + 1] = start[i] + deg[i + 1];
        adj.resize(start[n_nodes]);
        std::vector<std::int32_t> fill(start.begin(), start.end() - 1);
        for (const auto& f : info.facets) {
            const int ne = edges_of(f);
            for (int k = 0; k < ne; ++k) {
                const NodeId a = f[k], b = f[(k + 1) % (ne == 1 ? 2 : 3)];
                adj[fill[a]++] = b;
                adj[fill[b]++] = a;
            }
        }
    }
};

}  // namespace

std::vector<SlideResult> slide_up_batch(const GridFunction& u, const EnvelopeResult& env_b,
                                        const std::vector<TangentParaboloid>& tps) {
    const auto& dom = *u.domain();
    const NodeId N = dom.node_count();
    std::vector<SlideResult> out;
    out.reserve(tps.size());

    const bool walkable = env_b.hull && env_b.hull->exact && !env_b.hull->facets.empty();
    if (!walkable) {
        for (const auto& tp : tps) {
            SlideResult r = slide_up(u, tp.parab);
            r.source = tp.source;
            out.push_back(std::move(r));
        }
        return out;
    }
    for (const auto& tp : tps)
        if (tp.parab.opening != -env_b.a)
            throw std::invalid_argument("slide_up_batch: paraboloid opening does not match envelope");

    // lifted frame: u - P = G - (slope . x) - offset with G = u + (b/2)|x|^2
    std::vector<double> G(N);
    double gscale = 1.0;
    for (NodeId i = 0; i < N; ++i) {
        G[i] = u[i] + 0.5 * env_b.a * norm2(dom.point(i));
        gscale = std::max(gscale, std::abs(G[i]));
    }

    const HullInfo& hull = *env_b.hull;
    HullAdjacency adjacency(hull, N);

    std::vector<NodeId> bfs;
    std::vector<NodeId> visited;
    std::vector<std::uint8_t> in_queue(N, 0);

    for (const auto& tp : tps) {
        SlideResult res;
        res.source = tp.source;
        res.parab = tp.parab;
        const Vec y = tp.parab.slope;

        auto phi = [&](NodeId z) { return dot(y, dom.point(z)) - G[z]; };

        // start from the source's covering facet, then hill-climb the hull
        NodeId cur = -1;
        const std::int32_t f0 = hull.node_facet[tp.source];
        if (f0 >= 0) {
            double best = -std::numeric_limits<double>::infinity();
            for (NodeId v : hull.facets[f0]) {
                if (v < 0) continue;
                const double p = phi(v);
                if (p > best || (p == best && (cur < 0 || v < cur))) {
                    best = p;
                    cur = v;
                }
            }
        }
        if (cur < 0) {
            // no covering facet recorded; fall back to the exact scan
            SlideResult r = slide_up(u, tp.parab);
            r.source = tp.source;
            out.push_back(std::move(r));
            continue;
        }
        double cur_phi = phi(cur);
        while (true) {
            NodeId next = -1;
            double next_phi = cur_phi;
            for (std::int32_t k = adjacency.start[cur]; k < adjacency.start[cur + 1]; ++k) {
                const NodeId z = adjacency.adj[k];
                const double p = phi(z);
                if (p > next_phi || (p == next_phi && next >= 0 && z < next)) {
                    next_phi = p;
                    next = z;
                }
            }
            if (next < 0 || next_phi <= cur_phi) break;
            cur = next;
            cur_phi = next_phi;
        }

        // collect the argmin plateau by lattice flood fill
        const double t0 = -cur_phi - tp.parab.offset;
        const double tol = tie_tolerance(t0, gscale);
        double t = t0;
        bfs.clear();
        visited.clear();
        bfs.push_back(cur);
        in_queue[cur] = 1;
        const int n = dom.dim();
        while (!bfs.empty()) {
            const NodeId z = bfs.back();
            bfs.pop_back();
            visited.push_back(z);
            const double val = u[z] - tp.parab.eval(dom.point(z));
            t = std::min(t, val);
            LatticeIndex li = dom.lattice_index(z);
            const int s2 = n > 1 ? 1 : 0, s3 = n > 2 ? 1 : 0;
            for (int d1 = -1; d1 <= 1; ++d1)
                for (int d2 = -s2; d2 <= s2; ++d2)
                    for (int d3 = -s3; d3 <= s3; ++d3) {
                        if (d1 == 0 && d2 == 0 && d3 == 0) continue;
                        const NodeId w =
                            dom.node_at({li[0] + d1, li[1] + d2, li[2] + d3});
                        if (w < 0 || in_queue[w]) continue;
                        const double wv = u[w] - tp.parab.eval(dom.point(w));
                        if (wv <= t0 + tol) {
                            in_queue[w] = 1;
                            bfs.push_back(w);
                        }
                    }
        }
        res.t = t;
        for (NodeId z : visited) {
            in_queue[z] = 0;
            const double val = u[z] - tp.parab.eval(dom.point(z));
            if (val <= t + tol) {
                res.contact.push_back(z);
                if (!dom.is_interior(z)) res.interior = false;
            }
        }
        std::sort(res.contact.begin(), res.contact.end());
        out.push_back(std::move(res));
    }
    return out;
}

double vertex_cell_measure(const DomainPtr& dom, const std::vector<TangentParaboloid>& tps) {
    const double h = dom->spacing();
    const Vec c = dom->center();
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(tps.size() * 2);
    constexpr std::int64_t kOff = 1 << 20;
    for (const auto& tp : tps) {
        std::uint64_t key = 0;
        bool ok = true;
        for (int d = 0; d < dom->dim(); ++d) {
            const double rel = (tp.vertex[d] - c[d]) / h;
            if (!(std::abs(rel) < kOff - 2)) {
                ok = false;  // runaway vertex, count it as its own far cell
                break;
            }
            key = key * (2 * kOff) + static_cast<std::uint64_t>(std::llround(rel) + kOff);
        }
        if (ok) cells.insert(key);
    }
    return static_cast<double>(cells.size()) * dom->cell_measure();
}

MeasureReport measure_estimate(const GridFunction& u, double a, double lambda,
                               const ContactSet& F, double restrict_radius, EnvelopeCache* cache,
                               double slack) {
    if (!(a > 0.0)) throw std::invalid_argument("measure_estimate: opening must be positive");
    if (lambda < 1.0) throw std::invalid_argument("measure_estimate: lambda must be >= 1");
    const auto& dom = *u.domain();
    const int n = dom.dim();

    std::unique_ptr<EnvelopeCache> own;
    if (!cache) {
        own = std::make_unique<EnvelopeCache>(std::make_shared<GridFunction>(u));
        cache = own.get();
    }
    const EnvelopeResult& env_a = cache->at(a);
    const EnvelopeResult& env_2a = cache->at(2.0 * a);
    const ContactSet& A_a = env_a.contact;
    const ContactSet& A_2a = env_2a.contact;
    const ContactSet& A_0 = cache->at(0.0).contact;

    // precondition F subset of {u > Gamma^a} interior nodes
    ContactSet F_eff = F.intersect(A_a.complement()).intersect(interior_mask(u.domain()));

    MeasureReport rep;
    rep.a = a;
    rep.lambda = lambda;
    rep.slack = slack;
    rep.restrict_radius = restrict_radius;
    rep.F_measure = F_eff.measure();
    rep.bound = 0.5 * std::pow(2.0 * n * lambda, 1.0 - n) * rep.F_measure;

    const auto tps = tangent_paraboloids(env_a, F_eff, 2.0 * a);
    rep.slides = static_cast<long>(tps.size());
    rep.V_measure = vertex_cell_measure(u.domain(), tps);

    const auto slides = slide_up_batch(u, env_2a, tps);

    ContactSet E(u.domain());
    const Vec c = dom.center();
    const double restrict_r2 =
        restrict_radius > 0.0 ? restrict_radius * restrict_radius * (1.0 + 1e-12) : 0.0;
    for (const auto& s : slides) {
        if (!s.interior) ++rep.interior_violations;
        for (NodeId z : s.contact) {
            E.set(z, true);
            const double r2 = norm2(dom.point(z) - c);
            rep.max_contact_radius = std::max(rep.max_contact_radius, std::sqrt(r2));
            if (restrict_radius > 0.0 && r2 > restrict_r2) rep.restrict_ok = false;
        }
    }
    if (rep.interior_violations > 0) rep.precondition_ok = false;
    rep.E_measure = E.measure();

    for (NodeId z = 0; z < dom.node_count(); ++z) {
        if (!E.contains(z)) continue;
        if (A_0.contains(z)) ++rep.contacts_in_a0;
        if (A_a.contains(z)) ++rep.contacts_in_a_base;
        if (dom.is_interior(z) && !A_2a.contains(z)) ++rep.e_outside_a2a;
    }

    ContactSet incr = A_2a.set_minus(A_a);
    if (restrict_radius > 0.0) incr = incr.intersect(ball_mask(u.domain(), restrict_radius, c));
    rep.increment = incr.measure();
    rep.pass = rep.increment >= rep.bound * (1.0 - slack);
    return rep;
}

}  // namespace parab
