#include "parab/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace parab {

namespace {

constexpr double kSlopeTieTol = 1e-9;

bool slope_less(const Vec& a, const Vec& b) {
    for (int c = 0; c < 3; ++c) {
        if (a[c] < b[c]) return true;
        if (a[c] > b[c]) return false;
    }
    return false;
}

// Merge a covering facet's plane into the per-node record: keep the smallest
// plane value; among value ties keep the lexicographically smallest slope.
void merge_node_plane(double z, const Vec& slope, std::int32_t facet, double& best_z,
                      Vec& best_slope, std::int32_t& best_facet) {
    const double tol = kSlopeTieTol * (1.0 + std::abs(z) + std::abs(best_z));
    if (z < best_z - tol) {
        best_z = z;
        best_slope = slope;
        best_facet = facet;
        return;
    }
    if (z <= best_z + tol) {
        best_z = std::min(best_z, z);
        if (slope_less(slope, best_slope)) {
            best_slope = slope;
            best_facet = facet;
        }
    }
}

// ---------------------------------------------------------------------------
// n = 1: monotone chain over the (sorted) lattice line
// ---------------------------------------------------------------------------

std::vector<double> chain_1d(const GridDomain& dom, const std::vector<double>& w, HullInfo& info) {
    const NodeId N = dom.node_count();
    // nodes are created in ascending lattice order for n = 1
    std::vector<NodeId> hull;
    hull.reserve(64);
    for (NodeId i = 0; i < N; ++i) {
        const long double xi = dom.lattice_index(i)[0];
        while (hull.size() >= 2) {
            const NodeId a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            const long double xa = dom.lattice_index(a)[0], xb = dom.lattice_index(b)[0];
            // keep b only if it lies strictly below chord a-i
            const long double cross =
                (xb - xa) * (static_cast<long double>(w[i]) - w[a]) -
                (xi - xa) * (static_cast<long double>(w[b]) - w[a]);
            if (cross > 0.0L)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    std::vector<double> env(N);
    info.node_facet.assign(N, -1);
    info.node_slope.assign(N, Vec{0, 0, 0});
    info.is_vertex.assign(N, 0);
    info.exact = true;
    const double h = dom.spacing();

    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const NodeId a = hull[k], b = hull[k + 1];
        info.facets.push_back({a, b, -1});
        const double xa = dom.lattice_index(a)[0], xb = dom.lattice_index(b)[0];
        const double slope_lat = (w[b] - w[a]) / (xb - xa);
        const Vec slope = {slope_lat / h, 0.0, 0.0};
        const std::int32_t fid = static_cast<std::int32_t>(info.facets.size()) - 1;
        for (NodeId i = a; i <= b; ++i) {
            const double z = w[a] + slope_lat * (dom.lattice_index(i)[0] - xa);
            if (info.node_facet[i] < 0) {
                env[i] = z;
                info.node_slope[i] = slope;
                info.node_facet[i] = fid;
            } else {
                merge_node_plane(z, slope, fid, env[i], info.node_slope[i], info.node_facet[i]);
            }
        }
    }
    for (NodeId v : hull) {
        env[v] = w[v];
        info.is_vertex[v] = 1;
    }
    if (hull.size() == 1) {  // cannot happen for real domains, but stay safe
        env = w;
        info.node_facet.assign(N, 0);
        info.facets.push_back({hull[0], hull[0], -1});
    }
    return env;
}

// ---------------------------------------------------------------------------
// n = 2: incremental (quickhull) 3-D hull of lifted lattice points
// ---------------------------------------------------------------------------

struct QuickHull {
    // point coords: lattice x, y (exact small integers as doubles), lifted z
    std::vector<double> px, py, pz;
    int npts = 0;

    struct Facet {
        std::int32_t v[3];
        std::int32_t nbr[3];  // neighbor across edge (v[k], v[k+1])
        double nx, ny, nz, off;
        double eps;     // visibility threshold
        std::int32_t head = -1;  // outside-point list (indices into `next`)
        std::int32_t far_pt = -1;
        double far_d = 0.0;
        std::uint8_t dead = 0;
    };
    std::vector<Facet> facets;
    std::vector<std::int32_t> free_slots;
    std::vector<std::int32_t> next;  // linked outside lists, one slot per point
    double cx = 0, cy = 0, cz = 0;   // interior reference point
    double max_abs_x = 1, max_abs_y = 1, max_abs_z = 1;

    // scratch
    std::vector<std::int32_t> mark;
    std::int32_t epoch = 0;
    std::vector<std::int32_t> stack, visible, horizon_f, horizon_s, fresh;

    double sd(const Facet& f, std::int32_t p) const {
        return f.nx * px[p] + f.ny * py[p] + f.nz * pz[p] + f.off;
    }

    void compute_plane(Facet& f) {
        const std::int32_t a = f.v[0], b = f.v[1], c = f.v[2];
        const long double abx = px[b] - px[a], aby = py[b] - py[a],
                          abz = static_cast<long double>(pz[b]) - pz[a];
        const long double acx = px[c] - px[a], acy = py[c] - py[a],
                          acz = static_cast<long double>(pz[c]) - pz[a];
        long double nx = aby * acz - abz * acy;
        long double ny = abz * acx - abx * acz;
        long double nz = abx * acy - aby * acx;
        long double off = -(nx * px[a] + ny * py[a] + nz * pz[a]);
        // outward: interior reference must be on the negative side
        const long double side = nx * cx + ny * cy + nz * cz + off;
        if (side > 0.0L) {
            std::swap(f.v[1], f.v[2]);
            nx = -nx;
            ny = -ny;
            nz = -nz;
            off = -off;
        }
        f.nx = static_cast<double>(nx);
        f.ny = static_cast<double>(ny);
        f.nz = static_cast<double>(nz);
        f.off = static_cast<double>(off);
        f.eps = 1e-13 * (std::abs(f.nx) * max_abs_x + std::abs(f.ny) * max_abs_y +
                         std::abs(f.nz) * max_abs_z + std::abs(f.off)) +
                1e-300;
    }

    std::int32_t alloc_facet() {
        if (!free_slots.empty()) {
            const std::int32_t id = free_slots.back();
            free_slots.pop_back();
            facets[id] = Facet{};
            return id;
        }
        facets.emplace_back();
        return static_cast<std::int32_t>(facets.size()) - 1;
    }

    void push_outside(std::int32_t fid, std::int32_t p) {
        Facet& f = facets[fid];
        const double d = sd(f, p);
        next[p] = f.head;
        f.head = p;
        if (d > f.far_d || (d == f.far_d && (f.far_pt < 0 || p < f.far_pt))) {
            f.far_d = d;
            f.far_pt = p;
        }
    }

    // assign p to the first facet (in `candidates`) that sees it; returns
    // false if p is inside all of them
    bool assign(std::int32_t p, const std::vector<std::int32_t>& candidates) {
        for (std::int32_t fid : candidates) {
            Facet& f = facets[fid];
            if (f.dead) continue;
            if (sd(f, p) > f.eps) {
                push_outside(fid, p);
                return true;
            }
        }
        return false;
    }
};

// Exact integer row rasterization of a lattice triangle; calls fn(ix, iy).
template <typename Fn>
void rasterize_triangle(const std::array<std::int64_t, 2>& A, const std::array<std::int64_t, 2>& B,
                        const std::array<std::int64_t, 2>& C, Fn&& fn) {
    const std::int64_t ymin = std::min({A[1], B[1], C[1]});
    const std::int64_t ymax = std::max({A[1], B[1], C[1]});
    const std::int64_t xmin = std::min({A[0], B[0], C[0]});
    const std::int64_t xmax = std::max({A[0], B[0], C[0]});
    const std::array<std::int64_t, 2> V[3] = {A, B, C};
    for (std::int64_t iy = ymin; iy <= ymax; ++iy) {
        std::int64_t lo = xmin, hi = xmax;
        bool empty = false;
        for (int e = 0; e < 3 && !empty; ++e) {
            const auto& P = V[e];
            const auto& Q = V[(e + 1) % 3];
            const auto& R = V[(e + 2) % 3];  // reference vertex
            // side(ix) = (Qx-Px)(iy-Py) - (Qy-Py)(ix-Px); require same sign as R
            const std::int64_t a = Q[0] - P[0], b = Q[1] - P[1];
            const std::int64_t c0 = a * (iy - P[1]) + b * P[0];  // side = c0 - b*ix
            const std::int64_t ref = a * (R[1] - P[1]) - b * (R[0] - P[0]);
            if (ref > 0) {
                // need c0 - b*ix >= 0
                if (b > 0)
                    hi = std::min(hi, static_cast<std::int64_t>(std::floor(double(c0) / b)));
                else if (b < 0)
                    lo = std::max(lo, static_cast<std::int64_t>(std::ceil(double(c0) / b)));
                else if (c0 < 0)
                    empty = true;
            } else if (ref < 0) {
                // need c0 - b*ix <= 0
                if (b > 0)
                    lo = std::max(lo, static_cast<std::int64_t>(std::ceil(double(c0) / b)));
                else if (b < 0)
                    hi = std::min(hi, static_cast<std::int64_t>(std::floor(double(c0) / b)));
                else if (c0 > 0)
                    empty = true;
            }
            // ref == 0: degenerate triangle, treat the edge as non-restrictive
        }
        if (empty) continue;
        for (std::int64_t ix = lo; ix <= hi; ++ix) fn(ix, iy);
    }
}

std::vector<double> quickhull_2d(const GridDomain& dom, const std::vector<double>& w,
                                 HullInfo& info) {
    const NodeId N = dom.node_count();
    QuickHull qh;
    qh.npts = N;
    qh.px.resize(N);
    qh.py.resize(N);
    qh.pz.resize(N);
    for (NodeId i = 0; i < N; ++i) {
        const LatticeIndex& li = dom.lattice_index(i);
        qh.px[i] = li[0];
        qh.py[i] = li[1];
        qh.pz[i] = w[i];
        qh.max_abs_x = std::max(qh.max_abs_x, std::abs(qh.px[i]));
        qh.max_abs_y = std::max(qh.max_abs_y, std::abs(qh.py[i]));
        qh.max_abs_z = std::max(qh.max_abs_z, std::abs(qh.pz[i]));
    }
    qh.next.assign(N, -1);

    info.node_facet.assign(N, -1);
    info.node_slope.assign(N, Vec{0, 0, 0});
    info.is_vertex.assign(N, 0);
    info.exact = true;
    const double h = dom.spacing();

    std::vector<double> env(N, std::numeric_limits<double>::infinity());

    // rasterize one node-id triangle using the plane through its lifted
    // vertices; shared by the hull path and the degenerate path
    auto emit_facet = [&](std::int32_t a, std::int32_t b, std::int32_t c) {
        info.facets.push_back({a, b, c});
        const std::int32_t fid = static_cast<std::int32_t>(info.facets.size()) - 1;
        const long double ux = qh.px[b] - qh.px[a], uy = qh.py[b] - qh.py[a];
        const long double vx = qh.px[c] - qh.px[a], vy = qh.py[c] - qh.py[a];
        const long double det = ux * vy - uy * vx;
        if (det == 0.0L) return;  // vertical sliver, contributes nothing
        const long double dzb = static_cast<long double>(w[b]) - w[a];
        const long double dzc = static_cast<long double>(w[c]) - w[a];
        const long double gx = (dzb * vy - dzc * uy) / det;
        const long double gy = (dzc * ux - dzb * vx) / det;
        const Vec slope = {static_cast<double>(gx) / h, static_cast<double>(gy) / h, 0.0};
        const std::array<std::int64_t, 2> A = {static_cast<std::int64_t>(qh.px[a]),
                                               static_cast<std::int64_t>(qh.py[a])};
        const std::array<std::int64_t, 2> B = {static_cast<std::int64_t>(qh.px[b]),
                                               static_cast<std::int64_t>(qh.py[b])};
        const std::array<std::int64_t, 2> C = {static_cast<std::int64_t>(qh.px[c]),
                                               static_cast<std::int64_t>(qh.py[c])};
        rasterize_triangle(A, B, C, [&](std::int64_t ix, std::int64_t iy) {
            const NodeId id = dom.node_at({static_cast<std::int32_t>(ix),
                                           static_cast<std::int32_t>(iy), 0});
            if (id < 0) return;
            const double z = static_cast<double>(
                w[a] + gx * (ix - A[0]) + gy * (iy - A[1]));
            if (info.node_facet[id] < 0) {
                env[id] = z;
                info.node_slope[id] = slope;
                info.node_facet[id] = fid;
            } else {
                merge_node_plane(z, slope, fid, env[id], info.node_slope[id],
                                 info.node_facet[id]);
            }
        });
    };

    // --- initial simplex ---------------------------------------------------
    auto lex_less = [&](std::int32_t i, std::int32_t j) {
        if (qh.px[i] != qh.px[j]) return qh.px[i] < qh.px[j];
        if (qh.py[i] != qh.py[j]) return qh.py[i] < qh.py[j];
        if (qh.pz[i] != qh.pz[j]) return qh.pz[i] < qh.pz[j];
        return i < j;
    };
    std::int32_t p0 = 0, p1 = 0;
    for (std::int32_t i = 1; i < N; ++i) {
        if (lex_less(i, p0)) p0 = i;
        if (lex_less(p1, i)) p1 = i;
    }
    // farthest from the p0-p1 line
    std::int32_t p2 = -1;
    double best2 = 0.0;
    {
        const double dx = qh.px[p1] - qh.px[p0], dy = qh.py[p1] - qh.py[p0],
                     dz = qh.pz[p1] - qh.pz[p0];
        const double dd = dx * dx + dy * dy + dz * dz;
        for (std::int32_t i = 0; i < N; ++i) {
            const double ex = qh.px[i] - qh.px[p0], ey = qh.py[i] - qh.py[p0],
                         ez = qh.pz[i] - qh.pz[p0];
            const double t = (ex * dx + ey * dy + ez * dz) / dd;
            const double rx = ex - t * dx, ry = ey - t * dy, rz = ez - t * dz;
            const double r2 = rx * rx + ry * ry + rz * rz;
            if (r2 > best2) {
                best2 = r2;
                p2 = i;
            }
        }
    }
    // farthest from the p0-p1-p2 plane
    std::int32_t p3 = -1;
    double best3 = 0.0;
    long double pnx = 0, pny = 0, pnz = 0, poff = 0;
    if (p2 >= 0) {
        const long double abx = qh.px[p1] - qh.px[p0], aby = qh.py[p1] - qh.py[p0],
                          abz = static_cast<long double>(qh.pz[p1]) - qh.pz[p0];
        const long double acx = qh.px[p2] - qh.px[p0], acy = qh.py[p2] - qh.py[p0],
                          acz = static_cast<long double>(qh.pz[p2]) - qh.pz[p0];
        pnx = aby * acz - abz * acy;
        pny = abz * acx - abx * acz;
        pnz = abx * acy - aby * acx;
        poff = -(pnx * qh.px[p0] + pny * qh.py[p0] + pnz * qh.pz[p0]);
        const long double nn = std::sqrt(static_cast<double>(pnx * pnx + pny * pny + pnz * pnz));
        for (std::int32_t i = 0; i < N; ++i) {
            const double d = static_cast<double>(
                std::abs(pnx * qh.px[i] + pny * qh.py[i] + pnz * qh.pz[i] + poff) / nn);
            if (d > best3) {
                best3 = d;
                p3 = i;
            }
        }
    }

    const double z_span = qh.max_abs_z;
    const bool degenerate =
        p2 < 0 || p3 < 0 ||
        best3 <= 1e-13 * (qh.max_abs_x + qh.max_abs_y + z_span);

    if (degenerate) {
        // all points affine: the envelope is the interpolating plane
        if (p2 < 0) {
            // collinear in the lift; cannot happen for 2-D ball domains
            env = w;
            for (NodeId i = 0; i < N; ++i) info.node_facet[i] = 0;
            info.facets.push_back({p0, p1, p1});
            return env;
        }
        emit_facet(p0, p1, p2);
        for (NodeId i = 0; i < N; ++i) {
            if (info.node_facet[i] >= 0) continue;  // covered by the triangle
            // evaluate the plane directly
            const long double z = -(pnx * qh.px[i] + pny * qh.py[i] + poff) / pnz;
            env[i] = static_cast<double>(z);
            info.node_slope[i] = info.node_slope[p0];
            info.node_facet[i] = 0;
        }
        info.is_vertex[p0] = info.is_vertex[p1] = info.is_vertex[p2] = 1;
        return env;
    }

    qh.cx = 0.25 * (qh.px[p0] + qh.px[p1] + qh.px[p2] + qh.px[p3]);
    qh.cy = 0.25 * (qh.py[p0] + qh.py[p1] + qh.py[p2] + qh.py[p3]);
    qh.cz = 0.25 * (qh.pz[p0] + qh.pz[p1] + qh.pz[p2] + qh.pz[p3]);

    auto wire_edges = [&](const std::vector<std::int32_t>& fids) {
        // link neighbor slots among the given facets by shared undirected edge
        std::unordered_map<std::int64_t, std::pair<std::int32_t, int>> edges;
        edges.reserve(fids.size() * 3);
        for (std::int32_t fid : fids) {
            QuickHull::Facet& f = qh.facets[fid];
            for (int k = 0; k < 3; ++k) {
                const std::int64_t a = f.v[k], b = f.v[(k + 1) % 3];
                const std::int64_t key = (std::min(a, b) << 32) | std::max(a, b);
                auto it = edges.find(key);
                if (it == edges.end()) {
                    edges.emplace(key, std::make_pair(fid, k));
                } else {
                    f.nbr[k] = it->second.first;
                    qh.facets[it->second.first].nbr[it->second.second] = fid;
                }
            }
        }
    };

    {
        std::vector<std::int32_t> init;
        const std::int32_t tris[4][3] = {
            {p0, p1, p2}, {p0, p1, p3}, {p0, p2, p3}, {p1, p2, p3}};
        for (auto& t : tris) {
            const std::int32_t fid = qh.alloc_facet();
            QuickHull::Facet& f = qh.facets[fid];
            f.v[0] = t[0];
            f.v[1] = t[1];
            f.v[2] = t[2];
            f.nbr[0] = f.nbr[1] = f.nbr[2] = -1;
            qh.compute_plane(f);
            init.push_back(fid);
        }
        wire_edges(init);
        for (std::int32_t p = 0; p < N; ++p) {
            if (p == p0 || p == p1 || p == p2 || p == p3) continue;
            qh.assign(p, init);
        }
        for (std::int32_t fid : init)
            if (qh.facets[fid].head >= 0) qh.stack.push_back(fid);
    }

    qh.mark.assign(qh.facets.capacity() + 16, 0);

    // --- incremental insertion ---------------------------------------------
    while (!qh.stack.empty()) {
        const std::int32_t fid = qh.stack.back();
        qh.stack.pop_back();
        if (fid >= static_cast<std::int32_t>(qh.facets.size())) continue;
        QuickHull::Facet& f0 = qh.facets[fid];
        if (f0.dead || f0.head < 0) continue;
        const std::int32_t apex = f0.far_pt;

        // visible region (BFS) and its horizon
        ++qh.epoch;
        if (qh.mark.size() < qh.facets.size() + 8) qh.mark.resize(qh.facets.size() * 2 + 16, 0);
        qh.visible.clear();
        qh.horizon_f.clear();
        qh.horizon_s.clear();
        std::vector<std::int32_t>& bfs = qh.fresh;  // reuse scratch
        bfs.clear();
        bfs.push_back(fid);
        qh.mark[fid] = qh.epoch;
        while (!bfs.empty()) {
            const std::int32_t cur = bfs.back();
            bfs.pop_back();
            qh.visible.push_back(cur);
            for (int k = 0; k < 3; ++k) {
                const std::int32_t nb = qh.facets[cur].nbr[k];
                if (nb < 0 || qh.mark[nb] == qh.epoch) continue;
                QuickHull::Facet& fn = qh.facets[nb];
                if (qh.sd(fn, apex) > fn.eps) {
                    qh.mark[nb] = qh.epoch;
                    bfs.push_back(nb);
                } else {
                    // horizon edge seen from the visible side: record on the
                    // outside facet, slot of the shared edge
                    int slot = -1;
                    for (int m = 0; m < 3; ++m)
                        if (fn.nbr[m] == cur) slot = m;
                    qh.horizon_f.push_back(nb);
                    qh.horizon_s.push_back(slot);
                }
            }
        }

        // deduplicate horizon entries (an outside facet can border several
        // visible facets through different slots; pairs are unique already,
        // but the same pair may be pushed twice via different BFS paths)
        {
            std::vector<std::pair<std::int32_t, std::int32_t>> uniq;
            uniq.reserve(qh.horizon_f.size());
            for (std::size_t i = 0; i < qh.horizon_f.size(); ++i)
                uniq.emplace_back(qh.horizon_f[i], qh.horizon_s[i]);
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            qh.horizon_f.clear();
            qh.horizon_s.clear();
            for (auto& e : uniq) {
                qh.horizon_f.push_back(e.first);
                qh.horizon_s.push_back(e.second);
            }
        }

        // new facets: apex + each horizon edge
        std::vector<std::int32_t> created;
        created.reserve(qh.horizon_f.size());
        for (std::size_t e = 0; e < qh.horizon_f.size(); ++e) {
            const std::int32_t g = qh.horizon_f[e];
            const int slot = qh.horizon_s[e];
            QuickHull::Facet& fg = qh.facets[g];
            const std::int32_t a = fg.v[slot], b = fg.v[(slot + 1) % 3];
            const std::int32_t nid = qh.alloc_facet();
            QuickHull::Facet& nf = qh.facets[nid];
            nf.v[0] = apex;
            nf.v[1] = b;
            nf.v[2] = a;
            nf.nbr[0] = nf.nbr[1] = nf.nbr[2] = -1;
            qh.compute_plane(nf);
            // wire across the horizon edge
            int myslot = -1;
            for (int k = 0; k < 3; ++k) {
                const std::int32_t va = nf.v[k], vb = nf.v[(k + 1) % 3];
                if ((va == a && vb == b) || (va == b && vb == a)) myslot = k;
            }
            nf.nbr[myslot] = g;
            qh.facets[g].nbr[slot] = nid;
            created.push_back(nid);
        }
        // wire apex-incident edges among the new facets
        {
            std::unordered_map<std::int64_t, std::pair<std::int32_t, int>> edges;
            edges.reserve(created.size() * 2);
            for (std::int32_t nid : created) {
                QuickHull::Facet& nf = qh.facets[nid];
                for (int k = 0; k < 3; ++k) {
                    if (nf.nbr[k] >= 0) continue;
                    const std::int64_t a = nf.v[k], b = nf.v[(k + 1) % 3];
                    const std::int64_t key = (std::min(a, b) << 32) | std::max(a, b);
                    auto it = edges.find(key);
                    if (it == edges.end()) {
                        edges.emplace(key, std::make_pair(nid, k));
                    } else {
                        nf.nbr[k] = it->second.first;
                        qh.facets[it->second.first].nbr[it->second.second] = nid;
                    }
                }
            }
        }

        // redistribute outside points of the dead region
        for (std::int32_t dead_id : qh.visible) {
            QuickHull::Facet& df = qh.facets[dead_id];
            std::int32_t p = df.head;
            while (p >= 0) {
                const std::int32_t nxt = qh.next[p];
                if (p != apex) qh.assign(p, created);
                p = nxt;
            }
            df.dead = 1;
            df.head = -1;
            qh.free_slots.push_back(dead_id);
        }
        for (std::int32_t nid : created)
            if (qh.facets[nid].head >= 0) qh.stack.push_back(nid);
    }

    // --- extract and evaluate downward facets -------------------------------
    for (const auto& f : qh.facets) {
        if (f.dead) continue;
        const double nn = std::sqrt(f.nx * f.nx + f.ny * f.ny + f.nz * f.nz);
        if (!(f.nz < -1e-12 * nn)) continue;
        emit_facet(f.v[0], f.v[1], f.v[2]);
        info.is_vertex[f.v[0]] = info.is_vertex[f.v[1]] = info.is_vertex[f.v[2]] = 1;
    }
    for (NodeId i = 0; i < N; ++i) {
        if (info.is_vertex[i]) env[i] = w[i];
        if (info.node_facet[i] < 0) {
            ++info.uncovered;
            env[i] = w[i];
        }
    }
    return env;
}

// ---------------------------------------------------------------------------
// n = 3: chord relaxation along 13 lattice lines
// ---------------------------------------------------------------------------

std::vector<double> relax_3d(const GridDomain& dom, const std::vector<double>& w, HullInfo& info) {
    static const LatticeIndex dirs[13] = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
        {1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1},
        {1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}};
    const NodeId N = dom.node_count();
    std::vector<double> env = w;

    // neighbor table: 26 entries per node
    std::vector<NodeId> nbr(static_cast<std::size_t>(N) * 26);
    for (NodeId i = 0; i < N; ++i) {
        const LatticeIndex li = dom.lattice_index(i);
        for (int d = 0; d < 13; ++d) {
            LatticeIndex a = li, b = li;
            for (int c = 0; c < 3; ++c) {
                a[c] += dirs[d][c];
                b[c] -= dirs[d][c];
            }
            nbr[static_cast<std::size_t>(i) * 26 + 2 * d] = dom.node_at(a);
            nbr[static_cast<std::size_t>(i) * 26 + 2 * d + 1] = dom.node_at(b);
        }
    }

    const long max_sweeps = 50000;
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_update = 0.0;
        auto pass = [&](NodeId begin, NodeId end, int stepdir) {
            for (NodeId i = begin; i != end; i += stepdir) {
                const std::size_t base = static_cast<std::size_t>(i) * 26;
                double v = env[i];
                for (int d = 0; d < 13; ++d) {
                    const NodeId a = nbr[base + 2 * d], b = nbr[base + 2 * d + 1];
                    if (a < 0 || b < 0) continue;
                    const double chord = 0.5 * (env[a] + env[b]);
                    if (chord < v) v = chord;
                }
                if (v < env[i]) {
                    max_update = std::max(max_update, env[i] - v);
                    env[i] = v;
                }
            }
        };
        pass(0, N, 1);
        pass(N - 1, -1, -1);
        if (max_update < 1e-10) break;
    }

    info.exact = false;
    info.node_facet.assign(N, -1);
    info.is_vertex.assign(N, 0);
    info.node_slope.assign(N, Vec{0, 0, 0});
    const double h = dom.spacing();
    for (NodeId i = 0; i < N; ++i) {
        // min-magnitude one-sided difference per axis (a subgradient choice)
        Vec s{0, 0, 0};
        for (int axis = 0; axis < 3; ++axis) {
            const NodeId a = dom.neighbor(i, axis, +1);
            const NodeId b = dom.neighbor(i, axis, -1);
            const double fwd = a >= 0 ? (env[a] - env[i]) / h : std::numeric_limits<double>::infinity();
            const double bwd = b >= 0 ? (env[i] - env[b]) / h : -std::numeric_limits<double>::infinity();
            // subgradient interval [bwd, fwd]; take the element closest to 0
            double g = 0.0;
            if (bwd > 0.0)
                g = bwd;
            else if (fwd < 0.0)
                g = fwd;
            s[axis] = std::isfinite(g) ? g : 0.0;
        }
        info.node_slope[i] = s;
    }
    return env;
}

}  // namespace

std::vector<double> lower_envelope(const GridDomain& dom, const std::vector<double>& lifted,
                                   HullInfo& info) {
    info = HullInfo{};
    switch (dom.dim()) {
        case 1: return chain_1d(dom, lifted, info);
        case 2: return quickhull_2d(dom, lifted, info);
        case 3: return relax_3d(dom, lifted, info);
        default: throw std::invalid_argument("lower_envelope: unsupported dimension");
    }
}

}  // namespace parab
