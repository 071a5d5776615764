#include "parab/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace parab {

EnvelopeResult a_envelope(std::shared_ptr<const GridFunction> v, double a, double tau_u_scale) {
    if (a < 0.0) throw std::invalid_argument("a_envelope: opening must be >= 0");
    if (!(tau_u_scale > 0.0)) throw std::invalid_argument("a_envelope: tau scale must be positive");
    const DomainPtr dom_ptr = v->domain();
    const auto& dom = *dom_ptr;
    const NodeId N = dom.node_count();

    std::vector<double> lifted(N);
    for (NodeId i = 0; i < N; ++i) lifted[i] = (*v)[i] + 0.5 * a * norm2(dom.point(i));

    auto info = std::make_shared<HullInfo>();
    std::vector<double> env = lower_envelope(dom, lifted, *info);

    // the gap v - Gamma is frame-independent; clamping keeps Gamma <= v exactly
    const double tau = contact_tolerance(a, dom.spacing(), tau_u_scale);
    std::vector<double> gamma(N);
    std::vector<std::uint8_t> mask(N, 0);
    for (NodeId i = 0; i < N; ++i) {
        const double gap = std::max(0.0, lifted[i] - env[i]);
        gamma[i] = (*v)[i] - gap;
        if (dom.is_interior(i) && gap <= tau) mask[i] = 1;
    }

    return EnvelopeResult{std::move(v), a, tau, GridFunction(dom_ptr, std::move(gamma)),
                          ContactSet(dom_ptr, std::move(mask)), std::move(info)};
}

EnvelopeResult a_envelope(const GridFunction& v, double a, double tau_u_scale) {
    return a_envelope(std::make_shared<GridFunction>(v), a, tau_u_scale);
}

EnvelopeResult convex_envelope(const GridFunction& v, double tau_u_scale) {
    return a_envelope(v, 0.0, tau_u_scale);
}

const ContactSet& contact_set(const EnvelopeResult& e) { return e.contact; }

const EnvelopeResult& EnvelopeCache::at(double a) {
    auto it = cache_.find(a);
    if (it == cache_.end()) {
        auto res = std::make_shared<EnvelopeResult>(a_envelope(u_, a, tau_scale_));
        it = cache_.emplace(a, std::move(res)).first;
    }
    return *it->second;
}

// ---------------------------------------------------------------------------
// theta
// ---------------------------------------------------------------------------

namespace {

constexpr double kThetaHardCap = 1048576.0;  // 2^20

// contact masks only, to keep long bisection ladders cheap in memory
class MaskCache {
public:
    MaskCache(const GridFunction& u, double tau_scale, EnvelopeCache* shared)
        : u_(u), tau_scale_(tau_scale), shared_(shared) {}

    const std::vector<std::uint8_t>& at(double a) {
        auto it = masks_.find(a);
        if (it != masks_.end()) return it->second;
        if (shared_) return masks_.emplace(a, shared_->at(a).contact.mask()).first->second;
        EnvelopeResult res = a_envelope(u_, a, tau_scale_);
        return masks_.emplace(a, res.contact.mask()).first->second;
    }

private:
    const GridFunction& u_;
    double tau_scale_;
    EnvelopeCache* shared_;
    std::map<double, std::vector<std::uint8_t>> masks_;
};

}  // namespace

ThetaField theta(const GridFunction& u, double a_cap, double rel_tol, double tau_u_scale,
                 EnvelopeCache* cache) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("theta: rel_tol must be in (0, 1)");
    const auto& dom = *u.domain();
    const NodeId N = dom.node_count();
    const double h = dom.spacing();

    ThetaField field;
    field.dom = u.domain();
    field.rel_tol = rel_tol;
    field.value.assign(N, std::numeric_limits<double>::quiet_NaN());

    MaskCache masks(u, tau_u_scale, cache);

    // per-node bracket caps
    std::vector<double> cap(N, 0.0);
    double top = 0.0;
    const double osc = u.osc();
    for (NodeId i = 0; i < N; ++i) {
        if (!dom.is_interior(i)) continue;
        double c;
        if (a_cap > 0.0) {
            c = a_cap;
        } else {
            const double dist = std::max(dom.boundary_distance(i), h);
            c = std::clamp(64.0 * osc / (dist * dist), 1.0, kThetaHardCap) * tau_u_scale;
        }
        cap[i] = c;
        top = std::max(top, c);
    }
    field.a_cap = a_cap > 0.0 ? a_cap : top;
    if (top <= 0.0) return field;

    // exact members of A_0 carry theta = 0
    const auto& m0 = masks.at(0.0);
    std::vector<NodeId> open;
    for (NodeId i = 0; i < N; ++i) {
        if (!dom.is_interior(i)) continue;
        if (m0[i])
            field.value[i] = 0.0;
        else
            open.push_back(i);
    }

    // descending ladder (factor 4); each open node acquires a bracket
    // [lo, hi] with member(hi) and not member(lo), or an infinity flag at
    // the first ladder level at or below its cap
    std::vector<double> lo(N, 0.0), hi(N, 0.0);
    const double floor_a = h * h * tau_u_scale;
    std::vector<NodeId> descending = open;
    std::vector<NodeId> refine;
    double level = top;
    while (!descending.empty()) {
        const auto& m = masks.at(level);
        std::vector<NodeId> keep;
        keep.reserve(descending.size());
        const bool last_level = level / 4.0 < floor_a;
        for (NodeId i : descending) {
            if (m[i]) {
                hi[i] = level;
                if (last_level)
                    field.value[i] = level;  // below resolution, report the level
                else
                    keep.push_back(i);
            } else if (hi[i] > 0.0) {
                lo[i] = level;
                refine.push_back(i);
            } else if (level <= cap[i] || last_level) {
                field.value[i] = ThetaField::infinity();
            } else {
                keep.push_back(i);
            }
        }
        descending.swap(keep);
        if (last_level) break;
        level /= 4.0;
    }

    // geometric bisection rounds, synchronized so envelope work is shared
    for (int round = 0; round < 64 && !refine.empty(); ++round) {
        std::set<double> mids;
        for (NodeId i : refine) mids.insert(std::sqrt(lo[i] * hi[i]));
        for (double m : mids) masks.at(m);
        std::vector<NodeId> keep;
        keep.reserve(refine.size());
        for (NodeId i : refine) {
            const double mid = std::sqrt(lo[i] * hi[i]);
            if (masks.at(mid)[i])
                hi[i] = mid;
            else
                lo[i] = mid;
            if (hi[i] - lo[i] <= rel_tol * hi[i])
                field.value[i] = hi[i];
            else
                keep.push_back(i);
        }
        refine.swap(keep);
    }
    for (NodeId i : refine) field.value[i] = hi[i];  // bisection cap reached

    return field;
}

// ---------------------------------------------------------------------------
// inf-convolution
// ---------------------------------------------------------------------------

namespace {

// g(k) = min_j f(j) + w (k - j)^2 over one line, lower envelope of parabolas
void parabola_envelope(const std::vector<double>& f, double w, std::vector<double>& g,
                       std::vector<int>& v, std::vector<double>& z) {
    const int m = static_cast<int>(f.size());
    v.resize(m);
    z.resize(m + 1);
    int r = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < m; ++q) {
        double s;
        while (true) {
            const int p = v[r];
            s = ((f[q] + w * q * double(q)) - (f[p] + w * p * double(p))) / (2.0 * w * (q - p));
            if (s <= z[r] && r > 0)
                --r;
            else
                break;
        }
        ++r;
        v[r] = q;
        z[r] = s;
        z[r + 1] = std::numeric_limits<double>::infinity();
    }
    g.resize(m);
    r = 0;
    for (int k = 0; k < m; ++k) {
        while (z[r + 1] < k) ++r;
        const int p = v[r];
        g[k] = f[p] + w * (k - p) * double(k - p);
    }
}

}  // namespace

GridFunction inf_convolution(const GridFunction& u, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("inf_convolution: delta must be positive");
    const auto& dom = *u.domain();
    const double h = dom.spacing();
    const double w = h * h / (2.0 * delta);
    std::vector<double> vals = u.values();

    std::vector<double> line, out;
    std::vector<NodeId> ids;
    std::vector<int> scratch_v;
    std::vector<double> scratch_z;
    for (int axis = 0; axis < dom.dim(); ++axis) {
        for (NodeId i = 0; i < dom.node_count(); ++i) {
            if (dom.neighbor(i, axis, -1) >= 0) continue;  // not a line start
            ids.clear();
            line.clear();
            NodeId cur = i;
            while (cur >= 0) {
                ids.push_back(cur);
                line.push_back(vals[cur]);
                cur = dom.neighbor(cur, axis, +1);
            }
            if (ids.size() == 1) continue;
            parabola_envelope(line, w, out, scratch_v, scratch_z);
            for (std::size_t k = 0; k < ids.size(); ++k) vals[ids[k]] = out[k];
        }
    }
    return GridFunction(u.domain(), std::move(vals));
}

}  // namespace parab
