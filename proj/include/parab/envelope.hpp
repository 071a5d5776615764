#pragma once

#include <limits>
#include <map>
#include <memory>

#include "parab/geometry.hpp"
#include "parab/hull.hpp"

namespace parab {

/// Contact tolerance: a paraboloid of opening a deviates from its chords by
/// a h^2/8 per cell, so membership is tested at c_tau (a + scale) h^2.
inline constexpr double kContactTauCoeff = 2.0;

inline double contact_tolerance(double a, double h, double u_scale = 1.0) {
    return kContactTauCoeff * (a + u_scale) * h * h;
}

/// a-convex envelope of a grid function together with its contact set.
struct EnvelopeResult {
    std::shared_ptr<const GridFunction> input;
    double a = 0.0;
    double tau = 0.0;
    GridFunction gamma;
    ContactSet contact;
    std::shared_ptr<const HullInfo> hull;
};

/// Largest convex function below the sampled graph (lower facet of the hull
/// of the lifted node cloud), with contact set at tolerance tau(0).
EnvelopeResult convex_envelope(const GridFunction& v, double tau_u_scale = 1.0);

/// Gamma^a_v = convex_envelope(v + (a/2)|x|^2) - (a/2)|x|^2, a >= 0.
/// tau_u_scale rescales the contact tolerance for inputs scaled by a constant
/// (keeps contact sets covariant under u -> s u, a -> s a).
EnvelopeResult a_envelope(const GridFunction& v, double a, double tau_u_scale = 1.0);
EnvelopeResult a_envelope(std::shared_ptr<const GridFunction> v, double a,
                          double tau_u_scale = 1.0);

/// The contact set {v - Gamma <= tau} over interior nodes.
const ContactSet& contact_set(const EnvelopeResult& e);

/// Smallest opening a such that a paraboloid of opening -a touches u from
/// below, per interior node. infinity() marks nodes with no tangent
/// paraboloid up to the cap.
struct ThetaField {
    DomainPtr dom;
    std::vector<double> value;  // indexed by node id; NaN at non-interior nodes
    double a_cap = 0.0;
    double rel_tol = 0.0;

    double operator[](NodeId id) const { return value[id]; }
    static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }
};

/// Contact-set membership cache shared across theta bisections (and reusable
/// by the experiment drivers). Keyed by the opening value.
class EnvelopeCache {
public:
    EnvelopeCache(std::shared_ptr<const GridFunction> u, double tau_u_scale = 1.0)
        : u_(std::move(u)), tau_scale_(tau_u_scale) {}

    const EnvelopeResult& at(double a);
    const GridFunction& input() const { return *u_; }
    double tau_scale() const { return tau_scale_; }
    std::size_t size() const { return cache_.size(); }
    void drop(double a) { cache_.erase(a); }

private:
    std::shared_ptr<const GridFunction> u_;
    double tau_scale_;
    std::map<double, std::shared_ptr<const EnvelopeResult>> cache_;
};

/// Per-node monotone bisection on contact-set membership. a_cap > 0 fixes a
/// common bracket [0, a_cap]; a_cap <= 0 selects per-node caps
/// 64 osc(u) / dist(x, boundary)^2 (clamped to [1, 2^20]), grown on demand.
/// The returned value is the bracket's upper endpoint once the relative
/// width drops below rel_tol.
ThetaField theta(const GridFunction& u, double a_cap, double rel_tol, double tau_u_scale = 1.0,
                 EnvelopeCache* cache = nullptr);

/// u_delta(x) = min_y (u(y) + |x - y|^2 / (2 delta)), exact on the lattice
/// via per-axis parabola envelopes.
GridFunction inf_convolution(const GridFunction& u, double delta);

}  // namespace parab
