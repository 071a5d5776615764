#pragma once

#include "parab/envelope.hpp"
#include "parab/geometry.hpp"

namespace parab {

inline constexpr double kDefaultMeasureSlack = 0.1;

/// A paraboloid of opening -new_opening tangent from below to Gamma^a at a
/// source node, plus its vertex in the normalized (lifted) frame of the
/// expanding-measure lemma.
struct TangentParaboloid {
    NodeId source = -1;
    Paraboloid parab;
    Vec vertex = {0, 0, 0};
};

/// Tangent paraboloids of opening -new_opening to the envelope on F, built
/// from the stored hull subgradients. Requires new_opening > e.a; F is
/// intersected with the interior nodes.
std::vector<TangentParaboloid> tangent_paraboloids(const EnvelopeResult& e, const ContactSet& F,
                                                   double new_opening);

struct SlideResult {
    NodeId source = -1;
    Paraboloid parab;
    double t = 0.0;
    std::vector<NodeId> contact;  // all argmin nodes within the tie tolerance
    bool interior = true;         // no contact node boundary-adjacent
};

/// Slide P up until P + t touches u from below: t = min(u - P) over all
/// nodes, contact nodes within tie tolerance 1e-12 * scale. Exact scan.
SlideResult slide_up(const GridFunction& u, const Paraboloid& P);

/// Same result as slide_up per entry, but walking the hull of the lifted
/// function u + (b/2)|x|^2 (env_b = a_envelope(u, b) with b matching the
/// paraboloid openings). Falls back to exact scans without an exact hull.
std::vector<SlideResult> slide_up_batch(const GridFunction& u, const EnvelopeResult& env_b,
                                        const std::vector<TangentParaboloid>& tps);

/// Cell-coverage measure of a vertex cloud: vertices snapped to lattice
/// cells of side h, occupied cells times h^n.
double vertex_cell_measure(const DomainPtr& dom, const std::vector<TangentParaboloid>& tps);

struct MeasureReport {
    double a = 0.0;
    double lambda = 1.0;
    double F_measure = 0.0;
    double E_measure = 0.0;
    double V_measure = 0.0;
    double increment = 0.0;  // |A_2a \ A_a|, intersected with the restrict ball if given
    double bound = 0.0;      // 2^{-1} (2 n lambda)^{1-n} |F|
    double slack = kDefaultMeasureSlack;
    bool pass = false;            // increment >= bound * (1 - slack)
    bool precondition_ok = true;  // no contact in the boundary band (E cc Omega)
    bool restrict_ok = true;      // all contacts inside the restrict ball
    int interior_violations = 0;
    long slides = 0;
    long contacts_in_a0 = 0;      // new-contact audit vs A_0(u), expect 0
    long contacts_in_a_base = 0;  // vs A_a(u), expect 0
    long e_outside_a2a = 0;       // contacts missing from A_{2a}(u), expect 0
    double max_contact_radius = 0.0;  // max |contact - center| over all slides
    double restrict_radius = 0.0;
};

/// Lemma-style measure estimate: tangent paraboloids of opening -2a to
/// Gamma^a on F, slid up to u; reports |F|, |E|, |V|, |A_2a \ A_a| and the
/// bound. F is intersected with the interior non-contact nodes first. A
/// positive restrict_radius restricts the counted increment to that ball
/// (and requires the contacts to land inside it).
MeasureReport measure_estimate(const GridFunction& u, double a, double lambda,
                               const ContactSet& F, double restrict_radius = 0.0,
                               EnvelopeCache* cache = nullptr,
                               double slack = kDefaultMeasureSlack);

}  // namespace parab
