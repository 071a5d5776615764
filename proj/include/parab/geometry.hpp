#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace parab {

// Points and lattice indices live in R^3 with unused trailing components
// fixed to zero, so dot products and norms never need the dimension.
using Vec = std::array<double, 3>;
using LatticeIndex = std::array<std::int32_t, 3>;
using NodeId = std::int32_t;

inline double dot(const Vec& a, const Vec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator*(double s, const Vec& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// Quadratic P(x) = (opening/2)|x|^2 + slope.x + offset.
struct Paraboloid {
    double opening = 0.0;
    Vec slope = {0.0, 0.0, 0.0};
    double offset = 0.0;

    double eval(const Vec& x) const {
        return 0.5 * opening * norm2(x) + dot(slope, x) + offset;
    }

    /// Stationary point -slope/opening; requires opening != 0.
    Vec vertex() const {
        if (opening == 0.0) throw std::domain_error("Paraboloid::vertex: opening is zero");
        return (-1.0 / opening) * slope;
    }
};

inline double eval_paraboloid(const Paraboloid& p, const Vec& x) { return p.eval(x); }

/// Lattice discretization of a closed ball. Nodes are stored by integer
/// lattice index; coordinates derive from (center, h) on demand. A node is
/// boundary-adjacent when its distance to the sphere is < band_m * h,
/// interior otherwise. Immutable after construction.
class GridDomain {
public:
    static std::shared_ptr<const GridDomain> make_ball(int n, double radius, double h,
                                                       int band_m = 2,
                                                       const Vec& center = {0.0, 0.0, 0.0});

    int dim() const { return n_; }
    double spacing() const { return h_; }
    double radius() const { return radius_; }
    const Vec& center() const { return center_; }
    int band_width() const { return band_m_; }

    NodeId node_count() const { return static_cast<NodeId>(idx_.size()); }
    const LatticeIndex& lattice_index(NodeId id) const { return idx_[id]; }

    Vec point(NodeId id) const {
        const LatticeIndex& i = idx_[id];
        return {center_[0] + h_ * i[0], center_[1] + h_ * i[1], center_[2] + h_ * i[2]};
    }

    bool is_interior(NodeId id) const { return interior_[id] != 0; }
    NodeId interior_count() const { return interior_count_; }

    /// Node id at a lattice index, or -1 if no node there.
    NodeId node_at(const LatticeIndex& i) const {
        for (int d = 0; d < 3; ++d)
            if (i[d] < -M_[d] || i[d] > M_[d]) return -1;
        std::size_t flat = 0;
        for (int d = 0; d < 3; ++d) flat = flat * stride_[d] + static_cast<std::size_t>(i[d] + M_[d]);
        return grid_[flat];
    }

    NodeId neighbor(NodeId id, int axis, int step) const {
        LatticeIndex i = idx_[id];
        i[axis] += step;
        return node_at(i);
    }

    /// h^n, the measure one node accounts for.
    double cell_measure() const { return cell_measure_; }
    /// Total measure, node count times h^n.
    double measure() const { return cell_measure_ * node_count(); }

    /// Distance from a node to the bounding sphere.
    double boundary_distance(NodeId id) const { return radius_ - norm(point(id) - center_); }

private:
    GridDomain() = default;

    int n_ = 0;
    double h_ = 0.0;
    double radius_ = 0.0;
    Vec center_ = {0.0, 0.0, 0.0};
    int band_m_ = 2;
    double cell_measure_ = 0.0;
    NodeId interior_count_ = 0;
    std::array<std::int32_t, 3> M_ = {0, 0, 0};
    std::array<std::size_t, 3> stride_ = {1, 1, 1};
    std::vector<LatticeIndex> idx_;
    std::vector<std::uint8_t> interior_;
    std::vector<NodeId> grid_;
};

using DomainPtr = std::shared_ptr<const GridDomain>;

inline DomainPtr make_ball_domain(int n, double radius, double h, int band_m = 2,
                                  const Vec& center = {0.0, 0.0, 0.0}) {
    return GridDomain::make_ball(n, radius, h, band_m, center);
}

/// Real values on the nodes of a GridDomain. The domain association is fixed
/// at construction; values must be finite.
class GridFunction {
public:
    GridFunction(DomainPtr dom, std::vector<double> values);
    GridFunction(DomainPtr dom, const std::function<double(const Vec&)>& f);

    const DomainPtr& domain() const { return dom_; }
    NodeId size() const { return static_cast<NodeId>(values_.size()); }
    double operator[](NodeId id) const { return values_[id]; }
    double& operator[](NodeId id) { return values_[id]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double max() const;
    double min() const;
    double sup_norm() const;
    double osc() const { return max() - min(); }

private:
    DomainPtr dom_;
    std::vector<double> values_;
};

/// Boolean node mask with cell-counting measure.
class ContactSet {
public:
    explicit ContactSet(DomainPtr dom);
    ContactSet(DomainPtr dom, std::vector<std::uint8_t> mask);

    const DomainPtr& domain() const { return dom_; }
    bool contains(NodeId id) const { return mask_[id] != 0; }
    void set(NodeId id, bool on);
    const std::vector<std::uint8_t>& mask() const { return mask_; }

    long count() const { return count_; }
    double measure() const { return count_ * dom_->cell_measure(); }

    ContactSet complement() const;
    ContactSet intersect(const ContactSet& other) const;
    ContactSet set_minus(const ContactSet& other) const;
    bool subset_of(const ContactSet& other) const;

private:
    DomainPtr dom_;
    std::vector<std::uint8_t> mask_;
    long count_ = 0;
};

inline double measure(const ContactSet& s) { return s.measure(); }

/// Nodes with |x - c| <= r.
ContactSet ball_mask(const DomainPtr& dom, double r, const Vec& c = {0.0, 0.0, 0.0});
/// All interior (non boundary-adjacent) nodes.
ContactSet interior_mask(const DomainPtr& dom);
/// Nodes satisfying a predicate on coordinates.
ContactSet mask_where(const DomainPtr& dom, const std::function<bool(const Vec&)>& pred);

}  // namespace parab
