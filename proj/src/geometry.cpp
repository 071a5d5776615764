#include "parab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parab {

std::shared_ptr<const GridDomain> GridDomain::make_ball(int n, double radius, double h,
                                                        int band_m, const Vec& center) {
    if (n < 1 || n > 3) throw std::invalid_argument("make_ball_domain: n must be 1, 2, or 3");
    if (!(radius > 0.0)) throw std::invalid_argument("make_ball_domain: radius must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("make_ball_domain: h must be positive");
    if (band_m < 1) throw std::invalid_argument("make_ball_domain: band width must be >= 1");
    // too coarse to have interior nodes (radius/4 at the default band width)
    if (h > radius / (2.0 * band_m))
        throw std::invalid_argument("make_ball_domain: h too coarse for interior nodes");

    auto dom = std::shared_ptr<GridDomain>(new GridDomain());
    dom->n_ = n;
    dom->h_ = h;
    dom->radius_ = radius;
    dom->center_ = center;
    dom->band_m_ = band_m;
    dom->cell_measure_ = std::pow(h, n);

    const double s = radius / h;
    const std::int32_t M = static_cast<std::int32_t>(std::floor(s * (1.0 + 1e-12)));
    const double s2 = s * s * (1.0 + 1e-9);

    for (int d = 0; d < 3; ++d) dom->M_[d] = d < n ? M : 0;
    std::size_t total = 1;
    for (int d = 2; d >= 0; --d) {
        dom->stride_[d] = 2 * static_cast<std::size_t>(dom->M_[d]) + 1;
        total *= dom->stride_[d];
    }
    dom->grid_.assign(total, -1);

    const std::int32_t lo1 = -dom->M_[0], hi1 = dom->M_[0];
    const std::int32_t lo2 = -dom->M_[1], hi2 = dom->M_[1];
    const std::int32_t lo3 = -dom->M_[2], hi3 = dom->M_[2];
    const double band = band_m * h;
    const double fudge = 1e-12 * std::max(1.0, radius);

    for (std::int32_t i1 = lo1; i1 <= hi1; ++i1)
        for (std::int32_t i2 = lo2; i2 <= hi2; ++i2)
            for (std::int32_t i3 = lo3; i3 <= hi3; ++i3) {
                const double r2 = double(i1) * i1 + double(i2) * i2 + double(i3) * i3;
                if (r2 > s2) continue;
                const NodeId id = static_cast<NodeId>(dom->idx_.size());
                dom->idx_.push_back({i1, i2, i3});
                const double dist = radius - h * std::sqrt(r2);
                const bool interior = dist + fudge >= band;
                dom->interior_.push_back(interior ? 1 : 0);
                if (interior) ++dom->interior_count_;
                std::size_t flat = 0;
                const LatticeIndex li = {i1, i2, i3};
                for (int d = 0; d < 3; ++d)
                    flat = flat * dom->stride_[d] + static_cast<std::size_t>(li[d] + dom->M_[d]);
                dom->grid_[flat] = id;
            }

    return dom;
}

GridFunction::GridFunction(DomainPtr dom, std::vector<double> values)
    : dom_(std::move(dom)), values_(std::move(values)) {
    if (!dom_) throw std::invalid_argument("GridFunction: null domain");
    if (static_cast<NodeId>(values_.size()) != dom_->node_count())
        throw std::invalid_argument("GridFunction: value count does not match domain");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction::GridFunction(DomainPtr dom, const std::function<double(const Vec&)>& f)
    : dom_(std::move(dom)) {
    if (!dom_) throw std::invalid_argument("GridFunction: null domain");
    values_.resize(dom_->node_count());
    for (NodeId id = 0; id < dom_->node_count(); ++id) {
        values_[id] = f(dom_->point(id));
        if (!std::isfinite(values_[id]))
            throw std::invalid_argument("GridFunction: sampled non-finite value");
    }
}

double GridFunction::max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values_) m = std::max(m, v);
    return m;
}

double GridFunction::min() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : values_) m = std::min(m, v);
    return m;
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

ContactSet::ContactSet(DomainPtr dom) : dom_(std::move(dom)) {
    if (!dom_) throw std::invalid_argument("ContactSet: null domain");
    mask_.assign(dom_->node_count(), 0);
}

ContactSet::ContactSet(DomainPtr dom, std::vector<std::uint8_t> mask)
    : dom_(std::move(dom)), mask_(std::move(mask)) {
    if (!dom_) throw std::invalid_argument("ContactSet: null domain");
    if (static_cast<NodeId>(mask_.size()) != dom_->node_count())
        throw std::invalid_argument("ContactSet: mask size does not match domain");
    for (std::uint8_t b : mask_) count_ += b ? 1 : 0;
}

void ContactSet::set(NodeId id, bool on) {
    const bool was = mask_[id] != 0;
    if (was == on) return;
    mask_[id] = on ? 1 : 0;
    count_ += on ? 1 : -1;
}

ContactSet ContactSet::complement() const {
    std::vector<std::uint8_t> m(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) m[i] = mask_[i] ? 0 : 1;
    return ContactSet(dom_, std::move(m));
}

ContactSet ContactSet::intersect(const ContactSet& other) const {
    std::vector<std::uint8_t> m(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) m[i] = (mask_[i] && other.mask_[i]) ? 1 : 0;
    return ContactSet(dom_, std::move(m));
}

ContactSet ContactSet::set_minus(const ContactSet& other) const {
    std::vector<std::uint8_t> m(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) m[i] = (mask_[i] && !other.mask_[i]) ? 1 : 0;
    return ContactSet(dom_, std::move(m));
}

bool ContactSet::subset_of(const ContactSet& other) const {
    for (std::size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i] && !other.mask_[i]) return false;
    return true;
}

ContactSet ball_mask(const DomainPtr& dom, double r, const Vec& c) {
    std::vector<std::uint8_t> m(dom->node_count());
    const double r2 = r * r * (1.0 + 1e-12);
    for (NodeId id = 0; id < dom->node_count(); ++id)
        m[id] = norm2(dom->point(id) - c) <= r2 ? 1 : 0;
    return ContactSet(dom, std::move(m));
}

ContactSet interior_mask(const DomainPtr& dom) {
    std::vector<std::uint8_t> m(dom->node_count());
    for (NodeId id = 0; id < dom->node_count(); ++id) m[id] = dom->is_interior(id) ? 1 : 0;
    return ContactSet(dom, std::move(m));
}

ContactSet mask_where(const DomainPtr& dom, const std::function<bool(const Vec&)>& pred) {
    std::vector<std::uint8_t> m(dom->node_count());
    for (NodeId id = 0; id < dom->node_count(); ++id) m[id] = pred(dom->point(id)) ? 1 : 0;
    return ContactSet(dom, std::move(m));
}

}  // namespace parab
