#pragma once

#include <vector>

#include "tasep/common.hpp"
#include "tasep/particle_system.hpp"

namespace tasep {

/// Interface height over a site window: increments h(x+1) - h(x) = 1 - 2 eta(x),
/// anchored so that h(0) = 0 in the state given at construction.  A jump at x
/// (particle moves x -> x+1) turns the local valley into a mountain and raises
/// h(x+1) by 2; the anchor at the left edge is untouched by jumps inside the
/// window, so heights stay consistent as the state evolves.
class HeightFunction {
  public:
    HeightFunction(std::vector<int> occupations, long long left_site)
        : eta_(std::move(occupations)), left_(left_site) {
        require(!eta_.empty(), "HeightFunction: empty window");
        for (int e : eta_) require(e == 0 || e == 1, "HeightFunction: occupations must be 0/1");
        long long right = left_ + static_cast<long long>(eta_.size()) - 1;
        require(left_ <= 0 && 0 <= right, "HeightFunction: window must contain the origin");
        // pick h(left) so that h(0) = 0
        long long acc = 0;
        for (long long x = left_; x < 0; ++x) acc += 1 - 2 * eta_at(x);
        h_left_ = -acc;
    }

    long long left_site() const { return left_; }
    long long right_site() const { return left_ + static_cast<long long>(eta_.size()) - 1; }

    int occupation(long long x) const {
        require(x >= left_ && x <= right_site(), "HeightFunction: site outside window");
        return eta_at(x);
    }

    /// h(x) for x in [left_site, right_site + 1].
    long long value(long long x) const {
        require(x >= left_ && x <= right_site() + 1, "HeightFunction: site outside window");
        long long h = h_left_;
        for (long long y = left_; y < x; ++y) h += 1 - 2 * eta_at(y);
        return h;
    }

    /// Apply a jump x -> x+1; both sites must lie in the window.
    void apply_jump(long long x) {
        require(x >= left_ && x + 1 <= right_site(), "HeightFunction: jump outside window");
        require(eta_at(x) == 1 && eta_at(x + 1) == 0, "HeightFunction: jump not allowed here");
        eta_[static_cast<std::size_t>(x - left_)] = 0;
        eta_[static_cast<std::size_t>(x + 1 - left_)] = 1;
    }

  private:
    int eta_at(long long x) const { return eta_[static_cast<std::size_t>(x - left_)]; }

    std::vector<int> eta_;
    long long left_;
    long long h_left_;
};

/// Height profile of a particle state over [site_lo, site_hi], anchored at
/// h(0) = 0 for that state.
inline HeightFunction height_of(const ParticleSystem& ps, long long site_lo,
                                long long site_hi) {
    return HeightFunction(occupations(ps, site_lo, site_hi), site_lo);
}

}  // namespace tasep
