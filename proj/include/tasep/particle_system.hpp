#pragma once

#include <cstdint>
#include <vector>

#include "tasep/common.hpp"
#include "tasep/random.hpp"

namespace tasep {

/// Exclusion-system state: a contiguous label range [label_min, label_max]
/// with strictly decreasing positions (labels grow rightward to leftward, so
/// particle k+1 sits strictly left of particle k).  The smallest label is the
/// rightmost tracked particle and is treated as unblocked.
class ParticleSystem {
  public:
    ParticleSystem(std::vector<long long> positions, long long label_min)
        : pos_(std::move(positions)), label_min_(label_min) {
        require(!pos_.empty(), "ParticleSystem: empty state");
        for (std::size_t i = 0; i + 1 < pos_.size(); ++i)
            require(pos_[i + 1] < pos_[i], "ParticleSystem: positions must strictly decrease");
    }

    long long label_min() const { return label_min_; }
    long long label_max() const { return label_min_ + static_cast<long long>(pos_.size()) - 1; }
    std::size_t size() const { return pos_.size(); }

    long long position(long long label) const {
        require(label >= label_min() && label <= label_max(),
                "ParticleSystem: label outside tracked range");
        return pos_[static_cast<std::size_t>(label - label_min_)];
    }

    const std::vector<long long>& positions() const { return pos_; }
    std::vector<long long>& positions() { return pos_; }

  private:
    std::vector<long long> pos_;
    long long label_min_;
};

/// Step profile: every site left of the origin filled, x_k(0) = -k.  Labels
/// 1..max_label; exact for any horizon because label 1 has no one ahead.
inline ParticleSystem make_step(long long max_label) {
    require(max_label >= 1, "make_step: need at least one particle");
    std::vector<long long> p(static_cast<std::size_t>(max_label));
    for (long long k = 1; k <= max_label; ++k) p[static_cast<std::size_t>(k - 1)] = -k;
    return ParticleSystem(std::move(p), 1);
}

/// Every second site filled, x_k(0) = -2k for k in [min_label, max_label].
inline ParticleSystem make_alternating(long long min_label, long long max_label) {
    require(min_label <= max_label, "make_alternating: empty label range");
    std::vector<long long> p;
    p.reserve(static_cast<std::size_t>(max_label - min_label + 1));
    for (long long k = min_label; k <= max_label; ++k) p.push_back(-2 * k);
    return ParticleSystem(std::move(p), min_label);
}

/// Every d-th site filled, x_k(0) = -d k, d >= 2.
inline ParticleSystem make_periodic(int d, long long min_label, long long max_label) {
    require(d >= 2, "make_periodic: spacing must be at least 2");
    require(min_label <= max_label, "make_periodic: empty label range");
    std::vector<long long> p;
    p.reserve(static_cast<std::size_t>(max_label - min_label + 1));
    for (long long k = min_label; k <= max_label; ++k) p.push_back(-static_cast<long long>(d) * k);
    return ParticleSystem(std::move(p), min_label);
}

/// Product-Bernoulli(density) occupations on [site_lo, site_hi], drawn from
/// the given seed.  Labels follow the common convention: label 1 is the
/// rightmost particle at or left of ref_site, labels increase leftward.
/// Sites are examined right to left so the draw for a given site depends only
/// on the seed and the window's right edge.
inline ParticleSystem make_bernoulli(double density, long long site_lo,
                                     long long site_hi, std::uint64_t seed,
                                     long long ref_site = -1) {
    require(density > 0.0 && density < 1.0, "make_bernoulli: density must be in (0,1)");
    require(site_lo <= ref_site && ref_site <= site_hi,
            "make_bernoulli: reference site outside window");
    Rng rng(seed);
    std::vector<long long> occupied;
    for (long long x = site_hi; x >= site_lo; --x)
        if (rng.bernoulli(density)) occupied.push_back(x);
    require(!occupied.empty(), "make_bernoulli: window drew no particles");
    long long label1 = 1;
    bool found = false;
    for (std::size_t i = 0; i < occupied.size(); ++i) {
        if (occupied[i] <= ref_site) {
            // occupied[i] is the rightmost particle at or left of ref_site;
            // i particles sit to its right, so the range starts at 1 - i.
            label1 = 1 - static_cast<long long>(i);
            found = true;
            break;
        }
    }
    require(found, "make_bernoulli: no particle at or left of reference site");
    return ParticleSystem(std::move(occupied), label1);
}

/// Occupation indicators of [site_lo, site_hi] for a state.
inline std::vector<int> occupations(const ParticleSystem& ps, long long site_lo,
                                    long long site_hi) {
    require(site_lo <= site_hi, "occupations: empty window");
    std::vector<int> eta(static_cast<std::size_t>(site_hi - site_lo + 1), 0);
    for (long long x : ps.positions())
        if (x >= site_lo && x <= site_hi) eta[static_cast<std::size_t>(x - site_lo)] = 1;
    return eta;
}

}  // namespace tasep
