#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "tasep/common.hpp"
#include "tasep/particle_system.hpp"
#include "tasep/random.hpp"

namespace tasep {

/// State snapshots at the requested times (positions indexed by label offset).
struct SimulationResult {
    std::vector<double> times;
    std::vector<std::vector<long long>> snapshots;
    long long label_min = 0;
    std::uint64_t events = 0;
};

namespace detail {

// Mobility bookkeeping shared by the continuous simulator: index 0 (the
// rightmost tracked particle) is always mobile; particle i is mobile iff the
// site ahead is free.
class MobileSet {
  public:
    explicit MobileSet(const std::vector<long long>& pos)
        : where_(pos.size(), kAbsent) {
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (i == 0 || pos[i - 1] > pos[i] + 1) insert(i);
    }

    std::size_t count() const { return list_.size(); }
    std::size_t pick(std::size_t k) const { return list_[k]; }
    bool contains(std::size_t i) const { return where_[i] != kAbsent; }

    void insert(std::size_t i) {
        if (where_[i] != kAbsent) return;
        where_[i] = list_.size();
        list_.push_back(i);
    }

    void erase(std::size_t i) {
        std::size_t at = where_[i];
        if (at == kAbsent) return;
        std::size_t last = list_.back();
        list_[at] = last;
        where_[last] = at;
        list_.pop_back();
        where_[i] = kAbsent;
    }

  private:
    static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
    std::vector<std::size_t> list_;
    std::vector<std::size_t> where_;
  };

}  // namespace detail

/// Continuous-time dynamics: each unblocked particle jumps one site right at
/// rate 1.  Snapshots are taken at the given times (must be nondecreasing and
/// nonnegative).  The rightmost tracked particle is never blocked, so the
/// tracked window must include enough particles ahead of any label whose law
/// matters (the step profile needs no padding; two-sided profiles do).
inline SimulationResult simulate_continuous(const ParticleSystem& init,
                                            const std::vector<double>& times,
                                            Rng& rng) {
    require(!times.empty(), "simulate_continuous: no sample times");
    for (std::size_t i = 0; i < times.size(); ++i) {
        require(times[i] >= 0.0, "simulate_continuous: negative time");
        require(i == 0 || times[i] >= times[i - 1],
                "simulate_continuous: times must be nondecreasing");
    }
    SimulationResult out;
    out.times = times;
    out.label_min = init.label_min();

    std::vector<long long> pos = init.positions();
    detail::MobileSet mobile(pos);
    double t = 0.0;
    std::size_t next_sample = 0;

    while (next_sample < times.size()) {
        double dt = rng.exponential(static_cast<double>(mobile.count()));
        double t_event = t + dt;
        while (next_sample < times.size() && times[next_sample] < t_event) {
            out.snapshots.push_back(pos);
            ++next_sample;
        }
        if (next_sample >= times.size()) break;
        std::size_t i = mobile.pick(rng.below(mobile.count()));
        pos[i] += 1;
        ++out.events;
        if (i > 0 && pos[i - 1] == pos[i] + 1) mobile.erase(i);
        if (i + 1 < pos.size() && !mobile.contains(i + 1)) mobile.insert(i + 1);
        t = t_event;
    }
    return out;
}

enum class UpdateRule {
    sequential,  // one sweep, rightmost label first, using the evolving state
    parallel,    // eligibility frozen at the start of the step
};

/// One discrete step with jump probability p.  The coin source must provide
/// bernoulli(p); coins are consumed in label order over eligible particles
/// only, which pins the stream layout for reproducibility.
template <class Coins>
inline void discrete_step(std::vector<long long>& pos, double p, UpdateRule rule,
                          Coins& coins) {
    std::size_t n = pos.size();
    if (rule == UpdateRule::sequential) {
        for (std::size_t i = 0; i < n; ++i) {
            bool free_ahead = (i == 0) || pos[i - 1] > pos[i] + 1;
            if (free_ahead && coins.bernoulli(p)) pos[i] += 1;
        }
    } else {
        std::vector<char> eligible(n);
        for (std::size_t i = 0; i < n; ++i)
            eligible[i] = (i == 0) || pos[i - 1] > pos[i] + 1;
        for (std::size_t i = 0; i < n; ++i)
            if (eligible[i] && coins.bernoulli(p)) pos[i] += 1;
    }
}

/// Discrete-time dynamics; snapshots at the requested integer step counts.
template <class Coins>
inline SimulationResult simulate_discrete(const ParticleSystem& init, double p,
                                          UpdateRule rule,
                                          const std::vector<long long>& sample_steps,
                                          Coins& coins) {
    require(!sample_steps.empty(), "simulate_discrete: no sample steps");
    require(p > 0.0 && p < 1.0, "simulate_discrete: probability must be in (0,1)");
    for (std::size_t i = 0; i < sample_steps.size(); ++i) {
        require(sample_steps[i] >= 0, "simulate_discrete: negative step");
        require(i == 0 || sample_steps[i] >= sample_steps[i - 1],
                "simulate_discrete: steps must be nondecreasing");
    }
    SimulationResult out;
    out.label_min = init.label_min();
    std::vector<long long> pos = init.positions();
    long long step = 0;
    for (long long target : sample_steps) {
        while (step < target) {
            discrete_step(pos, p, rule, coins);
            ++step;
            ++out.events;
        }
        out.times.push_back(static_cast<double>(step));
        out.snapshots.push_back(pos);
    }
    return out;
}

/// Particles that moved from at-or-left of x to strictly right of x, i.e. the
/// integrated current across the bond (x, x+1) between the two states.
inline long long integrated_current(const ParticleSystem& init,
                                    const std::vector<long long>& now,
                                    long long x) {
    const std::vector<long long>& before = init.positions();
    require(before.size() == now.size(), "integrated_current: state size mismatch");
    long long J = 0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        require(now[i] >= before[i], "integrated_current: particle moved left");
        if (before[i] <= x && now[i] >= x + 1) ++J;
    }
    return J;
}

/// Run `count` independent replicas; replica r gets Rng(derive_seed(master, r))
/// so the result is independent of the thread count.  fn(r, rng) writes its
/// result into caller-owned storage indexed by r.
template <class F>
inline void run_replicas(std::size_t count, std::uint64_t master_seed, F&& fn,
                         unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t r = 0; r < count; ++r) {
            Rng rng(derive_seed(master_seed, r));
            fn(r, rng);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t r = w; r < count; r += threads) {
                Rng rng(derive_seed(master_seed, r));
                fn(r, rng);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tasep
