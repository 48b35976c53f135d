#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "tasep/common.hpp"
#include "tasep/particle_system.hpp"

namespace tasep {

/// Exact (truncation-certified) law of a small exclusion system at time t.
/// Probabilities may sum to slightly below 1; the deficit is bounded by
/// truncation_error, which is also a total-variation bound against the exact
/// law.
struct ExactDistribution {
    std::vector<std::pair<std::vector<long long>, double>> states;
    double truncation_error = 0.0;
    int poisson_terms = 0;
};

/// Uniformization: embed the continuous dynamics into a discrete chain with
/// uniform rate n (the maximal exit rate), mix the step distributions with
/// Poisson(n t) weights, and truncate the Poisson sum once its tail drops
/// below eps.  Exponential state growth limits this to a handful of
/// particles, which is exactly its role: an independent oracle for the
/// event-driven simulator.
inline ExactDistribution uniformize(const ParticleSystem& init, double t,
                                    double eps) {
    require(t >= 0.0, "uniformize: negative time");
    require(eps > 0.0 && eps < 0.1, "uniformize: eps out of range");
    require(init.size() <= 8, "uniformize: state space too large beyond 8 particles");
    std::size_t n = init.size();
    double lambda = static_cast<double>(n) * t;

    // Smallest J with P(Poisson(lambda) > J) < eps.
    int J = 0;
    {
        double term = std::exp(-lambda), cum = term;
        while (1.0 - cum >= eps) {
            ++J;
            term *= lambda / J;
            cum += term;
            require(J < 100000, "uniformize: Poisson truncation failed to converge");
        }
    }

    using State = std::vector<long long>;
    std::map<State, double> dist;
    dist[init.positions()] = 1.0;
    std::map<State, double> accum;

    double pois = std::exp(-lambda);  // weight of j = 0
    double mass = pois;
    accum[init.positions()] = pois;

    for (int j = 1; j <= J; ++j) {
        std::map<State, double> next;
        for (const auto& [state, q] : dist) {
            std::size_t mobile = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (i == 0 || state[i - 1] > state[i] + 1) ++mobile;
            if (mobile < n)
                next[state] += q * static_cast<double>(n - mobile) / n;
            for (std::size_t i = 0; i < n; ++i) {
                if (!(i == 0 || state[i - 1] > state[i] + 1)) continue;
                State succ = state;
                succ[i] += 1;
                next[std::move(succ)] += q / n;
            }
        }
        dist.swap(next);
        pois *= lambda / j;
        mass += pois;
        for (const auto& [state, q] : dist) accum[state] += pois * q;
    }

    ExactDistribution out;
    out.truncation_error = 1.0 - mass;
    out.poisson_terms = J;
    out.states.assign(accum.begin(), accum.end());
    return out;
}

}  // namespace tasep
