#pragma once

#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "tasep/common.hpp"
#include "tasep/random.hpp"

namespace tasep {

/// Exp(1) weight of lattice cell (i,j), reproducible from the seed alone and
/// independent of evaluation order.  Indices may be negative.
inline double lpp_weight(std::uint64_t seed, int i, int j) {
    std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
        static_cast<std::uint64_t>(static_cast<std::uint32_t>(j));
    Rng rng(derive_seed(seed, key));
    return rng.exponential(1.0);
}

/// Last-passage times G(m,n) = w(m,n) + max(G(m-1,n), G(m,n-1)) over the
/// rectangle [1,M] x [1,N] with zero boundary; row-major, index (m-1)*N+(n-1).
inline std::vector<double> lpp_times(int M, int N, std::uint64_t seed) {
    require(M >= 1 && N >= 1, "lpp_times: empty rectangle");
    std::vector<double> g(static_cast<std::size_t>(M) * N);
    for (int m = 1; m <= M; ++m) {
        for (int n = 1; n <= N; ++n) {
            double up = m > 1 ? g[static_cast<std::size_t>(m - 2) * N + (n - 1)] : 0.0;
            double left = n > 1 ? g[static_cast<std::size_t>(m - 1) * N + (n - 2)] : 0.0;
            g[static_cast<std::size_t>(m - 1) * N + (n - 1)] =
                std::max(up, left) + lpp_weight(seed, m, n);
        }
    }
    return g;
}

/// Maximal weight over monotone lattice paths (1,1) -> (M,N), by explicit
/// enumeration.  Exponential in M+N; this is the small-case oracle.
inline double lpp_exhaustive(int M, int N, std::uint64_t seed) {
    require(M >= 1 && N >= 1 && M + N <= 20, "lpp_exhaustive: rectangle too large");
    struct Walker {
        int M, N;
        std::uint64_t seed;
        double best = -1.0;
        void go(int i, int j, double acc) {
            acc += lpp_weight(seed, i, j);
            if (i == M && j == N) {
                if (acc > best) best = acc;
                return;
            }
            if (i < M) go(i + 1, j, acc);
            if (j < N) go(i, j + 1, acc);
        }
    } w{M, N, seed};
    w.go(1, 1, 0.0);
    return w.best;
}

/// Passage times from the particle picture: particle n (starting at -n in the
/// step profile) completes its m-th jump at T(m,n).  A jump can begin only
/// when the particle's previous jump is done and the particle ahead has
/// cleared the target site; the jump then takes an Exp(1) waiting time drawn
/// from the same per-cell stream as lpp_weight.  Simulated event by event
/// through a time-ordered queue; returns the same layout as lpp_times.
inline std::vector<double> tasep_passage_times(int M, int N, std::uint64_t seed) {
    require(M >= 1 && N >= 1, "tasep_passage_times: empty rectangle");
    std::vector<double> T(static_cast<std::size_t>(M) * N, 0.0);
    std::vector<int> done(static_cast<std::size_t>(N) + 1, 0);
    std::vector<char> scheduled(static_cast<std::size_t>(N) + 1, 0);
    using Event = std::pair<double, int>;  // completion time, particle
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue;

    auto try_start = [&](int n) {
        if (n < 1 || n > N || scheduled[n] || done[n] >= M) return;
        int m = done[n] + 1;
        if (n > 1 && done[n - 1] < m) return;  // target site still occupied
        double own = m > 1 ? T[static_cast<std::size_t>(m - 2) * N + (n - 1)] : 0.0;
        double ahead = n > 1 ? T[static_cast<std::size_t>(m - 1) * N + (n - 2)] : 0.0;
        queue.emplace(std::max(own, ahead) + lpp_weight(seed, m, n), n);
        scheduled[n] = 1;
    };

    for (int n = 1; n <= N; ++n) try_start(n);
    while (!queue.empty()) {
        auto [time, n] = queue.top();
        queue.pop();
        int m = ++done[n];
        scheduled[n] = 0;
        T[static_cast<std::size_t>(m - 1) * N + (n - 1)] = time;
        try_start(n);
        try_start(n + 1);
    }
    return T;
}

/// Rightmost column per row of the region {G <= t}: border[n-1] is the number
/// of jumps particle n has completed by time t (0 if none).
inline std::vector<int> border_set(const std::vector<double>& g, int M, int N,
                                   double t) {
    require(g.size() == static_cast<std::size_t>(M) * N, "border_set: bad grid");
    std::vector<int> border(static_cast<std::size_t>(N), 0);
    for (int n = 1; n <= N; ++n) {
        int best = 0;
        for (int m = 1; m <= M; ++m) {
            if (g[static_cast<std::size_t>(m - 1) * N + (n - 1)] <= t)
                best = m;
            else
                break;  // G increases along rows
        }
        border[static_cast<std::size_t>(n - 1)] = best;
    }
    return border;
}

/// Point-to-line passage times: paths may start at any cell just above the
/// antidiagonal {i + j = 0} and the boundary condition is H = 0 on and below
/// it.  The natural domain paired with an M x N endpoint range is
/// i in [1-N, M], j in [1-M, N]; at(i,j) is 0 whenever i + j <= 0.
class PointToLineGrid {
  public:
    PointToLineGrid(int M, int N, std::uint64_t seed)
        : ilo_(1 - N), ihi_(M), jlo_(1 - M), jhi_(N) {
        require(M >= 1 && N >= 1, "PointToLineGrid: empty rectangle");
        int rows = ihi_ - ilo_ + 1, cols = jhi_ - jlo_ + 1;
        h_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
        for (int i = ilo_; i <= ihi_; ++i) {
            for (int j = jlo_; j <= jhi_; ++j) {
                if (i + j <= 0) continue;
                double up = at_or_zero(i - 1, j), left = at_or_zero(i, j - 1);
                h_[idx(i, j)] = std::max(up, left) + lpp_weight(seed, i, j);
            }
        }
    }

    int ilo() const { return ilo_; }
    int ihi() const { return ihi_; }
    int jlo() const { return jlo_; }
    int jhi() const { return jhi_; }

    /// H(i,j); zero on and below the antidiagonal, which extends outside the
    /// stored rectangle.
    double at(int i, int j) const {
        if (i + j <= 0) return 0.0;
        require(i >= ilo_ && i <= ihi_ && j >= jlo_ && j <= jhi_,
                "PointToLineGrid: index outside rectangle");
        return h_[idx(i, j)];
    }

  private:
    double at_or_zero(int i, int j) const {
        if (i + j <= 0) return 0.0;
        return h_[idx(i, j)];
    }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i - ilo_) * (jhi_ - jlo_ + 1) +
               static_cast<std::size_t>(j - jlo_);
    }

    int ilo_, ihi_, jlo_, jhi_;
    std::vector<double> h_;
};

}  // namespace tasep
