#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tasep/height.hpp"
#include "tasep/lpp.hpp"
#include "tasep/particle_system.hpp"
#include "tasep/simulate.hpp"

using namespace tasep;

namespace {

// Maximal weight over monotone paths from any admissible start to (m,n),
// starts running over the cells just above the antidiagonal {i + j = 0}.
double point_to_line_exhaustive(int m, int n, std::uint64_t seed) {
    struct Walker {
        int m, n;
        std::uint64_t seed;
        double best = -1.0;
        void go(int i, int j, double acc) {
            acc += lpp_weight(seed, i, j);
            if (i == m && j == n) {
                if (acc > best) best = acc;
                return;
            }
            if (i < m) go(i + 1, j, acc);
            if (j < n) go(i, j + 1, acc);
        }
    } w{m, n, seed};
    for (int a = 1 - n; a <= m; ++a) w.go(a, 1 - a, 0.0);
    return w.best;
}

}  // namespace

TEST_CASE("step profile has the wedge height |y|") {
    auto ps = make_step(15);
    auto h = height_of(ps, -15, 10);
    for (long long y = -15; y <= 11; ++y) CHECK(h.value(y) == std::llabs(y));
}

TEST_CASE("alternating profile has the sawtooth height") {
    auto ps = make_alternating(-5, 5);
    auto h = height_of(ps, -10, 10);
    for (long long y = -10; y <= 11; ++y)
        CHECK(h.value(y) == (y % 2 == 0 ? 0 : -1));
}

TEST_CASE("a jump raises the height by 2 at the jump target only") {
    // all occupation patterns of an 8-site window
    for (int mask = 0; mask < 256; ++mask) {
        std::vector<int> eta(8);
        for (int b = 0; b < 8; ++b) eta[b] = (mask >> b) & 1;
        HeightFunction before(eta, -3);
        for (long long x = -3; x <= 3; ++x) {
            if (!(before.occupation(x) == 1 && before.occupation(x + 1) == 0)) continue;
            HeightFunction after = before;
            after.apply_jump(x);
            for (long long y = -3; y <= 5; ++y)
                CHECK(after.value(y) == before.value(y) + (y == x + 1 ? 2 : 0));
        }
    }
}

TEST_CASE("height rejects malformed windows and illegal jumps") {
    CHECK_THROWS(HeightFunction({1, 0, 1}, 5));     // window misses the origin
    CHECK_THROWS(HeightFunction({1, 2, 0}, -1));    // not an indicator
    HeightFunction h({1, 1, 0, 1}, -2);
    CHECK_THROWS(h.value(3));
    CHECK_THROWS(h.apply_jump(-2));  // target site occupied
    CHECK_THROWS(h.apply_jump(0));   // source site empty
    CHECK_THROWS(h.apply_jump(1));   // target outside the window
    h.apply_jump(-1);
    CHECK(h.occupation(-1) == 0);
    CHECK(h.occupation(0) == 1);
}

TEST_CASE("height differences track the integrated current") {
    auto init = make_step(40);
    Rng rng(614);
    auto res = simulate_continuous(init, {2.5}, rng);
    ParticleSystem now(res.snapshots[0], init.label_min());
    auto h0 = height_of(init, -40, 12);
    auto ht = height_of(now, -40, 12);
    long long j_origin = integrated_current(init, res.snapshots[0], -1);
    for (long long y = -35; y <= 10; ++y) {
        long long jy = integrated_current(init, res.snapshots[0], y - 1);
        CHECK(ht.value(y) - h0.value(y) == 2 * (jy - j_origin));
    }
}

TEST_CASE("cell weights are reproducible and well distributed") {
    CHECK(lpp_weight(42, 3, 7) == lpp_weight(42, 3, 7));
    CHECK(lpp_weight(42, 3, 7) != lpp_weight(42, 7, 3));
    CHECK(lpp_weight(42, 3, 7) != lpp_weight(43, 3, 7));
    CHECK(lpp_weight(42, -3, 7) != lpp_weight(42, 3, 7));
    double mean = 0.0;
    for (int i = 1; i <= 200; ++i)
        for (int j = 1; j <= 200; ++j) mean += lpp_weight(5, i, j);
    mean /= 40000.0;
    CHECK(std::fabs(mean - 1.0) < 0.02);
}

TEST_CASE("passage-time recursion matches exhaustive path search") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (auto [M, N] : {std::pair{1, 1}, {3, 2}, {5, 3}, {4, 4}, {8, 8}}) {
            auto g = lpp_times(M, N, seed);
            CHECK(g[static_cast<std::size_t>(M - 1) * N + (N - 1)] ==
                  lpp_exhaustive(M, N, seed));
        }
    }
}

TEST_CASE("first row of passage times is a running sum") {
    std::uint64_t seed = 17;
    auto g = lpp_times(1, 10, seed);
    double acc = 0.0;
    for (int n = 1; n <= 10; ++n) {
        acc += lpp_weight(seed, 1, n);
        CHECK(g[static_cast<std::size_t>(n - 1)] == acc);
    }
}

TEST_CASE("event-driven particle picture reproduces the recursion exactly") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull, 12345ull}) {
        auto a = lpp_times(12, 9, seed);
        auto b = tasep_passage_times(12, 9, seed);
        CHECK(a == b);
    }
    auto a = lpp_times(30, 17, 3);
    auto b = tasep_passage_times(30, 17, 3);
    CHECK(a == b);
}

TEST_CASE("passage times grow along rows and columns") {
    int M = 10, N = 10;
    auto g = lpp_times(M, N, 8);
    auto at = [&](int m, int n) { return g[static_cast<std::size_t>(m - 1) * N + (n - 1)]; };
    for (int m = 1; m <= M; ++m)
        for (int n = 1; n <= N; ++n) {
            if (m > 1) CHECK(at(m, n) > at(m - 1, n));
            if (n > 1) CHECK(at(m, n) > at(m, n - 1));
        }
}

TEST_CASE("border of the occupied region matches jump counts") {
    int M = 12, N = 8;
    std::uint64_t seed = 21;
    auto g = lpp_times(M, N, seed);
    auto at = [&](int m, int n) { return g[static_cast<std::size_t>(m - 1) * N + (n - 1)]; };
    for (double t : {2.0, 5.0, 9.0, 14.0}) {
        auto border = border_set(g, M, N, t);
        for (int n = 1; n <= N; ++n) {
            int b = border[static_cast<std::size_t>(n - 1)];
            if (b > 0) CHECK(at(b, n) <= t);
            if (b < M) CHECK(at(b + 1, n) > t);
            if (n > 1) CHECK(b <= border[static_cast<std::size_t>(n - 2)]);
        }
    }
}

TEST_CASE("point-to-line times match exhaustive search over all starts") {
    int M = 3, N = 3;
    for (std::uint64_t seed : {2ull, 11ull, 31ull}) {
        PointToLineGrid grid(M, N, seed);
        for (int i = grid.ilo(); i <= grid.ihi(); ++i)
            for (int j = grid.jlo(); j <= grid.jhi(); ++j) {
                if (i + j <= 0) {
                    CHECK(grid.at(i, j) == 0.0);
                    continue;
                }
                CHECK(grid.at(i, j) == point_to_line_exhaustive(i, j, seed));
            }
    }
}

TEST_CASE("point-to-line dominates point-to-point on shared weights") {
    int M = 6, N = 6;
    std::uint64_t seed = 77;
    PointToLineGrid grid(M, N, seed);
    auto g = lpp_times(M, N, seed);
    for (int m = 1; m <= M; ++m)
        for (int n = 1; n <= N; ++n)
            CHECK(grid.at(m, n) >= g[static_cast<std::size_t>(m - 1) * N + (n - 1)]);
}

TEST_CASE("point-to-line grid guards its rectangle") {
    PointToLineGrid grid(3, 3, 1);
    CHECK(grid.at(-5, 2) == 0.0);   // below the antidiagonal, outside the rectangle
    CHECK_THROWS(grid.at(5, 0));
    CHECK_THROWS(grid.at(0, 4));
}
