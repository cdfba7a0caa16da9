#include "doctest.h"

#include "impactum/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace impactum::stats;

namespace {

// O(n^2) tie-averaged ranks, independent of the library's sort-based path.
std::vector<double> naive_ranks(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0, equal = 0;
        for (double x : v) {
            if (x < v[i]) ++less;
            else if (x == v[i]) ++equal;
        }
        r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
}

double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

double naive_spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return naive_pearson(naive_ranks(x), naive_ranks(y));
}

double naive_ccc(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double vx = 0, vy = 0, cov = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
        cov += (x[i] - mx) * (y[i] - my);
    }
    vx /= n;
    vy /= n;
    cov /= n;
    return 2 * cov / (vx + vy + (mx - my) * (mx - my));
}

// Literal 2^n enumeration of the signed-rank null over doubled ranks.
double brute_signed_rank_p(const std::vector<double>& diffs) {
    std::vector<double> mags;
    std::vector<int> signs;
    for (double d : diffs) {
        if (d == 0.0) continue;
        mags.push_back(std::abs(d));
        signs.push_back(d > 0 ? 1 : -1);
    }
    int n = static_cast<int>(mags.size());
    if (n == 0) return 1.0;
    auto ranks = naive_ranks(mags);
    std::vector<long> dr(n);
    long total = 0;
    for (int i = 0; i < n; ++i) {
        dr[i] = std::lround(2.0 * ranks[i]);
        total += dr[i];
    }
    long obs = 0;
    for (int i = 0; i < n; ++i)
        if (signs[i] > 0) obs += dr[i];
    long obs_dev = std::labs(2 * obs - total);

    long extreme = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        long w = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) w += dr[i];
        if (std::labs(2 * w - total) >= obs_dev) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(1u << n);
}

} // namespace

TEST_CASE("minmax_normalize") {
    auto r = minmax_normalize(std::vector<double>{2, 4, 10});
    CHECK(r == std::vector<double>{0.0, 0.25, 1.0});
    CHECK(minmax_normalize(std::vector<double>{7, 7, 7}) == std::vector<double>{0, 0, 0});
    CHECK(minmax_normalize(std::vector<double>{0, 100}) == std::vector<double>{0, 1});
    CHECK_THROWS_AS(minmax_normalize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("minmax_normalize preserves order relations") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-50, 50);
    std::vector<double> v;
    for (int i = 0; i < 60; ++i) v.push_back(u(rng));
    auto r = minmax_normalize(v);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[i] < v[j]) CHECK(r[i] < r[j]);
}

TEST_CASE("percent_rank") {
    CHECK(percent_rank(std::vector<double>{10, 20, 30}) == std::vector<double>{0, 0.5, 1});
    CHECK(percent_rank(std::vector<double>{5, 5}) == std::vector<double>{0.5, 0.5});
    CHECK(percent_rank(std::vector<double>{30, 20, 10}) == std::vector<double>{1, 0.5, 0});
    CHECK(percent_rank(std::vector<double>{42}) == std::vector<double>{0});
    CHECK_THROWS_AS(percent_rank(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("percent_rank is invariant under strictly increasing transforms") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    std::vector<double> v, w;
    for (int i = 0; i < 40; ++i) v.push_back(std::round(u(rng) * 4) / 4); // some ties
    for (double x : v) w.push_back(std::exp(x));
    CHECK(percent_rank(v) == percent_rank(w));
}

TEST_CASE("spearman basics") {
    std::vector<double> x, y;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(i);
        y.push_back(2.0 * i + 1.0);
    }
    CHECK(*spearman(x, y) == doctest::Approx(1.0));
    for (auto& v : y) v = -v;
    CHECK(*spearman(x, y) == doctest::Approx(-1.0));
}

TEST_CASE("spearman on a small permutation, against the naive reference") {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y{2, 1, 4, 3, 5};
    double rho = *spearman(x, y);
    CHECK(rho == doctest::Approx(naive_spearman(x, y)).epsilon(1e-12));
    CHECK(rho == doctest::Approx(0.8)); // 1 - 6*4/(5*24)
}

TEST_CASE("spearman degenerate cases") {
    std::vector<double> c{3, 3, 3, 3};
    std::vector<double> y{1, 2, 3, 4};
    CHECK_FALSE(spearman(c, y).has_value());
    CHECK_FALSE(spearman(y, c).has_value());
    CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(spearman(std::vector<double>{1, 2}, std::vector<double>{1}),
                    std::invalid_argument);
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.1, 9.0);
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
        x.push_back(u(rng));
        y.push_back(u(rng));
    }
    double base = *spearman(x, y);
    std::vector<double> xt, yt;
    for (double v : x) xt.push_back(std::log(v));
    for (double v : y) yt.push_back(v * v * v);
    CHECK(*spearman(xt, yt) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("lin_ccc basics") {
    std::vector<double> x{0.5, 1.5, 2.5, 4.0, 8.0};
    CHECK(*lin_ccc(x, x) == doctest::Approx(1.0));
    std::vector<double> zm{-2, -1, 0, 1, 2}, neg{2, 1, 0, -1, -2};
    CHECK(*lin_ccc(zm, neg) == doctest::Approx(-1.0));
    std::vector<double> c1{5, 5}, c2{5, 5};
    CHECK_FALSE(lin_ccc(c1, c2).has_value());
}

TEST_CASE("lin_ccc shift law: CCC(x, x+c) = 2v/(2v+c^2)") {
    std::mt19937 rng(23);
    std::normal_distribution<double> g(0.0, 2.0);
    std::vector<double> x;
    for (int i = 0; i < 200; ++i) x.push_back(g(rng));
    double n = static_cast<double>(x.size());
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= n;
    for (double c : {0.5, 1.0, 3.0, 10.0}) {
        std::vector<double> y;
        for (double v : x) y.push_back(v + c);
        double expect = 2 * var / (2 * var + c * c);
        CHECK(*lin_ccc(x, y) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("spearman and ccc agree with naive references on random data") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0, 1);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x, y;
        for (int i = 0; i < 100; ++i) {
            // inject ties by rounding a slice of the data
            double a = u(rng), b = u(rng);
            if (rep % 3 == 0) {
                a = std::round(a * 8) / 8;
                b = std::round(b * 8) / 8;
            }
            x.push_back(a);
            y.push_back(b);
        }
        auto s = spearman(x, y);
        REQUIRE(s.has_value());
        CHECK(*s == doctest::Approx(naive_spearman(x, y)).epsilon(1e-12));
        auto c = lin_ccc(x, y);
        REQUIRE(c.has_value());
        CHECK(*c == doctest::Approx(naive_ccc(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("ccc magnitude never exceeds the pearson magnitude or 1") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> x, y;
        for (int i = 0; i < 30; ++i) {
            x.push_back(u(rng));
            y.push_back(0.3 * x.back() + u(rng));
        }
        auto c = lin_ccc(x, y);
        REQUIRE(c.has_value());
        double pearson = naive_pearson(x, y);
        CHECK(std::abs(*c) <= std::abs(pearson) + 1e-12);
        CHECK(std::abs(*c) <= 1.0 + 1e-12);
    }
}

TEST_CASE("signed rank: all-zero differences") {
    auto r = wilcoxon_signed_rank(std::vector<double>{0, 0, 0});
    CHECK(r.p_value == 1.0);
    CHECK(r.statistic == 0.0);
}

TEST_CASE("signed rank: five positive differences") {
    auto r = wilcoxon_signed_rank(std::vector<double>{1, 2, 3, 4, 5});
    CHECK(r.method == Method::exact);
    CHECK(r.statistic == 15.0);
    CHECK(r.p_value == doctest::Approx(0.0625).epsilon(1e-12)); // 2/32
}

TEST_CASE("signed rank: symmetric pair is insignificant") {
    auto r = wilcoxon_signed_rank(std::vector<double>{-1, 1});
    CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("signed rank: two positive differences floor at p=0.5") {
    auto r = wilcoxon_signed_rank(std::vector<double>{1, 2});
    CHECK(r.p_value == doctest::Approx(0.5));
}

TEST_CASE("signed rank: exact matches brute enumeration for n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        std::vector<std::vector<double>> magsets;
        std::vector<double> distinct, ones, mixed;
        for (int i = 1; i <= n; ++i) {
            distinct.push_back(i);
            ones.push_back(1.0);
            mixed.push_back(1.0 + (i / 2));
        }
        magsets = {distinct, ones, mixed};
        for (const auto& mags : magsets) {
            for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
                std::vector<double> diffs;
                for (int i = 0; i < n; ++i)
                    diffs.push_back((pattern & (1u << i)) ? mags[i] : -mags[i]);
                auto lib = wilcoxon_signed_rank(diffs);
                CHECK(lib.method == Method::exact);
                CHECK(lib.p_value == doctest::Approx(brute_signed_rank_p(diffs)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("signed rank: identical positive differences at n=13 use the tie-adjusted normal tail") {
    std::vector<double> diffs(13, 0.4);
    auto r = wilcoxon_signed_rank(diffs);
    CHECK(r.method == Method::normal_approx);
    CHECK(r.p_value < 0.001);
    CHECK(significance_stars(r.p_value) == "***");
}

TEST_CASE("rank sum: identical samples") {
    std::vector<double> a{1, 2, 3, 4};
    auto r = wilcoxon_rank_sum(a, a);
    CHECK(r.method == Method::exact);
    CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("rank sum: fully separated samples") {
    auto r = wilcoxon_rank_sum(std::vector<double>{1, 2, 3}, std::vector<double>{10, 11, 12});
    CHECK(r.method == Method::exact);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == doctest::Approx(0.1).epsilon(1e-12)); // 2 of C(6,3)=20
}

TEST_CASE("rank sum: equal singletons") {
    auto r = wilcoxon_rank_sum(std::vector<double>{5}, std::vector<double>{5});
    CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("rank sum: empty sample is rejected") {
    CHECK_THROWS_AS(wilcoxon_rank_sum(std::vector<double>{}, std::vector<double>{1}),
                    std::invalid_argument);
}

TEST_CASE("rank sum: large samples switch to the normal approximation") {
    std::vector<double> a, b;
    for (int i = 0; i < 10; ++i) {
        a.push_back(i);
        b.push_back(i + 20);
    }
    auto r = wilcoxon_rank_sum(a, b);
    CHECK(r.method == Method::normal_approx);
    CHECK(r.p_value < 0.001);
}

TEST_CASE("ecdf evaluation") {
    Ecdf f(std::vector<double>{1, 2, 2, 4});
    CHECK(f(2.0) == 0.75);
    CHECK(f(0.5) == 0.0);
    CHECK(f(4.0) == 1.0);
    CHECK(f(100.0) == 1.0);
    CHECK_THROWS_AS(Ecdf(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("ecdf is a right-continuous non-decreasing step function") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(0, 10);
    std::vector<double> v;
    for (int i = 0; i < 64; ++i) v.push_back(u(rng));
    Ecdf f(v);
    double prev = 0;
    for (double t = -1; t < 12; t += 0.37) {
        double cur = f(t);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(prev == 1.0);
}

TEST_CASE("ecdf_diff: identical, shifted, and single-point cases") {
    std::vector<double> a{1, 2, 3, 4, 5};
    std::vector<double> grid{0.5, 1, 2.5, 3, 4.5, 6};
    auto zero = ecdf_diff(a, a, grid);
    for (double d : zero) CHECK(d == 0.0);

    std::vector<double> b;
    for (double v : a) b.push_back(v + 1.0);
    for (double d : ecdf_diff(b, a, grid)) CHECK(d <= 0.0);

    auto single = ecdf_diff(std::vector<double>{1.0}, std::vector<double>{0.0},
                            std::vector<double>{0.5});
    CHECK(single == std::vector<double>{-1.0});

    CHECK_THROWS_AS(ecdf_diff(a, a, std::vector<double>{2, 1}), std::invalid_argument);
}

TEST_CASE("significance stars") {
    CHECK(significance_stars(0.0005) == "***");
    CHECK(significance_stars(0.005) == "**");
    CHECK(significance_stars(0.03) == "*");
    CHECK(significance_stars(0.05) == "—");
    CHECK(significance_stars(0.9) == "—");
}
