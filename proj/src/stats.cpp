#include "impactum/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace impactum::stats {

const char* to_string(Method m) { return m == Method::exact ? "exact" : "normal_approx"; }

namespace {

double two_sided_normal_p(double z) {
    double p = std::erfc(std::abs(z) / std::sqrt(2.0));
    return std::min(1.0, std::max(0.0, p));
}

// Sum over groups of tied values of (t^3 - t).
double tie_term(std::span<const double> sorted) {
    double sum = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        double t = static_cast<double>(j - i);
        sum += t * t * t - t;
        i = j;
    }
    return sum;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

std::vector<double> minmax_normalize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("minmax_normalize: empty input");
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    std::vector<double> out(values.size(), 0.0);
    double range = *hi - *lo;
    if (range == 0.0) return out;
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
    return out;
}

std::vector<double> percent_rank(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("percent_rank: empty input");
    const std::size_t n = values.size();
    if (n == 1) return {0.0};
    std::vector<double> ranks = average_ranks(values);
    for (double& r : ranks) r = (r - 1.0) / static_cast<double>(n - 1);
    return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("spearman: need n >= 2");
    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    return pearson(rx, ry);
}

std::optional<double> lin_ccc(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("lin_ccc: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("lin_ccc: need n >= 2");
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double vx = 0, vy = 0, cov = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        vx += dx * dx;
        vy += dy * dy;
        cov += dx * dy;
    }
    vx /= static_cast<double>(n);
    vy /= static_cast<double>(n);
    cov /= static_cast<double>(n);
    double dm = mx - my;
    double den = vx + vy + dm * dm;
    if (den == 0.0) return std::nullopt;
    return 2.0 * cov / den;
}

TestResult wilcoxon_signed_rank(std::span<const double> diffs) {
    std::vector<double> mags;
    std::vector<int> signs;
    for (double d : diffs) {
        if (d == 0.0) continue;
        mags.push_back(std::abs(d));
        signs.push_back(d > 0 ? 1 : -1);
    }
    const int n = static_cast<int>(mags.size());
    if (n == 0) return {0.0, 1.0, Method::exact};

    std::vector<double> ranks = average_ranks(mags);
    double w_plus = 0.0;
    for (int i = 0; i < n; ++i)
        if (signs[i] > 0) w_plus += ranks[i];

    if (n <= kExactLimit) {
        // Doubled ranks are exact integers; enumerate the 2^n null via the
        // subset-sum distribution of the positive-rank total.
        std::vector<int> dr(n);
        for (int i = 0; i < n; ++i) dr[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
        const int total = n * (n + 1); // sum of doubled ranks
        std::vector<std::uint64_t> count(total + 1, 0);
        count[0] = 1;
        for (int r : dr)
            for (int v = total; v >= r; --v) count[v] += count[v - r];
        const int obs = static_cast<int>(std::lround(2.0 * w_plus));
        const int center2 = total; // 2 * E[D], with D = doubled W+
        std::uint64_t extreme = 0, all = 0;
        for (int v = 0; v <= total; ++v) {
            if (!count[v]) continue;
            all += count[v];
            if (std::abs(2 * v - center2) >= std::abs(2 * obs - center2)) extreme += count[v];
        }
        return {w_plus, static_cast<double>(extreme) / static_cast<double>(all), Method::exact};
    }

    double mu = static_cast<double>(n) * (n + 1) / 4.0;
    std::vector<double> sorted(mags);
    std::sort(sorted.begin(), sorted.end());
    double var = static_cast<double>(n) * (n + 1) * (2 * n + 1) / 24.0 - tie_term(sorted) / 48.0;
    if (var <= 0.0) return {w_plus, 1.0, Method::normal_approx};
    double d = std::max(0.0, std::abs(w_plus - mu) - 0.5);
    return {w_plus, two_sided_normal_p(d / std::sqrt(var)), Method::normal_approx};
}

TestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("wilcoxon_rank_sum: empty sample");
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    const int n = na + nb;

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<double> ranks = average_ranks(pooled);
    double ra = std::accumulate(ranks.begin(), ranks.begin() + na, 0.0);
    double u = ra - static_cast<double>(na) * (na + 1) / 2.0;

    if (n <= kExactLimit) {
        // Enumerate all C(n, na) position assignments over the pooled ranks.
        std::vector<int> dr(n);
        for (int i = 0; i < n; ++i) dr[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
        const int center2 = na * (n + 1); // doubled E[rank sum of a]
        const int obs2 = static_cast<int>(std::lround(2.0 * ra));
        std::uint64_t extreme = 0, all = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != na) continue;
            int sum = 0;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) sum += dr[i];
            ++all;
            if (std::abs(sum - center2) >= std::abs(obs2 - center2)) ++extreme;
        }
        return {u, static_cast<double>(extreme) / static_cast<double>(all), Method::exact};
    }

    double mu = static_cast<double>(na) * nb / 2.0;
    std::vector<double> sorted(pooled);
    std::sort(sorted.begin(), sorted.end());
    double var = static_cast<double>(na) * nb / 12.0 *
                 (static_cast<double>(n + 1) -
                  tie_term(sorted) / (static_cast<double>(n) * (n - 1)));
    if (var <= 0.0) return {u, 1.0, Method::normal_approx};
    double d = std::max(0.0, std::abs(u - mu) - 0.5);
    return {u, two_sided_normal_p(d / std::sqrt(var)), Method::normal_approx};
}

Ecdf::Ecdf(std::span<const double> values) : sorted_(values.begin(), values.end()) {
    if (sorted_.empty()) throw std::invalid_argument("ecdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double t) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::vector<double> ecdf_diff(std::span<const double> values_b, std::span<const double> values_a,
                              std::span<const double> grid) {
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("ecdf_diff: grid must be sorted");
    Ecdf fb(values_b), fa(values_a);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(fb(t) - fa(t));
    return out;
}

std::string_view significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "—";
}

} // namespace impactum::stats
