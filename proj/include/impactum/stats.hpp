#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace impactum::stats {

// Largest n for which the Wilcoxon tests enumerate the exact null.
inline constexpr int kExactLimit = 12;

enum class Method : std::uint8_t { exact, normal_approx };
const char* to_string(Method m);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    Method method = Method::exact;
};

// 1-based positional ranks with ties averaged.
std::vector<double> average_ranks(std::span<const double> values);

// x' = (x - min) / (max - min); constant input maps to all zeros.
// Throws std::invalid_argument on empty input.
std::vector<double> minmax_normalize(std::span<const double> values);

// Tie-symmetric percent ranks in [0, 1]: (average rank - 1) / (n - 1);
// a single value ranks 0. Throws on empty input.
std::vector<double> percent_rank(std::span<const double> values);

// Pearson correlation of tie-averaged ranks. Throws on size mismatch or
// n < 2; nullopt when either side has zero rank variance.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Lin's concordance correlation coefficient with population (n-denominator)
// moments. nullopt when both variances are zero and the means agree.
std::optional<double> lin_ccc(std::span<const double> x, std::span<const double> y);

// Two-sided signed-rank test on paired differences. Zero differences are
// dropped; all-zero input gives statistic 0, p = 1. Exact enumeration of the
// 2^n sign assignments for n <= kExactLimit, otherwise a normal
// approximation with continuity correction and tie-adjusted variance.
TestResult wilcoxon_signed_rank(std::span<const double> diffs);

// Two-sided Mann-Whitney rank-sum test; exact for |a|+|b| <= kExactLimit.
// Throws if either sample is empty.
TestResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

// Right-continuous empirical CDF; F(t) = fraction of values <= t.
class Ecdf {
public:
    explicit Ecdf(std::span<const double> values);
    double operator()(double t) const;
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

// Pointwise F_b - F_a on a non-decreasing grid. Throws on empty samples or
// an unsorted grid.
std::vector<double> ecdf_diff(std::span<const double> values_b, std::span<const double> values_a,
                              std::span<const double> grid);

// * p<0.05, ** p<0.01, *** p<0.001, em-dash otherwise.
std::string_view significance_stars(double p);

} // namespace impactum::stats
