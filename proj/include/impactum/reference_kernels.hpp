#pragma once

#include "impactum/graph.hpp"
#include "impactum/percentile.hpp"

#include <span>
#include <vector>

// Straight-line serial counterparts of the OpenMP kernels. Kept as the
// comparison baseline: tests assert bitwise-identical results, the bench
// target reports the speedup.
namespace impactum::reference {

std::vector<double> fractional_counts(const CitationGraph& graph, YearWindow citing_years);
std::vector<std::int64_t> integer_counts(const CitationGraph& graph, YearWindow citing_years);

ClassificationSet classify_cohorts(const Corpus& corpus, std::span<const Cohort> cohorts,
                                   std::span<const double> fractional_by_paper);

} // namespace impactum::reference
