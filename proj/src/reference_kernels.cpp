#include "impactum/reference_kernels.hpp"

#include <algorithm>

namespace impactum::reference {

std::vector<double> fractional_counts(const CitationGraph& graph, YearWindow w) {
    const auto& corpus = graph.corpus();
    std::vector<double> out(corpus.papers().size(), 0.0);
    for (PaperIdx p = 0; p < out.size(); ++p) {
        double sum = 0.0;
        for (const auto& e : graph.in_edges(p))
            if (w.contains(corpus.papers()[e.citing].year)) sum += e.weight;
        out[p] = sum;
    }
    return out;
}

std::vector<std::int64_t> integer_counts(const CitationGraph& graph, YearWindow w) {
    const auto& corpus = graph.corpus();
    std::vector<std::int64_t> out(corpus.papers().size(), 0);
    for (PaperIdx p = 0; p < out.size(); ++p) {
        std::int64_t sum = 0;
        for (const auto& e : graph.in_edges(p))
            if (w.contains(corpus.papers()[e.citing].year)) ++sum;
        out[p] = sum;
    }
    return out;
}

ClassificationSet classify_cohorts(const Corpus& corpus, std::span<const Cohort> cohorts,
                                   std::span<const double> fractional_by_paper) {
    const std::size_t n = corpus.papers().size();
    ClassificationSet out;
    out.in_cohort.assign(n, 0);
    out.fractional.assign(fractional_by_paper.begin(), fractional_by_paper.end());
    out.percentile.assign(n, 0.0);
    out.band.assign(n, ClassBand::bottom50);

    for (const Cohort& cohort : cohorts) {
        const double N = static_cast<double>(cohort.size());
        std::vector<double> sorted;
        sorted.reserve(cohort.size());
        for (PaperIdx m : cohort.members) sorted.push_back(fractional_by_paper[m]);
        std::sort(sorted.begin(), sorted.end());
        for (PaperIdx m : cohort.members) {
            auto below = std::lower_bound(sorted.begin(), sorted.end(), fractional_by_paper[m]) -
                         sorted.begin();
            double p = 100.0 * static_cast<double>(below) / N;
            out.in_cohort[m] = 1;
            out.percentile[m] = p;
            out.band[m] = classify_percentile(p);
        }
    }
    return out;
}

} // namespace impactum::reference
