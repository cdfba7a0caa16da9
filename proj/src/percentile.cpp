#include "impactum/percentile.hpp"

#include "impactum/parallel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace impactum {

const char* to_string(ClassBand b) {
    switch (b) {
        case ClassBand::top1: return "top1";
        case ClassBand::top10: return "top10";
        case ClassBand::top50: return "top50";
        default: return "bottom50";
    }
}

const std::set<DocType>& default_included_types() {
    static const std::set<DocType> kTypes = {
        DocType::research_article, DocType::review_article, DocType::conference_paper,
        DocType::case_report,      DocType::clinical_trial,
    };
    return kTypes;
}

std::vector<Cohort> build_cohorts(const Corpus& corpus, YearWindow pub_years,
                                  const std::set<DocType>& included_types) {
    if (pub_years.empty()) throw std::invalid_argument("publication window is empty");
    if (included_types.empty()) throw std::invalid_argument("no document types included");

    std::map<std::pair<int, DocType>, std::vector<PaperIdx>> groups;
    auto papers = corpus.papers();
    for (std::uint32_t i = 0; i < papers.size(); ++i) {
        const auto& p = papers[i];
        if (!pub_years.contains(p.year)) continue;
        if (!included_types.count(p.doc_type)) continue;
        groups[{p.year, p.doc_type}].push_back(i);
    }
    std::vector<Cohort> cohorts;
    cohorts.reserve(groups.size());
    for (auto& [key, members] : groups)
        cohorts.push_back(Cohort{key.first, key.second, std::move(members)});
    return cohorts;
}

ClassBand classify_percentile(double p) {
    if (!(p >= 0.0 && p < 100.0))
        throw std::invalid_argument("percentile outside [0, 100)");
    if (p >= 99.0) return ClassBand::top1;
    if (p >= 90.0) return ClassBand::top10;
    if (p >= 50.0) return ClassBand::top50;
    return ClassBand::bottom50;
}

double percentile_within(const Cohort& cohort, std::span<const double> fractional_by_paper,
                         PaperIdx paper) {
    if (std::find(cohort.members.begin(), cohort.members.end(), paper) == cohort.members.end())
        throw std::invalid_argument("paper is not a member of the cohort");
    const double v = fractional_by_paper[paper];
    std::int64_t below = 0;
    for (PaperIdx m : cohort.members)
        if (fractional_by_paper[m] < v) ++below;
    return 100.0 * static_cast<double>(below) / static_cast<double>(cohort.size());
}

ClassificationSet classify_cohorts(const Corpus& corpus, std::span<const Cohort> cohorts,
                                   std::span<const double> fractional_by_paper, int threads) {
    const std::size_t n = corpus.papers().size();
    ClassificationSet out;
    out.in_cohort.assign(n, 0);
    out.fractional.assign(fractional_by_paper.begin(), fractional_by_paper.end());
    out.percentile.assign(n, 0.0);
    out.band.assign(n, ClassBand::bottom50);

    const int t = resolve_threads(threads);
    (void)t;
    const std::int64_t nc = static_cast<std::int64_t>(cohorts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(t)
#endif
    for (std::int64_t c = 0; c < nc; ++c) {
        const Cohort& cohort = cohorts[c];
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

std::array<std::int64_t, 4> cohort_class_counts(const Cohort& cohort,
                                                const ClassificationSet& classes) {
    std::array<std::int64_t, 4> counts{0, 0, 0, 0};
    for (PaperIdx m : cohort.members) ++counts[static_cast<int>(classes.band[m])];
    return counts;
}

} // namespace impactum
