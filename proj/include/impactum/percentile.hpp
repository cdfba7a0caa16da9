#pragma once

#include "impactum/corpus.hpp"
#include "impactum/graph.hpp"

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace impactum {

enum class ClassBand : std::uint8_t { top1, top10, top50, bottom50 };
const char* to_string(ClassBand b);

// Class weights for the I3 sum; configurable but non-negative and
// non-increasing.
struct I3Weights {
    std::int64_t top1 = 100;
    std::int64_t top10 = 10;
    std::int64_t top50 = 2;
    std::int64_t bottom50 = 0;

    bool valid() const {
        return top1 >= top10 && top10 >= top50 && top50 >= bottom50 && bottom50 >= 0;
    }
    std::int64_t of(ClassBand b) const {
        switch (b) {
            case ClassBand::top1: return top1;
            case ClassBand::top10: return top10;
            case ClassBand::top50: return top50;
            default: return bottom50;
        }
    }
};

struct Cohort {
    int year = 0;
    DocType doc_type = DocType::other;
    std::vector<PaperIdx> members; // ascending paper index
    std::size_t size() const { return members.size(); }
};

// Per-corpus-paper classification outcome; valid where in_cohort is set.
struct ClassificationSet {
    std::vector<std::uint8_t> in_cohort;
    std::vector<double> fractional;
    std::vector<double> percentile;
    std::vector<ClassBand> band;
};

const std::set<DocType>& default_included_types();

// Every in-window paper of an included type lands in exactly one cohort.
// Throws std::invalid_argument on an empty window. Cohorts are ordered by
// (year, doc_type).
std::vector<Cohort> build_cohorts(const Corpus& corpus, YearWindow pub_years,
                                  const std::set<DocType>& included_types);

// Band rule over the strictly-below percentile: top1 iff p >= 99,
// top10 iff 90 <= p < 99, top50 iff 50 <= p < 90, bottom50 iff p < 50.
// Throws std::invalid_argument outside [0, 100).
ClassBand classify_percentile(double percentile);

// Percentile of one cohort member: 100 * (strictly smaller members) / N.
// Ties share the value. Throws if the paper is not a member.
double percentile_within(const Cohort& cohort, std::span<const double> fractional_by_paper,
                         PaperIdx paper);

// Parallel over cohorts; deterministic for any thread count.
ClassificationSet classify_cohorts(const Corpus& corpus, std::span<const Cohort> cohorts,
                                   std::span<const double> fractional_by_paper, int threads = 0);

// n(x_i) per band for one cohort; the four counts sum to the cohort size.
std::array<std::int64_t, 4> cohort_class_counts(const Cohort& cohort,
                                                const ClassificationSet& classes);

} // namespace impactum
