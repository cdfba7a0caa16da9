#pragma once

#include "impactum/corpus.hpp"
#include "impactum/graph.hpp"
#include "impactum/percentile.hpp"

#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace impactum {

// Window anchoring for indicator year Y: I3 ranks publications from
// {Y-3, Y-2} on citations accumulated in {Y-3..Y}; JIF and CiteScore use
// their conventional item windows with citations counted in Y alone.
struct WindowPolicy {
    int indicator_year = 0;
    YearWindow i3_pub_years;
    YearWindow i3_cite_years;
    YearWindow jif_item_years;
    int jif_cite_year = 0;
    YearWindow citescore_item_years;
    int citescore_cite_year = 0;

    static WindowPolicy for_year(int y) {
        WindowPolicy p;
        p.indicator_year = y;
        p.i3_pub_years = {y - 3, y - 2};
        p.i3_cite_years = {y - 3, y};
        p.jif_item_years = {y - 2, y - 1};
        p.jif_cite_year = y;
        p.citescore_item_years = {y - 4, y - 1};
        p.citescore_cite_year = y;
        return p;
    }
};

struct IndicatorRow {
    std::string journal_id;
    int year = 0;
    std::int64_t n_pubs = 0; // cohort-included papers in the I3 window
    std::int64_t i3 = 0;
    std::optional<double> i3_n;
    std::optional<double> jif;
    std::optional<double> citescore;
    // Citations arrived but the journal had no citable items in the JIF
    // window: the numerator-denominator asymmetry case, kept visible.
    bool jif_asymmetry = false;
    std::int64_t h_index = 0;
    std::int64_t i10_index = 0;
    std::int64_t h5_index = 0;
    // Integer citations received in the I3 citation window by the journal's
    // I3-window papers. Auxiliary sidecar column, not part of
    // indicators.csv; absent on tables loaded without the sidecar.
    std::optional<std::int64_t> citations;
};

struct DescriptiveStats {
    std::size_t n = 0;
    double min = 0, mean = 0, median = 0, max = 0;
    double ci95_low = 0, ci95_high = 0;
    double sd = 0, se = 0;
};

// Sample SD (n-1), midpoint median, CI = mean +/- 1.96 * se. A single value
// has sd 0 by convention. Throws on empty input.
DescriptiveStats describe(std::span<const double> values);

// --- single-journal operations -------------------------------------------

std::int64_t compute_i3(const Corpus& corpus, const ClassificationSet& classes, JournalIdx j,
                        const WindowPolicy& policy, const I3Weights& weights);

// nullopt when the journal has no cohort papers in the window (distinct
// from 0).
std::optional<double> compute_i3n(const Corpus& corpus, const ClassificationSet& classes,
                                  JournalIdx j, const WindowPolicy& policy,
                                  const I3Weights& weights);

// Numerator counts year-Y citations to all of the journal's items published
// in the JIF window; the denominator counts only research and review
// articles. nullopt when the denominator is 0; *asymmetry reports a
// non-zero numerator over an empty denominator.
std::optional<double> compute_jif(const CitationGraph& graph, JournalIdx j,
                                  const WindowPolicy& policy, bool* asymmetry = nullptr);

// Symmetric numerator/denominator over all document types.
std::optional<double> compute_citescore(const CitationGraph& graph, JournalIdx j,
                                        const WindowPolicy& policy);

// (h, i10, h5): h over all-time integer citation counts, i10 = papers with
// >= 10 citations, h5 restricted to publications from {Y-4..Y}.
std::tuple<std::int64_t, std::int64_t, std::int64_t> compute_h_family(const CitationGraph& graph,
                                                                      JournalIdx j, int year);

// --- table build ------------------------------------------------------------

// One row per journal record, sorted by journal_id. Parallel over journals;
// deterministic for any thread count.
std::vector<IndicatorRow> compute_indicator_table(const Corpus& corpus, const CitationGraph& graph,
                                                  const ClassificationSet& classes,
                                                  const WindowPolicy& policy,
                                                  const I3Weights& weights, int threads = 0);

// Fractional counts -> cohorts -> classification -> indicator rows.
struct PipelineResult {
    std::vector<Cohort> cohorts;
    ClassificationSet classes;
    std::vector<IndicatorRow> rows;
};

PipelineResult run_indicator_pipeline(const Corpus& corpus, const CitationGraph& graph,
                                      const WindowPolicy& policy, const I3Weights& weights,
                                      const std::set<DocType>& included_types, int threads = 0);

} // namespace impactum
