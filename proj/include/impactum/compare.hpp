#pragma once

#include "impactum/corpus.hpp"
#include "impactum/indicators.hpp"
#include "impactum/stats.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace impactum {

// One indicator table plus the journal metadata used for matching.
struct SourceJournal {
    std::string journal_id;
    std::string title;
    std::vector<std::string> issn;  // normalized
    std::vector<std::string> eissn; // normalized
    std::string publisher_id;
    std::string publisher_name;
};

struct SourceTable {
    std::string label;
    std::vector<SourceJournal> journals; // sorted by journal_id
    std::vector<IndicatorRow> rows;

    static SourceTable from_corpus(const Corpus& corpus, std::string label,
                                   std::vector<IndicatorRow> rows);
};

enum class MatchKey : std::uint8_t { issn, eissn, title };
const char* to_string(MatchKey k);

// Case-folded, punctuation-stripped form used for title-level matching.
std::string normalize_title(std::string_view title);

struct MatchedJournal {
    std::string key; // base-table journal id
    MatchKey match_key_used = MatchKey::issn;
    std::vector<std::string> source_ids;     // journal id per source
    std::vector<std::string> issn, eissn;    // union across sources
    std::string publisher;                   // first non-empty publisher name
    std::map<int, IndicatorRow> rows;        // per year, first source wins

    const IndicatorRow* row(int year) const {
        auto it = rows.find(year);
        return it == rows.end() ? nullptr : &it->second;
    }
};

struct MatchedJournalSet {
    std::vector<std::string> sources;
    std::vector<MatchedJournal> entries; // sorted by key
    std::int64_t title_ambiguities = 0;
    std::int64_t claim_collisions = 0;
    std::vector<std::int64_t> unmatched; // per source
};

// Precedence ISSN > eISSN > normalized title; one-to-one per source;
// ambiguous title collisions are dropped and counted. Requires >= 2 tables.
MatchedJournalSet match_journals(std::span<const SourceTable> tables);

// --- analyses ---------------------------------------------------------------

struct ConcordancePair {
    std::string pair;
    std::size_t n = 0;
    std::optional<double> spearman;
    std::optional<double> ccc;
};

// Pairs {I3/N x CiteScore, I3/N x JIF, JIF x CiteScore} over the
// defined-both subsets for the given year.
std::vector<ConcordancePair> concordance_matrix(const MatchedJournalSet& matched, int year);

enum class Quadrant : std::uint8_t { q1 = 1, q2 = 2, q3 = 3, q4 = 4 };
const char* to_string(Quadrant q);

struct QuadrantLabel {
    std::string key;
    Quadrant quadrant = Quadrant::q1;
    double axis_x = 0, axis_y = 0;
};

// Raw mode: x = I3, y = I3/N, thresholds at the population medians;
// journals exactly at a median go to the "above" side.
std::vector<QuadrantLabel> quadrant_assess_raw(const MatchedJournalSet& matched, int year);

// Normalized mode: x = norm(I3) - norm(publications),
// y = norm(I3/N) - norm(CiteScore); quadrants by sign, zeros positive.
std::vector<QuadrantLabel> quadrant_assess_normalized(const MatchedJournalSet& matched, int year);

struct RankDiffEntry {
    std::size_t entry_index = 0; // into MatchedJournalSet::entries
    std::string key;
    double pr_i3n = 0, pr_citescore = 0;
    double rank_difference = 0;
    int quartile = 0; // 1..4
};

struct QuartileSummary {
    int quartile = 0;
    std::size_t n = 0;
    double avg_outputs = 0;
    std::optional<double> avg_citations; // needs the citations sidecar
    double avg_i3n = 0, avg_citescore = 0;
    double avg_pr_i3n = 0, avg_pr_citescore = 0;
    double avg_rank_difference = 0;
};

struct RankDifferenceResult {
    std::vector<RankDiffEntry> entries; // ascending rank difference
    std::array<QuartileSummary, 4> quartiles;
};

// Quartiles of ascending rank difference; earlier quartiles absorb the
// remainder. Throws std::invalid_argument below 4 journals.
RankDifferenceResult rank_difference_analysis(const MatchedJournalSet& matched, int year);

struct SubjectRef {
    SubjectScheme scheme = SubjectScheme::scilit;
    std::string id;
    std::string label;

    friend bool operator<(const SubjectRef& a, const SubjectRef& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        return a.id < b.id;
    }
    friend bool operator==(const SubjectRef& a, const SubjectRef& b) {
        return a.scheme == b.scheme && a.id == b.id;
    }
};

// Subjects carried by each matched entry, resolved against a journal
// registry (journal id, then ISSN/eISSN).
std::vector<std::vector<SubjectRef>> resolve_subjects(const Corpus& registry,
                                                      const MatchedJournalSet& matched);

struct CrosswalkEdge {
    SubjectRef a, b; // a.scheme < b.scheme
    std::int64_t overlap = 0;
};

// Cross-scheme subject pairs with overlap strictly above the threshold.
std::vector<CrosswalkEdge> subject_crosswalk(
    std::span<const std::vector<SubjectRef>> subjects_per_entry, std::int64_t threshold);

// Scheme-complete cliques (triangles across three schemes, pairs across
// two) in the crosswalk graph; inputs for the trend table.
std::vector<std::vector<SubjectRef>> crosswalk_cliques(std::span<const CrosswalkEdge> edges);

struct TrendResult {
    std::vector<SubjectRef> subjects;
    std::string indicator;
    std::size_t n = 0;
    std::string direction; // up | down | flat
    std::string stars;
    double p_value = 1.0;
    stats::Method method = stats::Method::exact;
    bool paired = true;
};

// Paired signed-rank on per-journal (Y2 - Y1) differences of one indicator
// over journals carrying every subject of the clique. nullopt when no
// journal qualifies.
std::optional<TrendResult> subject_trend(std::span<const std::vector<SubjectRef>> subjects_per_entry,
                                         const MatchedJournalSet& matched,
                                         std::span<const SubjectRef> clique,
                                         std::string_view indicator, int y1, int y2);

struct PublisherShift {
    std::string publisher;
    std::size_t n_y1 = 0, n_y2 = 0;
    double median_y1 = 0, median_y2 = 0;
    std::optional<double> delta_pct;
    std::size_t n_paired = 0;
    double p_value = 1.0;
    std::string verdict; // Increase | Decrease | Stable
};

// I3/N distribution shift per publisher; publishers below min_journals in
// either year are omitted.
std::vector<PublisherShift> publisher_distribution(const MatchedJournalSet& matched, int y1,
                                                   int y2, std::size_t min_journals);

struct SubjectQuartileRow {
    SubjectRef subject;
    std::array<std::int64_t, 4> quartile_counts{0, 0, 0, 0};
    std::int64_t total = 0;
    double proportion = 0; // of the panel's quartile
};

struct QuartilePanels {
    std::vector<SubjectQuartileRow> top_quartile1;
    std::vector<SubjectQuartileRow> top_quartile4;
};

// Restricts to subjects whose journal counts sit in the top size quartile,
// then ranks by quartile-1 and quartile-4 proportions (top_k each).
QuartilePanels quartile_subject_proportions(
    const RankDifferenceResult& rank_diff,
    std::span<const std::vector<SubjectRef>> subjects_per_entry, SubjectScheme scheme,
    double size_fraction = 0.25, std::size_t top_k = 10);

// --- orchestration -----------------------------------------------------------

struct CompareConfig {
    int y1 = 0, y2 = 0;
    std::int64_t crosswalk_threshold = 200;
    std::size_t min_publisher_journals = 5;
    double subject_size_fraction = 0.25;
    std::size_t panel_top_k = 10;
};

struct EcdfDiffSeries {
    std::string indicator;
    std::vector<double> grid;
    std::vector<double> diff; // F_y2 - F_y1
};

struct DescriptiveRow {
    int year = 0;
    std::string indicator;
    DescriptiveStats stats; // over defined values only
};

struct CompareOutputs {
    MatchedJournalSet matched;
    std::vector<DescriptiveRow> descriptives;
    std::vector<ConcordancePair> concordance_y1, concordance_y2;
    std::vector<QuadrantLabel> quad_raw_y1, quad_raw_y2;
    std::vector<QuadrantLabel> quad_norm_y1, quad_norm_y2;
    std::optional<RankDifferenceResult> rank_diff_y1, rank_diff_y2;
    std::vector<EcdfDiffSeries> ecdf_diffs;
    std::vector<CrosswalkEdge> crosswalk;
    std::vector<TrendResult> trends;
    std::vector<PublisherShift> publisher_shift;
    std::map<SubjectScheme, QuartilePanels> panels_y1, panels_y2;
};

// registry may be null: the subject analyses are then skipped.
CompareOutputs run_compare(std::span<const SourceTable> tables, const Corpus* registry,
                           const CompareConfig& cfg);

} // namespace impactum
