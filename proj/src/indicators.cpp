#include "impactum/indicators.hpp"

#include "impactum/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace impactum {

namespace {

bool is_citable(DocType t) {
    return t == DocType::research_article || t == DocType::review_article;
}

std::int64_t h_from_counts(std::vector<std::int64_t>& counts) {
    std::sort(counts.begin(), counts.end(), std::greater<>());
    std::int64_t h = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] >= static_cast<std::int64_t>(i + 1)) h = static_cast<std::int64_t>(i + 1);
        else break;
    }
    return h;
}

} // namespace

DescriptiveStats describe(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("describe: empty input");
    DescriptiveStats s;
    s.n = values.size();
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    double sum = 0;
    for (double v : sorted) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    s.median = (s.n % 2 == 1) ? sorted[s.n / 2]
                              : (sorted[s.n / 2 - 1] + sorted[s.n / 2]) / 2.0;
    if (s.n > 1) {
        double ss = 0;
        for (double v : sorted) {
            double d = v - s.mean;
            ss += d * d;
        }
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    s.ci95_low = s.mean - 1.96 * s.se;
    s.ci95_high = s.mean + 1.96 * s.se;
    return s;
}

std::int64_t compute_i3(const Corpus& corpus, const ClassificationSet& classes, JournalIdx j,
                        const WindowPolicy& policy, const I3Weights& weights) {
    (void)policy; // membership is already encoded in the classification set
    std::int64_t i3 = 0;
    for (PaperIdx p : corpus.journal_papers(j))
        if (classes.in_cohort[p]) i3 += weights.of(classes.band[p]);
    return i3;
}

std::optional<double> compute_i3n(const Corpus& corpus, const ClassificationSet& classes,
                                  JournalIdx j, const WindowPolicy& policy,
                                  const I3Weights& weights) {
    std::int64_t i3 = 0, n = 0;
    for (PaperIdx p : corpus.journal_papers(j)) {
        if (!classes.in_cohort[p]) continue;
        i3 += weights.of(classes.band[p]);
        ++n;
    }
    (void)policy;
    if (n == 0) return std::nullopt;
    return static_cast<double>(i3) / static_cast<double>(n);
}

std::optional<double> compute_jif(const CitationGraph& graph, JournalIdx j,
                                  const WindowPolicy& policy, bool* asymmetry) {
    const Corpus& corpus = graph.corpus();
    YearWindow cite{policy.jif_cite_year, policy.jif_cite_year};
    std::int64_t num = 0, den = 0;
    for (PaperIdx p : corpus.journal_papers(j)) {
        const auto& rec = corpus.papers()[p];
        if (!policy.jif_item_years.contains(rec.year)) continue;
        num += graph.integer_count(p, cite);
        if (is_citable(rec.doc_type)) ++den;
    }
    if (asymmetry) *asymmetry = (den == 0 && num > 0);
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> compute_citescore(const CitationGraph& graph, JournalIdx j,
                                        const WindowPolicy& policy) {
    const Corpus& corpus = graph.corpus();
    YearWindow cite{policy.citescore_cite_year, policy.citescore_cite_year};
    std::int64_t num = 0, den = 0;
    for (PaperIdx p : corpus.journal_papers(j)) {
        const auto& rec = corpus.papers()[p];
        if (!policy.citescore_item_years.contains(rec.year)) continue;
        num += graph.integer_count(p, cite);
        ++den;
    }
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::tuple<std::int64_t, std::int64_t, std::int64_t> compute_h_family(const CitationGraph& graph,
                                                                      JournalIdx j, int year) {
    const Corpus& corpus = graph.corpus();
    std::vector<std::int64_t> all, recent;
    std::int64_t i10 = 0;
    for (PaperIdx p : corpus.journal_papers(j)) {
        std::int64_t c = static_cast<std::int64_t>(graph.in_edges(p).size());
        all.push_back(c);
        if (c >= 10) ++i10;
        int y = corpus.papers()[p].year;
        if (y >= year - 4 && y <= year) recent.push_back(c);
    }
    return {h_from_counts(all), i10, h_from_counts(recent)};
}

std::vector<IndicatorRow> compute_indicator_table(const Corpus& corpus, const CitationGraph& graph,
                                                  const ClassificationSet& classes,
                                                  const WindowPolicy& policy,
                                                  const I3Weights& weights, int threads) {
    if (!weights.valid())
        throw std::invalid_argument("I3 weights must be non-negative and non-increasing");

    const std::int64_t nj = static_cast<std::int64_t>(corpus.journals().size());
    std::vector<IndicatorRow> rows(nj);

    std::vector<std::int64_t> jif_year_counts =
        graph.integer_counts({policy.jif_cite_year, policy.jif_cite_year}, threads);
    std::vector<std::int64_t> cs_year_counts =
        policy.citescore_cite_year == policy.jif_cite_year
            ? jif_year_counts
            : graph.integer_counts({policy.citescore_cite_year, policy.citescore_cite_year},
                                   threads);
    std::vector<std::int64_t> i3_window_counts = graph.integer_counts(policy.i3_cite_years, threads);

    const int t = resolve_threads(threads);
    (void)t;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(t)
#endif
    for (std::int64_t j = 0; j < nj; ++j) {
        IndicatorRow& row = rows[j];
        row.journal_id = corpus.journals()[j].id;
        row.year = policy.indicator_year;

        std::int64_t jif_num = 0, jif_den = 0, cs_num = 0, cs_den = 0, cites = 0;
        std::vector<std::int64_t> all_counts, recent_counts;
        for (PaperIdx p : corpus.journal_papers(static_cast<JournalIdx>(j))) {
            const auto& rec = corpus.papers()[p];
            if (classes.in_cohort[p]) {
                row.i3 += weights.of(classes.band[p]);
                ++row.n_pubs;
                cites += i3_window_counts[p];
            }
            if (policy.jif_item_years.contains(rec.year)) {
                jif_num += jif_year_counts[p];
                if (is_citable(rec.doc_type)) ++jif_den;
            }
            if (policy.citescore_item_years.contains(rec.year)) {
                cs_num += cs_year_counts[p];
                ++cs_den;
            }
            std::int64_t c = static_cast<std::int64_t>(graph.in_edges(p).size());
            all_counts.push_back(c);
            if (c >= 10) ++row.i10_index;
            if (rec.year >= policy.indicator_year - 4 && rec.year <= policy.indicator_year)
                recent_counts.push_back(c);
        }
        row.citations = cites;
        if (row.n_pubs > 0)
            row.i3_n = static_cast<double>(row.i3) / static_cast<double>(row.n_pubs);
        if (jif_den > 0) row.jif = static_cast<double>(jif_num) / static_cast<double>(jif_den);
        row.jif_asymmetry = (jif_den == 0 && jif_num > 0);
        if (cs_den > 0) row.citescore = static_cast<double>(cs_num) / static_cast<double>(cs_den);
        row.h_index = h_from_counts(all_counts);
        row.h5_index = h_from_counts(recent_counts);
    }
    // Journals are sealed in id order, so rows are already canonically sorted.
    return rows;
}

PipelineResult run_indicator_pipeline(const Corpus& corpus, const CitationGraph& graph,
                                      const WindowPolicy& policy, const I3Weights& weights,
                                      const std::set<DocType>& included_types, int threads) {
    PipelineResult out;
    std::vector<double> frac = graph.fractional_counts(policy.i3_cite_years, threads);
    out.cohorts = build_cohorts(corpus, policy.i3_pub_years, included_types);
    out.classes = classify_cohorts(corpus, out.cohorts, frac, threads);
    out.rows = compute_indicator_table(corpus, graph, out.classes, policy, weights, threads);
    return out;
}

} // namespace impactum
