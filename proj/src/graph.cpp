#include "impactum/graph.hpp"

#include "impactum/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace impactum {

CitationGraph CitationGraph::build(const Corpus& corpus) {
    CitationGraph g;
    g.corpus_ = &corpus;
    auto papers = corpus.papers();
    const std::size_t n = papers.size();

    g.m_.resize(n);
    g.year_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = papers[i];
        if (p.declared_ref_count && *p.declared_ref_count > 0)
            g.m_[i] = static_cast<int>(*p.declared_ref_count);
        else if (!p.references.empty())
            g.m_[i] = static_cast<int>(p.references.size());
        else
            g.m_[i] = 1;
        g.year_[i] = p.year;
    }

    // Pass 1: resolve reference lists, dedup targets per citing paper.
    std::vector<std::pair<PaperIdx, PaperIdx>> edges; // (citing, cited)
    std::vector<PaperIdx> targets;
    for (std::uint32_t citing = 0; citing < n; ++citing) {
        targets.clear();
        for (const auto& ref : papers[citing].references) {
            ++g.stats_.references_seen;
            auto t = corpus.find_paper(ref);
            if (!t) {
                ++g.stats_.unresolved;
                continue;
            }
            if (*t == citing) {
                ++g.stats_.self_loops_dropped;
                continue;
            }
            if (std::find(targets.begin(), targets.end(), *t) != targets.end()) {
                ++g.stats_.duplicates_collapsed;
                continue;
            }
            targets.push_back(*t);
            edges.emplace_back(citing, *t);
            ++g.stats_.edges_resolved;
        }
    }

    // Pass 2: external edge supplement. Weight comes from the citing paper's
    // m; a bare citing paper (no references, no declared count) has m = 1.
    {
        std::vector<std::pair<PaperIdx, PaperIdx>> sorted_edges(edges);
        std::sort(sorted_edges.begin(), sorted_edges.end());
        auto exists = [&sorted_edges](PaperIdx a, PaperIdx b) {
            return std::binary_search(sorted_edges.begin(), sorted_edges.end(), std::make_pair(a, b));
        };
        for (const auto& [citing_key, cited_key] : corpus.external_edges()) {
            ++g.stats_.references_seen;
            auto citing = corpus.find_paper(citing_key);
            auto cited = corpus.find_paper(cited_key);
            if (!citing || !cited) {
                ++g.stats_.unresolved;
                continue;
            }
            if (*citing == *cited) {
                ++g.stats_.self_loops_dropped;
                continue;
            }
            if (exists(*citing, *cited)) {
                ++g.stats_.duplicates_collapsed;
                continue;
            }
            edges.emplace_back(*citing, *cited);
            ++g.stats_.edges_resolved;
        }
    }

    // External rows can duplicate each other after resolution (e.g. an id and
    // a DOI naming the same pair); collapse once more for a canonical set.
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    auto removed = std::distance(last, edges.end());
    if (removed > 0) {
        g.stats_.duplicates_collapsed += removed;
        g.stats_.edges_resolved -= removed;
        edges.erase(last, edges.end());
    }

    // CSR by citing paper (out) and by cited paper (in). Edges are sorted by
    // (citing, cited); filling in-lists in that order leaves every in-list
    // ordered by citing index, i.e. by citing paper id.
    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const auto& [citing, cited] : edges) {
        ++g.out_offsets_[citing + 1];
        ++g.in_offsets_[cited + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) {
        g.out_offsets_[i] += g.out_offsets_[i - 1];
        g.in_offsets_[i] += g.in_offsets_[i - 1];
    }
    g.out_targets_.resize(edges.size());
    g.in_edges_.resize(edges.size());
    std::vector<std::uint64_t> out_cur(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    std::vector<std::uint64_t> in_cur(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (const auto& [citing, cited] : edges) {
        g.out_targets_[out_cur[citing]++] = cited;
        g.in_edges_[in_cur[cited]++] = InEdge{citing, 1.0 / g.m_[citing]};
    }
    return g;
}

double CitationGraph::fractional_count(PaperIdx cited, YearWindow w) const {
    if (w.empty()) throw std::invalid_argument("citation window is empty");
    double sum = 0.0;
    for (const auto& e : in_edges(cited))
        if (w.contains(year_[e.citing])) sum += e.weight;
    return sum;
}

std::int64_t CitationGraph::integer_count(PaperIdx cited, YearWindow w) const {
    if (w.empty()) throw std::invalid_argument("citation window is empty");
    std::int64_t sum = 0;
    for (const auto& e : in_edges(cited))
        if (w.contains(year_[e.citing])) ++sum;
    return sum;
}

double CitationGraph::fractional_count_of(std::string_view key, YearWindow w) const {
    auto p = corpus_->find_paper(key);
    if (!p) throw std::invalid_argument("unknown paper key: " + std::string(key));
    return fractional_count(*p, w);
}

std::int64_t CitationGraph::integer_count_of(std::string_view key, YearWindow w) const {
    auto p = corpus_->find_paper(key);
    if (!p) throw std::invalid_argument("unknown paper key: " + std::string(key));
    return integer_count(*p, w);
}

std::vector<double> CitationGraph::fractional_counts(YearWindow w, int threads) const {
    const std::int64_t n = static_cast<std::int64_t>(corpus_->papers().size());
    std::vector<double> out(n, 0.0);
    const int t = resolve_threads(threads);
    (void)t;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(t)
#endif
    for (std::int64_t p = 0; p < n; ++p) {
        double sum = 0.0;
        auto lo = in_offsets_[p], hi = in_offsets_[p + 1];
        for (auto k = lo; k < hi; ++k)
            if (w.contains(year_[in_edges_[k].citing])) sum += in_edges_[k].weight;
        out[p] = sum;
    }
    return out;
}

std::vector<std::int64_t> CitationGraph::integer_counts(YearWindow w, int threads) const {
    const std::int64_t n = static_cast<std::int64_t>(corpus_->papers().size());
    std::vector<std::int64_t> out(n, 0);
    const int t = resolve_threads(threads);
    (void)t;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(t)
#endif
    for (std::int64_t p = 0; p < n; ++p) {
        std::int64_t sum = 0;
        auto lo = in_offsets_[p], hi = in_offsets_[p + 1];
        for (auto k = lo; k < hi; ++k)
            if (w.contains(year_[in_edges_[k].citing])) ++sum;
        out[p] = sum;
    }
    return out;
}

std::vector<std::int64_t> CitationGraph::integer_counts_all_time(int threads) const {
    const std::int64_t n = static_cast<std::int64_t>(corpus_->papers().size());
    std::vector<std::int64_t> out(n, 0);
    const int t = resolve_threads(threads);
    (void)t;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(t)
#endif
    for (std::int64_t p = 0; p < n; ++p)
        out[p] = static_cast<std::int64_t>(in_offsets_[p + 1] - in_offsets_[p]);
    return out;
}

} // namespace impactum
