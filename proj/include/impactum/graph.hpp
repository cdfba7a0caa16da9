#pragma once

#include "impactum/corpus.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace impactum {

struct YearWindow {
    int first = 0;
    int last = 0;
    bool contains(int y) const { return y >= first && y <= last; }
    bool empty() const { return last < first; }
};

struct ResolutionStats {
    std::int64_t references_seen = 0; // raw reference entries + external edge rows
    std::int64_t edges_resolved = 0;
    std::int64_t unresolved = 0;
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_collapsed = 0; // same (citing, cited) seen again

    bool reconciles() const {
        return references_seen ==
               edges_resolved + unresolved + self_loops_dropped + duplicates_collapsed;
    }
};

// Resolved citation edges over a sealed corpus. Every edge from one citing
// paper carries the identical weight 1/m. In-edge lists are ordered by
// citing paper id, which fixes the floating-point accumulation order.
class CitationGraph {
public:
    struct InEdge {
        PaperIdx citing;
        double weight;
    };

    static CitationGraph build(const Corpus& corpus);

    const ResolutionStats& stats() const { return stats_; }
    std::size_t edge_count() const { return in_edges_.size(); }

    // m: the declared bibliography size when present and > 0, else the
    // number of listed reference entries, else 1.
    int effective_reference_count(PaperIdx p) const { return m_[p]; }
    double edge_weight(PaperIdx citing) const { return 1.0 / m_[citing]; }

    std::span<const InEdge> in_edges(PaperIdx cited) const {
        auto lo = in_offsets_[cited], hi = in_offsets_[cited + 1];
        return {in_edges_.data() + lo, hi - lo};
    }
    // Distinct resolved targets of one citing paper, ascending.
    std::span<const PaperIdx> out_targets(PaperIdx citing) const {
        auto lo = out_offsets_[citing], hi = out_offsets_[citing + 1];
        return {out_targets_.data() + lo, hi - lo};
    }

    double fractional_count(PaperIdx cited, YearWindow citing_years) const;
    std::int64_t integer_count(PaperIdx cited, YearWindow citing_years) const;

    // Lookup by paper id or DOI; throws std::invalid_argument on unknown keys.
    double fractional_count_of(std::string_view id_or_doi, YearWindow citing_years) const;
    std::int64_t integer_count_of(std::string_view id_or_doi, YearWindow citing_years) const;

    // Bulk kernels: one value per corpus paper. Parallel over cited papers;
    // per-paper accumulation order is fixed, so results are independent of
    // the thread count.
    std::vector<double> fractional_counts(YearWindow citing_years, int threads = 0) const;
    std::vector<std::int64_t> integer_counts(YearWindow citing_years, int threads = 0) const;
    std::vector<std::int64_t> integer_counts_all_time(int threads = 0) const;

    const Corpus& corpus() const { return *corpus_; }

private:
    const Corpus* corpus_ = nullptr;
    std::vector<int> m_;
    std::vector<int> year_; // citing-side year cache
    std::vector<std::uint64_t> in_offsets_;
    std::vector<InEdge> in_edges_;
    std::vector<std::uint64_t> out_offsets_;
    std::vector<PaperIdx> out_targets_;
    ResolutionStats stats_;
};

} // namespace impactum
