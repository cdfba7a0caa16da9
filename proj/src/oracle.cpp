#include "impactum/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace impactum::oracle {

namespace {

struct Naive {
    const Corpus& corpus;
    int year;
    std::vector<std::int64_t> m;
    std::vector<std::vector<std::uint32_t>> citers; // per cited paper, sorted by citing id
    std::vector<double> frac;                       // window {Y-3..Y}
    std::vector<int> weight;                        // class weight of cohort members, -1 outside

    Naive(const Corpus& c, int y, const I3Weights& w) : corpus(c), year(y) {
        auto papers = corpus.papers();
        const std::size_t n = papers.size();
        if (n > kMaxPapers) throw std::invalid_argument("oracle: corpus exceeds the desk-scale cap");

        std::unordered_map<std::string_view, std::uint32_t> by_id, by_doi;
        by_id.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            by_id.emplace(papers[i].id, i);
            if (!papers[i].doi.empty()) by_doi.emplace(papers[i].doi, i);
        }
        auto resolve = [&](const std::string& key) -> std::optional<std::uint32_t> {
            if (auto it = by_id.find(key); it != by_id.end()) return it->second;
            std::string doi = normalize_doi(key);
            if (!doi.empty())
                if (auto it = by_doi.find(doi); it != by_doi.end()) return it->second;
            return std::nullopt;
        };

        m.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            const auto& p = papers[i];
            if (p.declared_ref_count && *p.declared_ref_count > 0) m[i] = *p.declared_ref_count;
            else if (!p.references.empty()) m[i] = static_cast<std::int64_t>(p.references.size());
            else m[i] = 1;
        }

        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs; // (citing, cited)
        for (std::uint32_t i = 0; i < n; ++i)
            for (const auto& ref : papers[i].references)
                if (auto t = resolve(ref); t && *t != i) pairs.emplace_back(i, *t);
        for (const auto& [ck, tk] : corpus.external_edges()) {
            auto a = resolve(ck);
            auto b = resolve(tk);
            if (a && b && *a != *b) pairs.emplace_back(*a, *b);
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

        citers.resize(n);
        for (const auto& [citing, cited] : pairs) citers[cited].push_back(citing);
        for (auto& list : citers)
            std::sort(list.begin(), list.end(), [&papers](std::uint32_t a, std::uint32_t b) {
                return papers[a].id < papers[b].id;
            });

        frac.assign(n, 0.0);
        for (std::uint32_t t = 0; t < n; ++t)
            for (std::uint32_t c2 : citers[t]) {
                int cy = papers[c2].year;
                if (cy >= year - 3 && cy <= year) frac[t] += 1.0 / static_cast<double>(m[c2]);
            }

        // Cohorts: (publication year, doc type) over {Y-3, Y-2}, included types.
        auto included = [](DocType t) {
            return t == DocType::research_article || t == DocType::review_article ||
                   t == DocType::conference_paper || t == DocType::case_report ||
                   t == DocType::clinical_trial;
        };
        std::map<std::pair<int, int>, std::vector<std::uint32_t>> cohorts;
        for (std::uint32_t i = 0; i < n; ++i) {
            const auto& p = papers[i];
            if (p.year != year - 3 && p.year != year - 2) continue;
            if (!included(p.doc_type)) continue;
            cohorts[{p.year, static_cast<int>(p.doc_type)}].push_back(i);
        }

        weight.assign(n, -1);
        for (const auto& [key, members] : cohorts) {
            const double N = static_cast<double>(members.size());
            std::vector<double> sorted;
            if (members.size() > 2048) {
                sorted.reserve(members.size());
                for (auto i : members) sorted.push_back(frac[i]);
                std::sort(sorted.begin(), sorted.end());
            }
            for (auto i : members) {
                std::int64_t below = 0;
                if (sorted.empty()) {
                    for (auto k : members)
                        if (frac[k] < frac[i]) ++below;
                } else {
                    below = std::lower_bound(sorted.begin(), sorted.end(), frac[i]) - sorted.begin();
                }
                double pct = 100.0 * static_cast<double>(below) / N;
                std::int64_t wv;
                if (pct >= 99.0) wv = w.top1;
                else if (pct >= 90.0) wv = w.top10;
                else if (pct >= 50.0) wv = w.top50;
                else wv = w.bottom50;
                weight[i] = static_cast<int>(wv);
            }
        }
    }

    std::int64_t citations_in_year(std::uint32_t paper, int y) const {
        std::int64_t c = 0;
        for (auto citing : citers[paper])
            if (corpus.papers()[citing].year == y) ++c;
        return c;
    }
};

} // namespace

std::map<std::string, OracleIndicators> all_indicators(const Corpus& corpus, int year,
                                                       const I3Weights& weights) {
    Naive nv(corpus, year, weights);
    auto papers = corpus.papers();

    std::map<std::string, OracleIndicators> out;
    std::unordered_map<std::string_view, OracleIndicators*> slot;
    for (const auto& j : corpus.journals()) slot.emplace(j.id, &out[j.id]);

    struct Acc {
        std::int64_t jif_num = 0, jif_den = 0, cs_num = 0, cs_den = 0;
    };
    std::unordered_map<std::string_view, Acc> acc;
    for (auto& [id, ptr] : slot) acc.emplace(id, Acc{});

    for (std::uint32_t i = 0; i < papers.size(); ++i) {
        const auto& p = papers[i];
        if (p.journal_id.empty()) continue;
        auto it = slot.find(p.journal_id);
        if (it == slot.end()) continue; // dangling journal reference
        OracleIndicators& row = *it->second;
        Acc& a = acc[p.journal_id];

        if (nv.weight[i] >= 0) {
            ++row.n_pubs;
            row.i3 += nv.weight[i];
        }
        if (p.year == year - 1 || p.year == year - 2) {
            a.jif_num += nv.citations_in_year(i, year);
            if (p.doc_type == DocType::research_article || p.doc_type == DocType::review_article)
                ++a.jif_den;
        }
        if (p.year >= year - 4 && p.year <= year - 1) {
            a.cs_num += nv.citations_in_year(i, year);
            ++a.cs_den;
        }
    }

    for (auto& [id, row] : out) {
        const Acc& a = acc[id];
        if (row.n_pubs > 0)
            row.i3_n = static_cast<double>(row.i3) / static_cast<double>(row.n_pubs);
        if (a.jif_den > 0) row.jif = static_cast<double>(a.jif_num) / static_cast<double>(a.jif_den);
        if (a.cs_den > 0)
            row.citescore = static_cast<double>(a.cs_num) / static_cast<double>(a.cs_den);
    }
    return out;
}

OracleIndicators indicators(const Corpus& corpus, std::string_view journal_id, int year,
                            const I3Weights& weights) {
    auto table = all_indicators(corpus, year, weights);
    auto it = table.find(std::string(journal_id));
    if (it == table.end()) throw std::invalid_argument("oracle: unknown journal id");
    return it->second;
}

std::map<std::string, double> fractional_counts(const Corpus& corpus, int year) {
    Naive nv(corpus, year, I3Weights{});
    std::map<std::string, double> out;
    auto papers = corpus.papers();
    for (std::uint32_t i = 0; i < papers.size(); ++i) out[papers[i].id] = nv.frac[i];
    return out;
}

} // namespace impactum::oracle
