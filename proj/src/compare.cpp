#include "impactum/compare.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace impactum {

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::optional<double> indicator_value(const IndicatorRow& row, std::string_view name) {
    if (name == "i3") return static_cast<double>(row.i3);
    if (name == "i3_n") return row.i3_n;
    if (name == "jif") return row.jif;
    if (name == "citescore") return row.citescore;
    throw std::invalid_argument("unknown indicator name: " + std::string(name));
}

} // namespace

const char* to_string(MatchKey k) {
    switch (k) {
        case MatchKey::issn: return "issn";
        case MatchKey::eissn: return "eissn";
        default: return "title";
    }
}

const char* to_string(Quadrant q) {
    switch (q) {
        case Quadrant::q1: return "Q1";
        case Quadrant::q2: return "Q2";
        case Quadrant::q3: return "Q3";
        default: return "Q4";
    }
}

std::string normalize_title(std::string_view title) {
    std::string out;
    out.reserve(title.size());
    for (char c : title) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

SourceTable SourceTable::from_corpus(const Corpus& corpus, std::string label,
                                     std::vector<IndicatorRow> rows) {
    SourceTable t;
    t.label = std::move(label);
    t.rows = std::move(rows);
    t.journals.reserve(corpus.journals().size());
    for (const auto& j : corpus.journals())
        t.journals.push_back(SourceJournal{j.id, j.title, j.issn, j.eissn, j.publisher_id,
                                           j.publisher_name});
    return t;
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

namespace {

struct TableIndex {
    std::unordered_map<std::string, std::vector<std::uint32_t>> issn, eissn, title;
    std::unordered_map<std::string, std::vector<const IndicatorRow*>> rows_by_journal;
};

TableIndex index_table(const SourceTable& t) {
    TableIndex ix;
    auto add = [](auto& map, const std::string& key, std::uint32_t j) {
        auto& v = map[key];
        if (std::find(v.begin(), v.end(), j) == v.end()) v.push_back(j);
    };
    for (std::uint32_t j = 0; j < t.journals.size(); ++j) {
        for (const auto& k : t.journals[j].issn) add(ix.issn, k, j);
        for (const auto& k : t.journals[j].eissn) add(ix.eissn, k, j);
        std::string nt = normalize_title(t.journals[j].title);
        if (!nt.empty()) add(ix.title, nt, j);
    }
    for (const auto& r : t.rows) ix.rows_by_journal[r.journal_id].push_back(&r);
    return ix;
}

enum class ResolveState { matched, none, ambiguous };

struct Resolve {
    ResolveState state = ResolveState::none;
    MatchKey key = MatchKey::issn;
    std::uint32_t journal = 0;
};

Resolve resolve_against(const SourceJournal& base, const TableIndex& ix) {
    auto lookup = [](const auto& map, const std::vector<std::string>& keys) {
        std::vector<std::uint32_t> candidates;
        for (const auto& k : keys) {
            auto it = map.find(k);
            if (it == map.end()) continue;
            for (auto j : it->second)
                if (std::find(candidates.begin(), candidates.end(), j) == candidates.end())
                    candidates.push_back(j);
        }
        return candidates;
    };

    if (auto c = lookup(ix.issn, base.issn); c.size() == 1)
        return {ResolveState::matched, MatchKey::issn, c[0]};
    if (auto c = lookup(ix.eissn, base.eissn); c.size() == 1)
        return {ResolveState::matched, MatchKey::eissn, c[0]};
    std::string nt = normalize_title(base.title);
    if (!nt.empty()) {
        auto it = ix.title.find(nt);
        if (it != ix.title.end()) {
            if (it->second.size() == 1) return {ResolveState::matched, MatchKey::title, it->second[0]};
            return {ResolveState::ambiguous, MatchKey::title, 0};
        }
    }
    return {ResolveState::none, MatchKey::title, 0};
}

} // namespace

MatchedJournalSet match_journals(std::span<const SourceTable> tables) {
    if (tables.size() < 2) throw std::invalid_argument("match_journals: need at least two tables");

    MatchedJournalSet out;
    for (const auto& t : tables) out.sources.push_back(t.label);
    out.unmatched.assign(tables.size(), 0);

    std::vector<TableIndex> ix;
    ix.reserve(tables.size());
    for (const auto& t : tables) ix.push_back(index_table(t));

    std::vector<std::unordered_set<std::uint32_t>> claimed(tables.size());

    const auto& base = tables[0];
    for (std::uint32_t b = 0; b < base.journals.size(); ++b) {
        const SourceJournal& bj = base.journals[b];
        std::vector<std::uint32_t> picks(tables.size(), 0);
        picks[0] = b;
        MatchKey weakest = MatchKey::issn;
        bool ok = true, ambiguous = false;
        for (std::size_t k = 1; k < tables.size(); ++k) {
            Resolve r = resolve_against(bj, ix[k]);
            if (r.state == ResolveState::ambiguous) {
                ambiguous = true;
                break;
            }
            if (r.state == ResolveState::none) {
                ok = false;
                break;
            }
            picks[k] = r.journal;
            if (r.key > weakest) weakest = r.key;
        }
        if (ambiguous) {
            ++out.title_ambiguities;
            continue;
        }
        if (!ok) continue;

        bool collision = false;
        for (std::size_t k = 0; k < tables.size(); ++k)
            if (claimed[k].count(picks[k])) {
                collision = true;
                break;
            }
        if (collision) {
            ++out.claim_collisions;
            continue;
        }
        for (std::size_t k = 0; k < tables.size(); ++k) claimed[k].insert(picks[k]);

        MatchedJournal entry;
        entry.key = bj.journal_id;
        entry.match_key_used = weakest;
        for (std::size_t k = 0; k < tables.size(); ++k) {
            const SourceJournal& sj = tables[k].journals[picks[k]];
            entry.source_ids.push_back(sj.journal_id);
            for (const auto& s : sj.issn)
                if (std::find(entry.issn.begin(), entry.issn.end(), s) == entry.issn.end())
                    entry.issn.push_back(s);
            for (const auto& s : sj.eissn)
                if (std::find(entry.eissn.begin(), entry.eissn.end(), s) == entry.eissn.end())
                    entry.eissn.push_back(s);
            if (entry.publisher.empty()) entry.publisher = sj.publisher_name;
            auto rows_it = ix[k].rows_by_journal.find(sj.journal_id);
            if (rows_it != ix[k].rows_by_journal.end())
                for (const IndicatorRow* r : rows_it->second) entry.rows.emplace(r->year, *r);
        }
        std::sort(entry.issn.begin(), entry.issn.end());
        std::sort(entry.eissn.begin(), entry.eissn.end());
        out.entries.push_back(std::move(entry));
    }

    for (std::size_t k = 0; k < tables.size(); ++k)
        out.unmatched[k] = static_cast<std::int64_t>(tables[k].journals.size()) -
                           static_cast<std::int64_t>(out.entries.size());

    std::sort(out.entries.begin(), out.entries.end(),
              [](const MatchedJournal& a, const MatchedJournal& b) { return a.key < b.key; });
    return out;
}

// ---------------------------------------------------------------------------
// Concordance, quadrants, rank difference
// ---------------------------------------------------------------------------

std::vector<ConcordancePair> concordance_matrix(const MatchedJournalSet& matched, int year) {
    struct PairDef {
        const char* name;
        const char* a;
        const char* b;
    };
    static const PairDef kPairs[] = {
        {"i3n_vs_citescore", "i3_n", "citescore"},
        {"i3n_vs_jif", "i3_n", "jif"},
        {"jif_vs_citescore", "jif", "citescore"},
    };
    std::vector<ConcordancePair> out;
    for (const auto& def : kPairs) {
        std::vector<double> x, y;
        for (const auto& e : matched.entries) {
            const IndicatorRow* row = e.row(year);
            if (!row) continue;
            auto a = indicator_value(*row, def.a);
            auto b = indicator_value(*row, def.b);
            if (a && b) {
                x.push_back(*a);
                y.push_back(*b);
            }
        }
        ConcordancePair cell;
        cell.pair = def.name;
        cell.n = x.size();
        if (x.size() >= 2) {
            cell.spearman = stats::spearman(x, y);
            cell.ccc = stats::lin_ccc(x, y);
        }
        out.push_back(std::move(cell));
    }
    return out;
}

std::vector<QuadrantLabel> quadrant_assess_raw(const MatchedJournalSet& matched, int year) {
    std::vector<const MatchedJournal*> pop;
    std::vector<double> xs, ys;
    for (const auto& e : matched.entries) {
        const IndicatorRow* row = e.row(year);
        if (!row || !row->i3_n) continue;
        pop.push_back(&e);
        xs.push_back(static_cast<double>(row->i3));
        ys.push_back(*row->i3_n);
    }
    std::vector<QuadrantLabel> out;
    if (pop.empty()) return out;
    double mx = median_of(xs), my = median_of(ys);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        bool xa = xs[i] >= mx, ya = ys[i] >= my;
        Quadrant q = xa ? (ya ? Quadrant::q1 : Quadrant::q2) : (ya ? Quadrant::q4 : Quadrant::q3);
        out.push_back(QuadrantLabel{pop[i]->key, q, xs[i], ys[i]});
    }
    return out;
}

std::vector<QuadrantLabel> quadrant_assess_normalized(const MatchedJournalSet& matched, int year) {
    std::vector<const MatchedJournal*> pop;
    std::vector<double> i3, npubs, i3n, cs;
    for (const auto& e : matched.entries) {
        const IndicatorRow* row = e.row(year);
        if (!row || !row->i3_n || !row->citescore) continue;
        pop.push_back(&e);
        i3.push_back(static_cast<double>(row->i3));
        npubs.push_back(static_cast<double>(row->n_pubs));
        i3n.push_back(*row->i3_n);
        cs.push_back(*row->citescore);
    }
    std::vector<QuadrantLabel> out;
    if (pop.empty()) return out;
    auto ni3 = stats::minmax_normalize(i3);
    auto nnp = stats::minmax_normalize(npubs);
    auto ni3n = stats::minmax_normalize(i3n);
    auto ncs = stats::minmax_normalize(cs);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        double scale = ni3[i] - nnp[i];
        double quality = ni3n[i] - ncs[i];
        bool xa = scale >= 0.0, ya = quality >= 0.0;
        Quadrant q = xa ? (ya ? Quadrant::q1 : Quadrant::q2) : (ya ? Quadrant::q4 : Quadrant::q3);
        out.push_back(QuadrantLabel{pop[i]->key, q, scale, quality});
    }
    return out;
}

RankDifferenceResult rank_difference_analysis(const MatchedJournalSet& matched, int year) {
    std::vector<std::size_t> pop;
    std::vector<double> i3n, cs;
    for (std::size_t i = 0; i < matched.entries.size(); ++i) {
        const IndicatorRow* row = matched.entries[i].row(year);
        if (!row || !row->i3_n || !row->citescore) continue;
        pop.push_back(i);
        i3n.push_back(*row->i3_n);
        cs.push_back(*row->citescore);
    }
    if (pop.size() < 4)
        throw std::invalid_argument("rank_difference_analysis: need at least 4 journals");

    auto pr_i3n = stats::percent_rank(i3n);
    auto pr_cs = stats::percent_rank(cs);

    RankDifferenceResult out;
    out.entries.reserve(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        RankDiffEntry e;
        e.entry_index = pop[i];
        e.key = matched.entries[pop[i]].key;
        e.pr_i3n = pr_i3n[i];
        e.pr_citescore = pr_cs[i];
        e.rank_difference = pr_i3n[i] - pr_cs[i];
        out.entries.push_back(std::move(e));
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const RankDiffEntry& a, const RankDiffEntry& b) {
        if (a.rank_difference != b.rank_difference) return a.rank_difference < b.rank_difference;
        return a.key < b.key;
    });

    const std::size_t n = out.entries.size();
    std::size_t base = n / 4, rem = n % 4;
    std::size_t pos = 0;
    for (int q = 0; q < 4; ++q) {
        std::size_t size = base + (static_cast<std::size_t>(q) < rem ? 1 : 0);
        QuartileSummary& s = out.quartiles[q];
        s.quartile = q + 1;
        s.n = size;
        double outputs = 0, sum_i3n = 0, sum_cs = 0, sum_pr_i = 0, sum_pr_c = 0, sum_diff = 0;
        double cites = 0;
        bool cites_known = true;
        for (std::size_t k = 0; k < size; ++k, ++pos) {
            RankDiffEntry& e = out.entries[pos];
            e.quartile = q + 1;
            const IndicatorRow* row = matched.entries[e.entry_index].row(year);
            outputs += static_cast<double>(row->n_pubs);
            if (row->citations) cites += static_cast<double>(*row->citations);
            else cites_known = false;
            sum_i3n += *row->i3_n;
            sum_cs += *row->citescore;
            sum_pr_i += e.pr_i3n;
            sum_pr_c += e.pr_citescore;
            sum_diff += e.rank_difference;
        }
        if (size > 0) {
            double d = static_cast<double>(size);
            s.avg_outputs = outputs / d;
            if (cites_known) s.avg_citations = cites / d;
            s.avg_i3n = sum_i3n / d;
            s.avg_citescore = sum_cs / d;
            s.avg_pr_i3n = sum_pr_i / d;
            s.avg_pr_citescore = sum_pr_c / d;
            s.avg_rank_difference = sum_diff / d;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subjects: crosswalk, trends, quartile panels
// ---------------------------------------------------------------------------

std::vector<std::vector<SubjectRef>> resolve_subjects(const Corpus& registry,
                                                      const MatchedJournalSet& matched) {
    std::vector<std::vector<SubjectRef>> per_journal(registry.journals().size());
    for (const auto& a : registry.subjects()) {
        if (a.journal == kNoIdx) continue;
        per_journal[a.journal].push_back(SubjectRef{a.scheme, a.subject_id, a.subject_label});
    }

    std::vector<std::vector<SubjectRef>> out(matched.entries.size());
    for (std::size_t i = 0; i < matched.entries.size(); ++i) {
        const MatchedJournal& e = matched.entries[i];
        std::optional<JournalIdx> j;
        for (const auto& sid : e.source_ids)
            if ((j = registry.find_journal_by_id(sid))) break;
        if (!j)
            for (const auto& key : e.issn)
                if ((j = registry.find_journal_by_issn(key))) break;
        if (!j)
            for (const auto& key : e.eissn)
                if ((j = registry.find_journal_by_issn(key))) break;
        if (!j) continue;
        auto subs = per_journal[*j];
        std::sort(subs.begin(), subs.end());
        subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
        out[i] = std::move(subs);
    }
    return out;
}

std::vector<CrosswalkEdge> subject_crosswalk(
    std::span<const std::vector<SubjectRef>> subjects_per_entry, std::int64_t threshold) {
    std::map<std::pair<SubjectRef, SubjectRef>, std::int64_t> counts;
    for (const auto& subs : subjects_per_entry) {
        for (std::size_t i = 0; i < subs.size(); ++i)
            for (std::size_t j = i + 1; j < subs.size(); ++j) {
                if (subs[i].scheme == subs[j].scheme) continue;
                ++counts[{subs[i], subs[j]}]; // subjects are sorted by (scheme, id)
            }
    }
    std::vector<CrosswalkEdge> out;
    for (const auto& [pair, overlap] : counts)
        if (overlap > threshold) out.push_back(CrosswalkEdge{pair.first, pair.second, overlap});
    return out;
}

std::vector<std::vector<SubjectRef>> crosswalk_cliques(std::span<const CrosswalkEdge> edges) {
    std::set<SubjectScheme> schemes;
    for (const auto& e : edges) {
        schemes.insert(e.a.scheme);
        schemes.insert(e.b.scheme);
    }
    std::vector<std::vector<SubjectRef>> out;
    if (schemes.size() < 2) return out;
    if (schemes.size() == 2) {
        for (const auto& e : edges) out.push_back({e.a, e.b});
        return out;
    }

    auto sv = std::vector<SubjectScheme>(schemes.begin(), schemes.end());
    auto edges_between = [&edges](SubjectScheme a, SubjectScheme b) {
        std::vector<const CrosswalkEdge*> v;
        for (const auto& e : edges)
            if (e.a.scheme == a && e.b.scheme == b) v.push_back(&e);
        return v;
    };
    auto e01 = edges_between(sv[0], sv[1]);
    auto e02 = edges_between(sv[0], sv[2]);
    std::set<std::pair<SubjectRef, SubjectRef>> e12;
    for (const auto& e : edges)
        if (e.a.scheme == sv[1] && e.b.scheme == sv[2]) e12.insert({e.a, e.b});

    for (const auto* ab : e01)
        for (const auto* ac : e02) {
            if (!(ab->a == ac->a)) continue;
            if (e12.count({ab->b, ac->b})) out.push_back({ab->a, ab->b, ac->b});
        }
    return out;
}

std::optional<TrendResult> subject_trend(std::span<const std::vector<SubjectRef>> subjects_per_entry,
                                         const MatchedJournalSet& matched,
                                         std::span<const SubjectRef> clique,
                                         std::string_view indicator, int y1, int y2) {
    std::vector<double> diffs;
    for (std::size_t i = 0; i < matched.entries.size(); ++i) {
        const auto& subs = subjects_per_entry[i];
        bool carries_all = true;
        for (const auto& s : clique)
            if (!std::binary_search(subs.begin(), subs.end(), s)) {
                carries_all = false;
                break;
            }
        if (!carries_all) continue;
        const IndicatorRow* r1 = matched.entries[i].row(y1);
        const IndicatorRow* r2 = matched.entries[i].row(y2);
        if (!r1 || !r2) continue;
        auto v1 = indicator_value(*r1, indicator);
        auto v2 = indicator_value(*r2, indicator);
        if (v1 && v2) diffs.push_back(*v2 - *v1);
    }
    if (diffs.empty()) return std::nullopt;

    auto test = stats::wilcoxon_signed_rank(diffs);
    double med = median_of(diffs);
    TrendResult t;
    t.subjects.assign(clique.begin(), clique.end());
    t.indicator = std::string(indicator);
    t.n = diffs.size();
    t.direction = med > 0 ? "up" : (med < 0 ? "down" : "flat");
    t.stars = std::string(stats::significance_stars(test.p_value));
    t.p_value = test.p_value;
    t.method = test.method;
    t.paired = true;
    return t;
}

std::vector<PublisherShift> publisher_distribution(const MatchedJournalSet& matched, int y1,
                                                   int y2, std::size_t min_journals) {
    struct Group {
        std::vector<double> v1, v2, diffs;
    };
    std::map<std::string, Group> groups;
    for (const auto& e : matched.entries) {
        if (e.publisher.empty()) continue;
        const IndicatorRow* r1 = e.row(y1);
        const IndicatorRow* r2 = e.row(y2);
        std::optional<double> a = r1 ? r1->i3_n : std::nullopt;
        std::optional<double> b = r2 ? r2->i3_n : std::nullopt;
        if (!a && !b) continue;
        Group& g = groups[e.publisher];
        if (a) g.v1.push_back(*a);
        if (b) g.v2.push_back(*b);
        if (a && b) g.diffs.push_back(*b - *a);
    }

    std::vector<PublisherShift> out;
    for (auto& [name, g] : groups) {
        if (std::min(g.v1.size(), g.v2.size()) < min_journals) continue;
        PublisherShift s;
        s.publisher = name;
        s.n_y1 = g.v1.size();
        s.n_y2 = g.v2.size();
        s.median_y1 = median_of(g.v1);
        s.median_y2 = median_of(g.v2);
        if (s.median_y1 != 0.0)
            s.delta_pct = 100.0 * (s.median_y2 - s.median_y1) / s.median_y1;
        s.n_paired = g.diffs.size();
        if (!g.diffs.empty()) {
            auto test = stats::wilcoxon_signed_rank(g.diffs);
            s.p_value = test.p_value;
            double med = median_of(g.diffs);
            if (test.p_value < 0.05 && med > 0) s.verdict = "Increase";
            else if (test.p_value < 0.05 && med < 0) s.verdict = "Decrease";
            else s.verdict = "Stable";
        } else {
            s.verdict = "Stable";
        }
        out.push_back(std::move(s));
    }
    return out;
}

QuartilePanels quartile_subject_proportions(
    const RankDifferenceResult& rank_diff,
    std::span<const std::vector<SubjectRef>> subjects_per_entry, SubjectScheme scheme,
    double size_fraction, std::size_t top_k) {
    std::map<SubjectRef, SubjectQuartileRow> by_subject;
    for (const auto& e : rank_diff.entries) {
        for (const auto& s : subjects_per_entry[e.entry_index]) {
            if (s.scheme != scheme) continue;
            auto& row = by_subject[s];
            row.subject = s;
            ++row.quartile_counts[e.quartile - 1];
            ++row.total;
        }
    }
    if (by_subject.empty())
        throw std::invalid_argument("quartile_subject_proportions: no assignments for scheme");

    std::vector<SubjectQuartileRow> rows;
    rows.reserve(by_subject.size());
    for (auto& [_, row] : by_subject) rows.push_back(row);

    // Size filter: subjects whose journal counts rank in the top
    // size_fraction of subjects.
    std::sort(rows.begin(), rows.end(), [](const SubjectQuartileRow& a, const SubjectQuartileRow& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.subject.id < b.subject.id;
    });
    std::size_t keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(rows.size()) * size_fraction)));
    rows.resize(std::min(rows.size(), keep));

    auto panel = [&rows, top_k](int quartile) {
        std::vector<SubjectQuartileRow> p(rows);
        for (auto& r : p)
            r.proportion = r.total > 0 ? static_cast<double>(r.quartile_counts[quartile - 1]) /
                                             static_cast<double>(r.total)
                                       : 0.0;
        std::sort(p.begin(), p.end(), [](const SubjectQuartileRow& a, const SubjectQuartileRow& b) {
            if (a.proportion != b.proportion) return a.proportion > b.proportion;
            return a.subject.id < b.subject.id;
        });
        if (p.size() > top_k) p.resize(top_k);
        return p;
    };

    QuartilePanels panels;
    panels.top_quartile1 = panel(1);
    panels.top_quartile4 = panel(4);
    return panels;
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

CompareOutputs run_compare(std::span<const SourceTable> tables, const Corpus* registry,
                           const CompareConfig& cfg) {
    CompareOutputs out;
    out.matched = match_journals(tables);
    const MatchedJournalSet& matched = out.matched;

    out.concordance_y1 = concordance_matrix(matched, cfg.y1);
    out.concordance_y2 = concordance_matrix(matched, cfg.y2);
    out.quad_raw_y1 = quadrant_assess_raw(matched, cfg.y1);
    out.quad_raw_y2 = quadrant_assess_raw(matched, cfg.y2);
    out.quad_norm_y1 = quadrant_assess_normalized(matched, cfg.y1);
    out.quad_norm_y2 = quadrant_assess_normalized(matched, cfg.y2);
    try {
        out.rank_diff_y1 = rank_difference_analysis(matched, cfg.y1);
    } catch (const std::invalid_argument&) {
    }
    try {
        out.rank_diff_y2 = rank_difference_analysis(matched, cfg.y2);
    } catch (const std::invalid_argument&) {
    }

    for (const char* ind : {"i3", "i3_n", "jif", "citescore"}) {
        std::vector<double> v1, v2;
        for (const auto& e : matched.entries) {
            if (const IndicatorRow* r = e.row(cfg.y1))
                if (auto v = indicator_value(*r, ind)) v1.push_back(*v);
            if (const IndicatorRow* r = e.row(cfg.y2))
                if (auto v = indicator_value(*r, ind)) v2.push_back(*v);
        }
        if (!v1.empty()) out.descriptives.push_back({cfg.y1, ind, describe(v1)});
        if (!v2.empty()) out.descriptives.push_back({cfg.y2, ind, describe(v2)});
        if (v1.empty() || v2.empty()) continue;
        EcdfDiffSeries series;
        series.indicator = ind;
        series.grid.insert(series.grid.end(), v1.begin(), v1.end());
        series.grid.insert(series.grid.end(), v2.begin(), v2.end());
        std::sort(series.grid.begin(), series.grid.end());
        series.grid.erase(std::unique(series.grid.begin(), series.grid.end()), series.grid.end());
        series.diff = stats::ecdf_diff(v2, v1, series.grid);
        out.ecdf_diffs.push_back(std::move(series));
    }

    out.publisher_shift = publisher_distribution(matched, cfg.y1, cfg.y2,
                                                 cfg.min_publisher_journals);

    if (registry) {
        auto subjects = resolve_subjects(*registry, matched);
        out.crosswalk = subject_crosswalk(subjects, cfg.crosswalk_threshold);
        auto cliques = crosswalk_cliques(out.crosswalk);
        for (const auto& clique : cliques) {
            for (const char* ind : {"i3_n", "jif", "citescore"}) {
                auto paired = subject_trend(subjects, matched, clique, ind, cfg.y1, cfg.y2);
                if (!paired) continue;
                out.trends.push_back(*paired);

                // Unpaired fallback when year coverage of the paired set is
                // thin relative to either year's defined population.
                std::vector<double> v1, v2;
                for (std::size_t i = 0; i < matched.entries.size(); ++i) {
                    bool carries_all = true;
                    for (const auto& s : clique)
                        if (!std::binary_search(subjects[i].begin(), subjects[i].end(), s)) {
                            carries_all = false;
                            break;
                        }
                    if (!carries_all) continue;
                    if (const IndicatorRow* r = matched.entries[i].row(cfg.y1))
                        if (auto v = indicator_value(*r, ind)) v1.push_back(*v);
                    if (const IndicatorRow* r = matched.entries[i].row(cfg.y2))
                        if (auto v = indicator_value(*r, ind)) v2.push_back(*v);
                }
                double n_paired = static_cast<double>(paired->n);
                bool thin = (!v1.empty() && n_paired / static_cast<double>(v1.size()) < 0.5) ||
                            (!v2.empty() && n_paired / static_cast<double>(v2.size()) < 0.5);
                if (thin && !v1.empty() && !v2.empty()) {
                    auto test = stats::wilcoxon_rank_sum(v2, v1);
                    TrendResult t = *paired;
                    double med = median_of(v2) - median_of(v1);
                    t.n = v1.size() + v2.size();
                    t.direction = med > 0 ? "up" : (med < 0 ? "down" : "flat");
                    t.stars = std::string(stats::significance_stars(test.p_value));
                    t.p_value = test.p_value;
                    t.method = test.method;
                    t.paired = false;
                    out.trends.push_back(std::move(t));
                }
            }
        }

        std::set<SubjectScheme> schemes;
        for (const auto& subs : subjects)
            for (const auto& s : subs) schemes.insert(s.scheme);
        for (auto scheme : schemes) {
            if (out.rank_diff_y1)
                out.panels_y1.emplace(scheme, quartile_subject_proportions(
                                                  *out.rank_diff_y1, subjects, scheme,
                                                  cfg.subject_size_fraction, cfg.panel_top_k));
            if (out.rank_diff_y2)
                out.panels_y2.emplace(scheme, quartile_subject_proportions(
                                                  *out.rank_diff_y2, subjects, scheme,
                                                  cfg.subject_size_fraction, cfg.panel_top_k));
        }
    }
    return out;
}

} // namespace impactum
