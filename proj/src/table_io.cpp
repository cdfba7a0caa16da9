#include "impactum/table_io.hpp"

#include "impactum/csv.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

namespace impactum {

namespace {

const char* kIndicatorHeader = "journal_id,year,n_pubs,i3,i3_n,jif,citescore,h,i10,h5";

std::string scheme_file_tag(SubjectScheme s) {
    switch (s) {
        case SubjectScheme::scilit: return "scilit";
        case SubjectScheme::scopus_asjc: return "scopus_asjc";
        default: return "wos_category";
    }
}

} // namespace

std::string indicators_to_csv(std::span<const IndicatorRow> rows) {
    std::string out(kIndicatorHeader);
    out.push_back('\n');
    for (const auto& r : rows) {
        out += csv::join_row({r.journal_id, csv::fmt_int(r.year), csv::fmt_int(r.n_pubs),
                              csv::fmt_int(r.i3), csv::fmt_opt(r.i3_n), csv::fmt_opt(r.jif),
                              csv::fmt_opt(r.citescore), csv::fmt_int(r.h_index),
                              csv::fmt_int(r.i10_index), csv::fmt_int(r.h5_index)});
    }
    return out;
}

std::string indicators_to_jsonl(std::span<const IndicatorRow> rows) {
    std::string out;
    auto opt = [](const std::optional<double>& v) {
        return v ? csv::fmt_double(*v) : std::string("null");
    };
    for (const auto& r : rows) {
        out += "{\"journal_id\":\"" + r.journal_id + "\",\"year\":" + csv::fmt_int(r.year) +
               ",\"n_pubs\":" + csv::fmt_int(r.n_pubs) + ",\"i3\":" + csv::fmt_int(r.i3) +
               ",\"i3_n\":" + opt(r.i3_n) + ",\"jif\":" + opt(r.jif) +
               ",\"citescore\":" + opt(r.citescore) + ",\"h\":" + csv::fmt_int(r.h_index) +
               ",\"i10\":" + csv::fmt_int(r.i10_index) + ",\"h5\":" + csv::fmt_int(r.h5_index) +
               "}\n";
    }
    return out;
}

std::vector<IndicatorRow> indicators_from_csv(std::istream& in) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next_row(row) || csv::join_row(row) != std::string(kIndicatorHeader) + "\n")
        throw std::runtime_error("indicators csv: unexpected header");

    std::vector<IndicatorRow> rows;
    while (reader.next_row(row)) {
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 10)
            throw std::runtime_error("indicators csv: wrong column count at line " +
                                     std::to_string(reader.row_line()));
        IndicatorRow r;
        r.journal_id = row[0];
        auto need_int = [&reader](const std::string& f, const char* what) {
            auto v = csv::parse_opt_int(f);
            if (!v)
                throw std::runtime_error(std::string("indicators csv: bad ") + what +
                                         " at line " + std::to_string(reader.row_line()));
            return *v;
        };
        r.year = static_cast<int>(need_int(row[1], "year"));
        r.n_pubs = need_int(row[2], "n_pubs");
        r.i3 = need_int(row[3], "i3");
        r.i3_n = csv::parse_opt_double(row[4]);
        r.jif = csv::parse_opt_double(row[5]);
        r.citescore = csv::parse_opt_double(row[6]);
        r.h_index = need_int(row[7], "h");
        r.i10_index = need_int(row[8], "i10");
        r.h5_index = need_int(row[9], "h5");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string citations_to_csv(std::span<const IndicatorRow> rows) {
    std::string out = "journal_id,year,citations\n";
    for (const auto& r : rows)
        if (r.citations)
            out += csv::join_row({r.journal_id, csv::fmt_int(r.year), csv::fmt_int(*r.citations)});
    return out;
}

void apply_citations_csv(std::istream& in, std::vector<IndicatorRow>& rows) {
    csv::Reader reader(in);
    std::vector<std::string> row;
    if (!reader.next_row(row) || row.size() != 3 || row[0] != "journal_id" || row[1] != "year" ||
        row[2] != "citations")
        throw std::runtime_error("citations csv: expected header journal_id,year,citations");
    std::map<std::pair<std::string, int>, std::int64_t> values;
    while (reader.next_row(row)) {
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 3) throw std::runtime_error("citations csv: wrong column count");
        auto year = csv::parse_opt_int(row[1]);
        auto cites = csv::parse_opt_int(row[2]);
        if (!year || !cites) throw std::runtime_error("citations csv: bad numeric field");
        values[{row[0], static_cast<int>(*year)}] = *cites;
    }
    for (auto& r : rows) {
        auto it = values.find({r.journal_id, r.year});
        if (it != values.end()) r.citations = it->second;
    }
}

std::string classifications_to_csv(const Corpus& corpus, std::span<const Cohort> cohorts,
                                   const ClassificationSet& classes) {
    std::string out = "paper_id,year,doc_type,frac_count,percentile,class\n";
    for (const auto& cohort : cohorts) {
        for (PaperIdx p : cohort.members) {
            const auto& rec = corpus.papers()[p];
            out += csv::join_row({rec.id, csv::fmt_int(rec.year), to_string(rec.doc_type),
                                  csv::fmt_double(classes.fractional[p]),
                                  csv::fmt_double(classes.percentile[p]),
                                  to_string(classes.band[p])});
        }
    }
    return out;
}

SourceTable load_source_table(std::string label, std::istream& indicators_csv,
                              const Corpus* registry) {
    SourceTable t;
    t.label = std::move(label);
    t.rows = indicators_from_csv(indicators_csv);

    std::vector<std::string> ids;
    for (const auto& r : t.rows) ids.push_back(r.journal_id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    for (const auto& id : ids) {
        SourceJournal sj;
        sj.journal_id = id;
        bool found = false;
        if (registry) {
            if (auto j = registry->find_journal_by_id(id)) {
                const auto& rec = registry->journals()[*j];
                sj.title = rec.title;
                sj.issn = rec.issn;
                sj.eissn = rec.eissn;
                sj.publisher_id = rec.publisher_id;
                sj.publisher_name = rec.publisher_name;
                found = true;
            }
        }
        if (!found) sj.title = id; // degraded key: id-as-title
        t.journals.push_back(std::move(sj));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Comparison artifact files
// ---------------------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& content, std::vector<std::string>& written) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << content;
    written.push_back(name);
}

std::string descriptives_csv(const std::vector<DescriptiveRow>& rows) {
    std::string s = "year,indicator,n,min,mean,median,max,ci95_low,ci95_high,sd,se\n";
    for (const auto& r : rows) {
        const DescriptiveStats& d = r.stats;
        s += csv::join_row({csv::fmt_int(r.year), r.indicator,
                            csv::fmt_int(static_cast<std::int64_t>(d.n)), csv::fmt_double(d.min),
                            csv::fmt_double(d.mean), csv::fmt_double(d.median),
                            csv::fmt_double(d.max), csv::fmt_double(d.ci95_low),
                            csv::fmt_double(d.ci95_high), csv::fmt_double(d.sd),
                            csv::fmt_double(d.se)});
    }
    return s;
}

std::string concordance_csv(const CompareOutputs& o, const CompareConfig& cfg) {
    std::string s = "year,pair,n,spearman,ccc\n";
    auto emit = [&s](int year, const std::vector<ConcordancePair>& cells) {
        for (const auto& c : cells)
            s += csv::join_row({csv::fmt_int(year), c.pair, csv::fmt_int(static_cast<std::int64_t>(c.n)),
                                csv::fmt_opt(c.spearman), csv::fmt_opt(c.ccc)});
    };
    emit(cfg.y1, o.concordance_y1);
    emit(cfg.y2, o.concordance_y2);
    return s;
}

std::string quadrant_csv(const std::vector<QuadrantLabel>& labels) {
    std::string s = "journal,quadrant,axis_x,axis_y\n";
    for (const auto& l : labels)
        s += csv::join_row({l.key, to_string(l.quadrant), csv::fmt_double(l.axis_x),
                            csv::fmt_double(l.axis_y)});
    return s;
}

std::string rank_quartiles_csv(const RankDifferenceResult& r) {
    std::string s =
        "quartile,n,avg_outputs,avg_citations,avg_i3n,avg_citescore,avg_pr_i3n,avg_pr_citescore,"
        "avg_rank_difference\n";
    for (const auto& q : r.quartiles) {
        s += csv::join_row({csv::fmt_int(q.quartile), csv::fmt_int(static_cast<std::int64_t>(q.n)),
                            csv::fmt_double(q.avg_outputs), csv::fmt_opt(q.avg_citations),
                            csv::fmt_double(q.avg_i3n), csv::fmt_double(q.avg_citescore),
                            csv::fmt_double(q.avg_pr_i3n), csv::fmt_double(q.avg_pr_citescore),
                            csv::fmt_double(q.avg_rank_difference)});
    }
    return s;
}

std::string crosswalk_csv(const std::vector<CrosswalkEdge>& edges) {
    std::string s = "scheme_a,subject_a,label_a,scheme_b,subject_b,label_b,overlap\n";
    for (const auto& e : edges)
        s += csv::join_row({to_string(e.a.scheme), e.a.id, e.a.label, to_string(e.b.scheme),
                            e.b.id, e.b.label, csv::fmt_int(e.overlap)});
    return s;
}

std::string trends_csv(const std::vector<TrendResult>& trends) {
    std::string s =
        "scilit_subject,scopus_subject,wos_subject,indicator,n,direction,stars,p_value,method,"
        "paired\n";
    for (const auto& t : trends) {
        std::string by_scheme[kSchemeCount];
        for (const auto& sub : t.subjects)
            by_scheme[static_cast<int>(sub.scheme)] = sub.id;
        s += csv::join_row({by_scheme[0], by_scheme[1], by_scheme[2], t.indicator,
                            csv::fmt_int(static_cast<std::int64_t>(t.n)), t.direction, t.stars,
                            csv::fmt_double(t.p_value), stats::to_string(t.method),
                            t.paired ? "true" : "false"});
    }
    return s;
}

std::string publisher_csv(const std::vector<PublisherShift>& shifts) {
    std::string s = "publisher,n_y1,n_y2,median_y1,median_y2,delta_pct,n_paired,p_value,verdict\n";
    for (const auto& p : shifts)
        s += csv::join_row({p.publisher, csv::fmt_int(static_cast<std::int64_t>(p.n_y1)),
                            csv::fmt_int(static_cast<std::int64_t>(p.n_y2)),
                            csv::fmt_double(p.median_y1), csv::fmt_double(p.median_y2),
                            csv::fmt_opt(p.delta_pct),
                            csv::fmt_int(static_cast<std::int64_t>(p.n_paired)),
                            csv::fmt_double(p.p_value), p.verdict});
    return s;
}

std::string ecdf_csv(const std::vector<EcdfDiffSeries>& series) {
    std::string s = "indicator,value,diff\n";
    for (const auto& e : series)
        for (std::size_t i = 0; i < e.grid.size(); ++i)
            s += csv::join_row({e.indicator, csv::fmt_double(e.grid[i]), csv::fmt_double(e.diff[i])});
    return s;
}

std::string panels_csv(const QuartilePanels& panels) {
    std::string s = "panel,rank,subject_id,subject_label,total,q1,q2,q3,q4,proportion\n";
    auto emit = [&s](const char* panel, const std::vector<SubjectQuartileRow>& rows) {
        int rank = 0;
        for (const auto& r : rows) {
            ++rank;
            s += csv::join_row({panel, csv::fmt_int(rank), r.subject.id, r.subject.label,
                                csv::fmt_int(r.total), csv::fmt_int(r.quartile_counts[0]),
                                csv::fmt_int(r.quartile_counts[1]), csv::fmt_int(r.quartile_counts[2]),
                                csv::fmt_int(r.quartile_counts[3]), csv::fmt_double(r.proportion)});
        }
    };
    emit("quartile1", panels.top_quartile1);
    emit("quartile4", panels.top_quartile4);
    return s;
}

std::string matched_csv(const MatchedJournalSet& m) {
    std::string s = "journal,match_key,publisher\n";
    for (const auto& e : m.entries)
        s += csv::join_row({e.key, to_string(e.match_key_used), e.publisher});
    return s;
}

} // namespace

std::vector<std::string> write_compare_outputs(const CompareOutputs& o, const CompareConfig& cfg,
                                               const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::path dir(out_dir);
    fs::create_directories(dir);
    std::vector<std::string> written;

    write_file(dir, "matched_journals.csv", matched_csv(o.matched), written);
    write_file(dir, "descriptive_stats.csv", descriptives_csv(o.descriptives), written);
    write_file(dir, "concordance.csv", concordance_csv(o, cfg), written);
    write_file(dir, "quadrants_raw_" + std::to_string(cfg.y1) + ".csv", quadrant_csv(o.quad_raw_y1),
               written);
    write_file(dir, "quadrants_raw_" + std::to_string(cfg.y2) + ".csv", quadrant_csv(o.quad_raw_y2),
               written);
    write_file(dir, "quadrants_norm_" + std::to_string(cfg.y1) + ".csv",
               quadrant_csv(o.quad_norm_y1), written);
    write_file(dir, "quadrants_norm_" + std::to_string(cfg.y2) + ".csv",
               quadrant_csv(o.quad_norm_y2), written);
    if (o.rank_diff_y1)
        write_file(dir, "rank_quartiles_" + std::to_string(cfg.y1) + ".csv",
                   rank_quartiles_csv(*o.rank_diff_y1), written);
    if (o.rank_diff_y2)
        write_file(dir, "rank_quartiles_" + std::to_string(cfg.y2) + ".csv",
                   rank_quartiles_csv(*o.rank_diff_y2), written);
    write_file(dir, "crosswalk_edges.csv", crosswalk_csv(o.crosswalk), written);
    write_file(dir, "subject_trends.csv", trends_csv(o.trends), written);
    write_file(dir, "publisher_shift.csv", publisher_csv(o.publisher_shift), written);
    write_file(dir, "ecdf_diff.csv", ecdf_csv(o.ecdf_diffs), written);
    for (const auto& [scheme, panels] : o.panels_y1)
        write_file(dir,
                   "quartile_subject_proportions_" + scheme_file_tag(scheme) + "_" +
                       std::to_string(cfg.y1) + ".csv",
                   panels_csv(panels), written);
    for (const auto& [scheme, panels] : o.panels_y2)
        write_file(dir,
                   "quartile_subject_proportions_" + scheme_file_tag(scheme) + "_" +
                       std::to_string(cfg.y2) + ".csv",
                   panels_csv(panels), written);
    return written;
}

} // namespace impactum
