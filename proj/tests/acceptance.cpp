// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include "impactum/compare.hpp"
#include "impactum/corpus.hpp"
#include "impactum/graph.hpp"
#include "impactum/indicators.hpp"
#include "impactum/oracle.hpp"
#include "impactum/parallel.hpp"
#include "impactum/percentile.hpp"
#include "impactum/stats.hpp"
#include "impactum/synth.hpp"
#include "impactum/table_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

using namespace impactum;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int num, const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", num, name,
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool close_rel(double a, double b, double tol = 1e-9) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * std::max(scale, 1e-30) || a == b;
}

bool close_opt(const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || close_rel(*a, *b);
}

// ---------------------------------------------------------------------------
// Shared 25-corpus sweep feeding criteria 1-4
// ---------------------------------------------------------------------------

struct SweepResult {
    bool equivalence = true;
    bool cap = true;
    bool partition = true;
    bool weights_exact = true;
    bool frac_le_int = true;
    bool fallback_seen = false;
    std::size_t total_papers = 0;
    double seconds = 0;
    int corpora = 0;
    std::string first_failure;
};

synth::GeneratorConfig lognormal_config(std::uint64_t seed, int papers) {
    synth::GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.model = synth::ModelKind::lognormal;
    cfg.n_papers = papers;
    cfg.n_journals = std::max(8, papers / 120);
    cfg.lognormal_sigma = 1.2;
    return cfg;
}

synth::GeneratorConfig planted_config(std::uint64_t seed, int scale) {
    synth::GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.model = synth::ModelKind::planted;
    cfg.tiers = {
        {"mainstream", 10, 2 * scale, 25, 50, 0.85, 1.0, 1.0, 0.0},
        {"niche", 5, scale, 2, 6, 0.75, 1.0, 1.0, 2.0},
        {"elite", 2, scale, 20, 40, 0.3, 1.0, 10.0, 0.0},
    };
    cfg.bare_citer_frac = 0.05;
    return cfg;
}

std::int64_t expected_m(const PaperRecord& p) {
    if (p.declared_ref_count && *p.declared_ref_count > 0) return *p.declared_ref_count;
    if (!p.references.empty()) return static_cast<std::int64_t>(p.references.size());
    return 1;
}

void check_corpus(const synth::GeneratorConfig& cfg, SweepResult& sweep) {
    const int year = cfg.year_last;
    auto sc = synth::generate(cfg);
    Corpus corpus = synth::ingest(sc);
    CitationGraph graph = CitationGraph::build(corpus);
    auto pipeline =
        run_indicator_pipeline(corpus, graph, WindowPolicy::for_year(year), I3Weights{},
                               default_included_types());
    auto expected = oracle::all_indicators(corpus, year);

    sweep.total_papers += corpus.papers().size();
    ++sweep.corpora;
    auto fail = [&sweep, &cfg](const std::string& what) {
        if (sweep.first_failure.empty())
            sweep.first_failure = "seed " + std::to_string(cfg.seed) + ": " + what;
    };

    // criterion 1: engine vs oracle
    for (const auto& row : pipeline.rows) {
        const auto& exp = expected.at(row.journal_id);
        if (row.i3 != exp.i3 || row.n_pubs != exp.n_pubs) {
            sweep.equivalence = false;
            fail("i3 mismatch at " + row.journal_id);
        }
        if (!close_opt(row.i3_n, exp.i3_n) || !close_opt(row.jif, exp.jif) ||
            !close_opt(row.citescore, exp.citescore)) {
            sweep.equivalence = false;
            fail("real-valued mismatch at " + row.journal_id);
        }
        // criterion 2: the cap
        if (row.i3_n && (*row.i3_n < 0.0 || *row.i3_n > 100.0)) {
            sweep.cap = false;
            fail("i3_n outside [0,100] at " + row.journal_id);
        }
    }

    // criterion 3: exhaustive class partition per cohort
    for (const auto& cohort : pipeline.cohorts) {
        auto n = cohort_class_counts(cohort, pipeline.classes);
        if (static_cast<std::size_t>(n[0] + n[1] + n[2] + n[3]) != cohort.size()) {
            sweep.partition = false;
            fail("class partition broken");
        }
    }

    // criterion 4: edge weights are exactly 1/m; bare fallback weight is 1
    for (PaperIdx p = 0; p < corpus.papers().size(); ++p) {
        for (const auto& e : graph.in_edges(p)) {
            if (e.weight != 1.0 / static_cast<double>(expected_m(corpus.papers()[e.citing]))) {
                sweep.weights_exact = false;
                fail("edge weight != 1/m");
            }
        }
        const auto& rec = corpus.papers()[p];
        if (rec.references.empty() && !rec.declared_ref_count && !graph.out_targets(p).empty()) {
            sweep.fallback_seen = true;
            if (graph.edge_weight(p) != 1.0) {
                sweep.weights_exact = false;
                fail("bare fallback weight != 1");
            }
        }
    }
    for (YearWindow w : {YearWindow{year - 3, year}, YearWindow{year - 1, year},
                         YearWindow{1900, 2100}}) {
        auto f = graph.fractional_counts(w);
        auto i = graph.integer_counts(w);
        for (std::size_t p = 0; p < f.size(); ++p)
            if (f[p] > static_cast<double>(i[p]) + 1e-12) {
                sweep.frac_le_int = false;
                fail("fractional > integer");
            }
    }
}

SweepResult run_sweep() {
    SweepResult sweep;
    auto start = std::chrono::steady_clock::now();

    const int lognormal_sizes[] = {1000, 1500, 2000, 2500, 3000, 3500, 4000,
                                   5000, 6000, 8000, 10000, 30000, 100000};
    std::uint64_t seed = 101;
    for (int size : lognormal_sizes) check_corpus(lognormal_config(seed++, size), sweep);

    const int planted_scales[] = {1, 1, 2, 2, 3, 3, 4, 4, 6, 8, 12, 16};
    seed = 201;
    for (int scale : planted_scales) check_corpus(planted_config(seed++, scale), sweep);

    sweep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sweep;
}

// ---------------------------------------------------------------------------
// Criterion 2: adversarial all-top1 journal
// ---------------------------------------------------------------------------

bool adversarial_cap_attained(std::string& detail) {
    // 200-member cohort; the two highest distinct fractional counts belong to
    // journal ELITE, so both its papers sit at percentile >= 99.
    std::ostringstream papers, journals;
    journals << R"({"id":"ELITE","title":"Elite"})" << "\n"
             << R"({"id":"FILLER","title":"Filler"})" << "\n";
    auto paper = [&papers](const std::string& id, int year, const char* type,
                           const std::string& journal, const std::string& refs) {
        papers << "{\"id\":\"" << id << "\",\"doi\":null,\"year\":" << year << ",\"doc_type\":\""
               << type << "\",\"journal_id\":\"" << journal << "\",\"references\":[" << refs
               << "],\"ref_count\":null}\n";
    };
    paper("E001", 2021, "research_article", "ELITE", "");
    paper("E002", 2021, "research_article", "ELITE", "");
    for (int i = 0; i < 198; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "F%03d", i);
        paper(id, 2021, "research_article", "FILLER", "");
    }
    paper("C1", 2023, "research_article", "", "\"E001\"");
    paper("C2", 2023, "research_article", "", "\"E001\"");
    paper("C3", 2023, "research_article", "", "\"E002\"");

    CorpusBuilder b;
    {
        std::istringstream in(journals.str());
        b.ingest_journals(in);
    }
    {
        std::istringstream in(papers.str());
        b.ingest_papers(in);
    }
    Corpus corpus = std::move(b).seal();
    CitationGraph graph = CitationGraph::build(corpus);
    auto pipeline = run_indicator_pipeline(corpus, graph, WindowPolicy::for_year(2024),
                                           I3Weights{}, default_included_types());
    for (const auto& row : pipeline.rows) {
        if (row.journal_id != "ELITE") continue;
        if (!row.i3_n) {
            detail = "elite journal lost its i3_n";
            return false;
        }
        detail = "elite i3_n = " + std::to_string(*row.i3_n);
        return *row.i3_n == 100.0 && row.i3 == 200;
    }
    detail = "elite journal missing";
    return false;
}

// ---------------------------------------------------------------------------
// Criterion 3: the 1000-member distinct-count cohort
// ---------------------------------------------------------------------------

bool thousand_cohort_counts(std::string& detail) {
    std::ostringstream papers;
    for (int i = 0; i < 1000; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "P%04d", i);
        papers << "{\"id\":\"" << id
               << "\",\"doi\":null,\"year\":2021,\"doc_type\":\"research_article\","
                  "\"journal_id\":null,\"references\":[],\"ref_count\":null}\n";
    }
    for (int i = 0; i < 1000; ++i) {
        char cid[16], pid[16];
        std::snprintf(cid, sizeof cid, "C%04d", i);
        std::snprintf(pid, sizeof pid, "P%04d", i);
        // citer of paper i carries a declared bibliography of i+1 entries, so
        // paper i accumulates the distinct fractional count 1/(i+1)
        papers << "{\"id\":\"" << cid
               << "\",\"doi\":null,\"year\":2023,\"doc_type\":\"research_article\","
                  "\"journal_id\":null,\"references\":[\""
               << pid << "\"],\"ref_count\":" << (i + 1) << "}\n";
    }
    CorpusBuilder b;
    {
        std::istringstream in(papers.str());
        b.ingest_papers(in);
    }
    Corpus corpus = std::move(b).seal();
    CitationGraph graph = CitationGraph::build(corpus);
    auto frac = graph.fractional_counts({2021, 2024});
    auto cohorts = build_cohorts(corpus, {2021, 2022}, default_included_types());

    // both cohorts exist: papers (2021) and citers (2023 - outside the window)
    const Cohort* cohort = nullptr;
    for (const auto& c : cohorts)
        if (c.year == 2021 && c.size() == 1000) cohort = &c;
    if (!cohort) {
        detail = "cohort not found";
        return false;
    }
    auto classes = classify_cohorts(corpus, cohorts, frac);
    auto n = cohort_class_counts(*cohort, classes);
    detail = "counts " + std::to_string(n[0]) + "/" + std::to_string(n[1]) + "/" +
             std::to_string(n[2]) + "/" + std::to_string(n[3]);
    return n[0] == 10 && n[1] == 90 && n[2] == 400 && n[3] == 500;
}

// ---------------------------------------------------------------------------
// Criterion 5: stat kernels against naive references
// ---------------------------------------------------------------------------

std::vector<double> naive_ranks(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0, equal = 0;
        for (double x : v) {
            if (x < v[i]) ++less;
            else if (x == v[i]) ++equal;
        }
        r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
}

double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

double naive_ccc(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double vx = 0, vy = 0, cov = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
        cov += (x[i] - mx) * (y[i] - my);
    }
    return 2 * (cov / n) / (vx / n + vy / n + (mx - my) * (mx - my));
}

double brute_signed_rank_p(const std::vector<double>& diffs) {
    std::vector<double> mags;
    std::vector<int> signs;
    for (double d : diffs) {
        if (d == 0.0) continue;
        mags.push_back(std::abs(d));
        signs.push_back(d > 0 ? 1 : -1);
    }
    int n = static_cast<int>(mags.size());
    if (n == 0) return 1.0;
    auto ranks = naive_ranks(mags);
    std::vector<long> dr(n);
    long total = 0;
    for (int i = 0; i < n; ++i) {
        dr[i] = std::lround(2.0 * ranks[i]);
        total += dr[i];
    }
    long obs = 0;
    for (int i = 0; i < n; ++i)
        if (signs[i] > 0) obs += dr[i];
    long obs_dev = std::labs(2 * obs - total);
    long extreme = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        long w = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) w += dr[i];
        if (std::labs(2 * w - total) >= obs_dev) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(1u << n);
}

bool stat_kernels_ok(std::string& detail) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // 1000 random 100-point samples within 1e-12 of the naive references
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> x, y;
        for (int i = 0; i < 100; ++i) {
            double a = u(rng), b = u(rng);
            if (rep % 4 == 0) { // tie-heavy samples every fourth repetition
                a = std::round(a * 16) / 16;
                b = std::round(b * 16) / 16;
            }
            x.push_back(a);
            y.push_back(b);
        }
        auto s = stats::spearman(x, y);
        auto c = stats::lin_ccc(x, y);
        if (!s || !c) {
            detail = "unexpected undefined statistic";
            return false;
        }
        if (std::abs(*s - naive_pearson(naive_ranks(x), naive_ranks(y))) > 1e-12 ||
            std::abs(*c - naive_ccc(x, y)) > 1e-12) {
            detail = "reference disagreement at rep " + std::to_string(rep);
            return false;
        }
    }

    // exhaustive signed-rank enumeration for n <= 8
    for (int n = 1; n <= 8; ++n) {
        std::vector<double> distinct, ones, mixed;
        for (int i = 1; i <= n; ++i) {
            distinct.push_back(i);
            ones.push_back(1.0);
            mixed.push_back(1.0 + (i / 2));
        }
        for (const auto& mags : {distinct, ones, mixed}) {
            for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
                std::vector<double> diffs;
                for (int i = 0; i < n; ++i)
                    diffs.push_back((pattern & (1u << i)) ? mags[i] : -mags[i]);
                auto lib = stats::wilcoxon_signed_rank(diffs);
                double brute = brute_signed_rank_p(diffs);
                if (lib.method != stats::Method::exact || std::abs(lib.p_value - brute) > 1e-12) {
                    detail = "signed-rank mismatch at n=" + std::to_string(n);
                    return false;
                }
            }
        }
    }

    // CCC shift law within 1e-9
    std::vector<double> x;
    std::normal_distribution<double> g(0.0, 1.7);
    for (int i = 0; i < 500; ++i) x.push_back(g(rng));
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    for (double c : {0.25, 1.0, 2.5, 7.0}) {
        std::vector<double> y;
        for (double v : x) y.push_back(v + c);
        double expect = 2 * var / (2 * var + c * c);
        double got = *stats::lin_ccc(x, y);
        if (std::abs(got - expect) > 1e-9 * std::max(1.0, std::abs(expect))) {
            detail = "shift law off at c=" + std::to_string(c);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 6: rank-difference quartile structure with a planted cluster
// ---------------------------------------------------------------------------

bool quartile_structure_ok(std::string& detail) {
    synth::GeneratorConfig cfg = planted_config(600, 8);
    const int niche_first = 10, niche_count = 5; // journal layout follows tier order
    auto sc = synth::generate(cfg);
    Corpus corpus = synth::ingest(sc);
    CitationGraph graph = CitationGraph::build(corpus);
    auto r1 = run_indicator_pipeline(corpus, graph, WindowPolicy::for_year(2023), I3Weights{},
                                     default_included_types());
    auto r2 = run_indicator_pipeline(corpus, graph, WindowPolicy::for_year(2024), I3Weights{},
                                     default_included_types());
    std::vector<SourceTable> tables;
    tables.push_back(SourceTable::from_corpus(corpus, "y2023", r1.rows));
    tables.push_back(SourceTable::from_corpus(corpus, "y2024", r2.rows));
    auto matched = match_journals(tables);
    auto rd = rank_difference_analysis(matched, 2024);

    std::size_t max_n = 0, min_n = SIZE_MAX;
    for (const auto& q : rd.quartiles) {
        max_n = std::max(max_n, q.n);
        min_n = std::min(min_n, q.n);
    }
    if (max_n - min_n > 1) {
        detail = "quartile sizes differ by more than 1";
        return false;
    }
    for (int q = 1; q < 4; ++q)
        if (rd.quartiles[q].avg_rank_difference < rd.quartiles[q - 1].avg_rank_difference) {
            detail = "mean rank difference not monotone";
            return false;
        }

    auto is_niche = [&](const std::string& key) {
        for (int i = 0; i < niche_count; ++i) {
            char id[16];
            std::snprintf(id, sizeof id, "J%05d", niche_first + i + 1);
            if (key == id) return true;
        }
        return false;
    };
    std::size_t q4_total = 0, q4_niche = 0, pop_niche = 0;
    for (const auto& e : rd.entries) {
        if (is_niche(e.key)) ++pop_niche;
        if (e.quartile == 4) {
            ++q4_total;
            if (is_niche(e.key)) ++q4_niche;
        }
    }
    double pop_share = static_cast<double>(pop_niche) / static_cast<double>(rd.entries.size());
    double q4_share = static_cast<double>(q4_niche) / static_cast<double>(q4_total);
    char buf[128];
    std::snprintf(buf, sizeof buf, "niche share: population %.3f vs quartile-4 %.3f", pop_share,
                  q4_share);
    detail = buf;
    return q4_share > pop_share;
}

// ---------------------------------------------------------------------------
// Criterion 7: hand-built 12-paper micro-corpus
// ---------------------------------------------------------------------------

bool micro_corpus_ok(std::string& detail) {
    std::ostringstream papers, journals;
    journals << R"({"id":"JA","title":"Journal A"})" << "\n"
             << R"({"id":"JB","title":"Journal B"})" << "\n"
             << R"({"id":"JC","title":"Journal C"})" << "\n";
    auto paper = [&papers](const char* id, int year, const char* type, const char* journal,
                           const char* refs) {
        papers << "{\"id\":\"" << id << "\",\"doi\":null,\"year\":" << year << ",\"doc_type\":\""
               << type << "\",\"journal_id\":";
        if (journal) papers << "\"" << journal << "\"";
        else papers << "null";
        papers << ",\"references\":[" << refs << "],\"ref_count\":null}\n";
    };
    // journal A: 2 citable items in {2022,2023}, an editorial, and a 2020 doc
    paper("A1", 2022, "research_article", "JA", "");
    paper("A2", 2023, "research_article", "JA", "");
    paper("A3", 2023, "editorial", "JA", "");
    paper("A4", 2020, "research_article", "JA", "");
    // journal B: only an editorial in the JIF window
    paper("B1", 2022, "editorial", "JB", "");
    // journal C: founded in the indicator year
    paper("CC1", 2024, "research_article", "JC", "");
    paper("CC2", 2024, "letter", "JC", "");
    paper("CC3", 2024, "editorial", "JC", "");
    // citing side, year 2024
    paper("X1", 2024, "research_article", nullptr, "\"A1\"");
    paper("X2", 2024, "research_article", nullptr, "\"A1\"");
    paper("X3", 2024, "research_article", nullptr, "\"A2\"");
    paper("X4", 2024, "research_article", nullptr, "\"B1\"");

    CorpusBuilder b;
    {
        std::istringstream in(journals.str());
        b.ingest_journals(in);
    }
    {
        std::istringstream in(papers.str());
        b.ingest_papers(in);
    }
    Corpus corpus = std::move(b).seal();
    if (corpus.papers().size() != 12) {
        detail = "micro-corpus is not 12 papers";
        return false;
    }
    CitationGraph graph = CitationGraph::build(corpus);
    WindowPolicy policy = WindowPolicy::for_year(2024);

    bool asym_a = false, asym_b = false;
    auto jif_a = compute_jif(graph, *corpus.find_journal_by_id("JA"), policy, &asym_a);
    auto jif_b = compute_jif(graph, *corpus.find_journal_by_id("JB"), policy, &asym_b);
    auto cs_a = compute_citescore(graph, *corpus.find_journal_by_id("JA"), policy);
    auto cs_c = compute_citescore(graph, *corpus.find_journal_by_id("JC"), policy);

    if (!jif_a || *jif_a != 1.5) {
        detail = "JIF(A) != 1.5";
        return false;
    }
    if (!cs_a || *cs_a != 0.75) { // 3 citations to 4 documents of 2020..2023
        detail = "CiteScore(A) != 0.75";
        return false;
    }
    if (jif_b.has_value() || !asym_b) {
        detail = "asymmetry case not flagged";
        return false;
    }
    if (asym_a) {
        detail = "journal A wrongly flagged";
        return false;
    }
    if (cs_c.has_value()) {
        detail = "journal founded in Y should have undefined citescore";
        return false;
    }

    // the oracle agrees on the same micro-corpus
    auto expected = oracle::all_indicators(corpus, 2024);
    if (!close_opt(jif_a, expected.at("JA").jif) || !close_opt(cs_a, expected.at("JA").citescore) ||
        expected.at("JB").jif.has_value()) {
        detail = "oracle disagrees on the micro-corpus";
        return false;
    }
    detail = "JIF(A)=1.5, CiteScore(A)=0.75, JIF(B) undefined+flagged";
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: ECDF machinery
// ---------------------------------------------------------------------------

bool ecdf_ok(std::string& detail) {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> u(0, 5);
    std::vector<double> a;
    for (int i = 0; i < 400; ++i) a.push_back(u(rng));
    std::vector<double> grid(a);
    std::vector<double> shifted;
    for (double v : a) shifted.push_back(v + 1.0);
    grid.insert(grid.end(), shifted.begin(), shifted.end());
    std::sort(grid.begin(), grid.end());

    for (double d : stats::ecdf_diff(a, a, grid))
        if (d != 0.0) {
            detail = "identical samples gave a non-zero difference";
            return false;
        }
    for (double d : stats::ecdf_diff(shifted, a, grid))
        if (d > 0.0) {
            detail = "right shift gave a positive difference";
            return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical pipeline runs via the CLI
// ---------------------------------------------------------------------------

std::map<std::string, std::string> read_dir(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        files[entry.path().filename().string()] = ss.str();
    }
    return files;
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& detail) {
    auto fa = read_dir(a), fb = read_dir(b);
    if (fa.size() != fb.size()) {
        detail = "different file sets";
        return false;
    }
    for (const auto& [name, bytes] : fa) {
        auto it = fb.find(name);
        if (it == fb.end()) {
            detail = "missing file " + name;
            return false;
        }
        if (it->second != bytes) {
            detail = "byte difference in " + name;
            return false;
        }
    }
    return true;
}

bool determinism_ok(std::string& detail) {
    const std::string cli = IMPACTUM_CLI_PATH;
    fs::path root = fs::temp_directory_path() / "impactum_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    auto run = [&cli](const std::string& env_threads, const std::string& args) {
        std::string cmd = "IMPACTUM_THREADS=" + env_threads + " " + cli + " " + args +
                          " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };

    std::string c1 = (root / "c1").string(), c2 = (root / "c2").string();
    if (!run("1", "synth --seed 11 --papers 2500 --journals 24 --out " + c1) ||
        !run("4", "synth --seed 11 --papers 2500 --journals 24 --out " + c2)) {
        detail = "synth run failed";
        return false;
    }
    if (!dirs_identical(c1, c2, detail)) {
        detail = "synth: " + detail;
        return false;
    }

    std::string base = " report --papers " + c1 + "/papers.jsonl --journals " + c1 +
                       "/journals.jsonl --subjects " + c1 + "/subjects.csv --edges " + c1 +
                       "/edges.jsonl --years 2023,2024 --crosswalk-threshold 1 "
                       "--min-publisher-journals 2 --out ";
    std::string r1 = (root / "r1").string(), r2 = (root / "r2").string();
    if (!run("1", base + r1) || !run("4", base + r2)) {
        detail = "report run failed";
        return false;
    }
    if (!dirs_identical(r1, r2, detail)) {
        detail = "report: " + detail;
        return false;
    }

    auto files = read_dir(r1);
    detail = std::to_string(files.size()) + " files byte-identical across IMPACTUM_THREADS=1,4";
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 10: publisher verdict calibration
// ---------------------------------------------------------------------------

bool publisher_calibration_ok(std::string& detail) {
    std::vector<SourceTable> tables(2);
    tables[0].label = "y2023";
    tables[1].label = "y2024";
    auto add = [&tables](const std::string& id, const std::string& publisher, double v1,
                         double v2) {
        SourceJournal j;
        j.journal_id = id;
        j.title = "Journal " + id;
        j.publisher_name = publisher;
        tables[0].journals.push_back(j);
        tables[1].journals.push_back(j);
        IndicatorRow r1;
        r1.journal_id = id;
        r1.year = 2023;
        r1.n_pubs = 10;
        r1.i3_n = v1;
        IndicatorRow r2 = r1;
        r2.year = 2024;
        r2.i3_n = v2;
        tables[0].rows.push_back(r1);
        tables[1].rows.push_back(r2);
    };
    for (int i = 0; i < 25; ++i) {
        double v = 0.8 + 0.15 * i;
        add("S" + std::to_string(100 + i), "ScaledPub", v, 0.885 * v);
    }
    for (int i = 0; i < 25; ++i) {
        double v = 1.1 + 0.12 * i;
        add("U" + std::to_string(100 + i), "StablePub", v, v);
    }
    auto matched = match_journals(tables);
    auto shifts = publisher_distribution(matched, 2023, 2024, 5);
    if (shifts.size() != 2) {
        detail = "expected two publishers";
        return false;
    }
    const auto& scaled = shifts[0].publisher == "ScaledPub" ? shifts[0] : shifts[1];
    const auto& stable = shifts[0].publisher == "StablePub" ? shifts[0] : shifts[1];
    if (!scaled.delta_pct || std::abs(*scaled.delta_pct + 11.5) > 1e-6) {
        detail = "delta != -11.5%";
        return false;
    }
    if (scaled.verdict != "Decrease" || stable.verdict != "Stable") {
        detail = "verdicts wrong: " + scaled.verdict + "/" + stable.verdict;
        return false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "delta %.4f%%, verdicts Decrease/Stable", *scaled.delta_pct);
    detail = buf;
    return true;
}

} // namespace

int main() {
    std::printf("impactum acceptance suite\n");

    SweepResult sweep = run_sweep();
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d corpora, %zu papers, %.1f s%s%s", sweep.corpora,
                      sweep.total_papers, sweep.seconds, sweep.first_failure.empty() ? "" : "; ",
                      sweep.first_failure.c_str());
        report(1, "oracle equivalence on 25 seeded corpora under 60 s",
               sweep.equivalence && sweep.corpora == 25 && sweep.seconds < 60.0, buf);
    }
    {
        std::string detail;
        bool adversarial = adversarial_cap_attained(detail);
        report(2, "I3/N bounded in [0,100] and the cap attained", sweep.cap && adversarial, detail);
    }
    {
        std::string detail;
        bool thousand = thousand_cohort_counts(detail);
        report(3, "class partition exact; 1000-member cohort splits 10/90/400/500",
               sweep.partition && thousand, detail);
    }
    report(4, "edge weights exactly 1/m, bare fallback 1, fractional <= integer",
           sweep.weights_exact && sweep.frac_le_int && sweep.fallback_seen);
    {
        std::string detail;
        bool ok = stat_kernels_ok(detail);
        report(5, "stat kernels vs naive references and exhaustive enumeration", ok, detail);
    }
    {
        std::string detail;
        bool ok = quartile_structure_ok(detail);
        report(6, "rank-difference quartile structure and planted-cluster uplift", ok, detail);
    }
    {
        std::string detail;
        bool ok = micro_corpus_ok(detail);
        report(7, "hand-built 12-paper JIF/CiteScore corpus", ok, detail);
    }
    {
        std::string detail;
        bool ok = ecdf_ok(detail);
        report(8, "ECDF difference: zeros on identity, non-positive on right shift", ok, detail);
    }
    {
        std::string detail;
        bool ok = determinism_ok(detail);
        report(9, "byte-identical pipeline output across IMPACTUM_THREADS", ok, detail);
    }
    {
        std::string detail;
        bool ok = publisher_calibration_ok(detail);
        report(10, "publisher shift calibration (-11.5% Decrease vs Stable)", ok, detail);
    }

    std::printf("%s (%d/10)\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT",
                10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
