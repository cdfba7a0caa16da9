#include "impactum/synth.hpp"

#include "impactum/csv.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace impactum::synth {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
}

double Rng::normal() {
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::int64_t Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform();
    } while (p > limit);
    return k - 1;
}

const char* to_string(ModelKind m) {
    switch (m) {
        case ModelKind::lognormal: return "lognormal";
        case ModelKind::powerlaw: return "powerlaw";
        default: return "planted";
    }
}

std::vector<double> default_doc_type_mix() {
    // research, review, conference, case_report, clinical_trial, editorial,
    // letter, book_chapter, other
    return {0.70, 0.08, 0.06, 0.04, 0.01, 0.05, 0.03, 0.02, 0.01};
}

void GeneratorConfig::validate() const {
    if (year_first > year_last) throw std::invalid_argument("synth: empty year range");
    if (model == ModelKind::planted) {
        if (tiers.empty()) throw std::invalid_argument("synth: planted model needs tiers");
        for (const auto& t : tiers) {
            if (t.n_journals <= 0 || t.papers_per_journal_year <= 0)
                throw std::invalid_argument("synth: tier counts must be positive");
            if (t.ref_min < 0 || t.ref_min > t.ref_max)
                throw std::invalid_argument("synth: bad tier reference range");
        }
    } else {
        if (n_journals <= 0 || n_papers <= 0)
            throw std::invalid_argument("synth: counts must be positive");
        if (ref_min < 0 || ref_min > ref_max)
            throw std::invalid_argument("synth: bad reference range");
    }
    if (!doc_type_mix.empty()) {
        if (doc_type_mix.size() != static_cast<std::size_t>(kDocTypeCount))
            throw std::invalid_argument("synth: doc_type_mix needs one weight per type");
        double sum = std::accumulate(doc_type_mix.begin(), doc_type_mix.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("synth: doc_type_mix must sum to 1");
        for (double w : doc_type_mix)
            if (w < 0) throw std::invalid_argument("synth: negative mix weight");
    }
    for (double f : {resolvable_frac, doi_frac, declared_frac, truncated_listing_frac,
                     bare_citer_frac}) {
        if (f < 0.0 || f > 1.0) throw std::invalid_argument("synth: fraction outside [0,1]");
    }
    int lo = model == ModelKind::planted
                 ? std::min_element(tiers.begin(), tiers.end(),
                                    [](const auto& a, const auto& b) { return a.ref_min < b.ref_min; })
                       ->ref_min
                 : ref_min;
    if (resolvable_frac >= 1.0 && lo > 0)
        throw std::invalid_argument(
            "synth: infeasible: fully-resolvable lists demanded but the earliest year has no "
            "eligible targets");
    if (n_publishers <= 0 || subjects_per_scheme <= 0)
        throw std::invalid_argument("synth: publisher/subject pools must be positive");
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    return out;
}

std::string make_issn(int serial) {
    // 7-digit body + mod-11 check digit.
    char body[8];
    std::snprintf(body, sizeof body, "%07d", serial);
    int sum = 0;
    for (int i = 0; i < 7; ++i) sum += (body[i] - '0') * (8 - i);
    int check = (11 - sum % 11) % 11;
    std::string s(body, 7);
    s.push_back(check == 10 ? 'X' : static_cast<char>('0' + check));
    return s;
}

std::string hyphenate_issn(const std::string& s) { return s.substr(0, 4) + "-" + s.substr(4); }

struct PaperDraft {
    std::string id;
    std::string doi;
    int year = 0;
    DocType doc_type = DocType::other;
    int journal = 0;
    int tier = 0;
    bool bare = false;
    int m = 0;
    double attract = 1.0;
    std::vector<std::string> references;
    bool declared = false;
    std::int64_t declared_count = 0;
};

// Append-only attractiveness-weighted pool with per-year prefix boundaries,
// so picks can be restricted to papers strictly before a given year.
struct Pool {
    std::vector<std::uint32_t> papers;
    std::vector<double> cumulative;
    std::vector<std::size_t> year_boundary; // pool size at the start of each year offset

    void mark_year() { year_boundary.push_back(papers.size()); }
    void add(std::uint32_t paper, double weight) {
        papers.push_back(paper);
        cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + weight);
    }
    // Papers from years strictly before year offset `yoff`; 0 if none.
    std::size_t prefix_for(int yoff) const { return year_boundary[yoff]; }
    bool pick(Rng& rng, std::size_t prefix, std::uint32_t& out) const {
        if (prefix == 0) return false;
        double total = cumulative[prefix - 1];
        if (total <= 0.0) return false;
        double u = rng.uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.begin() + prefix, u);
        std::size_t idx = std::min<std::size_t>(it - cumulative.begin(), prefix - 1);
        out = papers[idx];
        return true;
    }
};

} // namespace

SyntheticCorpus generate(const GeneratorConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    const bool planted = cfg.model == ModelKind::planted;
    const int n_years = cfg.year_last - cfg.year_first + 1;
    std::vector<double> mix = cfg.doc_type_mix.empty() ? default_doc_type_mix() : cfg.doc_type_mix;
    std::vector<double> mix_cum(mix.size());
    std::partial_sum(mix.begin(), mix.end(), mix_cum.begin());

    // --- journals ---
    struct JournalDraft {
        std::string id, title, issn, eissn;
        int publisher = 0;
        int tier = 0;
        int field = 0;
    };
    std::vector<JournalDraft> journals;
    if (planted) {
        int idx = 0;
        for (std::size_t t = 0; t < cfg.tiers.size(); ++t)
            for (int k = 0; k < cfg.tiers[t].n_journals; ++k, ++idx)
                journals.push_back({{}, {}, {}, {}, 0, static_cast<int>(t), static_cast<int>(t)});
    } else {
        journals.resize(static_cast<std::size_t>(cfg.n_journals));
    }
    for (std::size_t j = 0; j < journals.size(); ++j) {
        auto& rec = journals[j];
        char buf[24];
        std::snprintf(buf, sizeof buf, "J%05zu", j + 1);
        rec.id = buf;
        rec.title = "Synthetic Journal " + std::to_string(j + 1);
        rec.issn = make_issn(static_cast<int>(1000000 + j));
        rec.eissn = make_issn(static_cast<int>(5000000 + j));
        rec.publisher = static_cast<int>(j % static_cast<std::size_t>(cfg.n_publishers));
        if (!planted) rec.field = static_cast<int>(j % static_cast<std::size_t>(cfg.subjects_per_scheme));
        else rec.field = rec.tier % cfg.subjects_per_scheme;
    }

    // --- paper skeletons, year by year ---
    std::vector<PaperDraft> papers;
    std::vector<int> year_count(n_years, 0);
    if (planted) {
        int per_year = 0;
        for (const auto& t : cfg.tiers) per_year += t.n_journals * t.papers_per_journal_year;
        for (int y = 0; y < n_years; ++y) year_count[y] = per_year;
    } else {
        int base = cfg.n_papers / n_years, rem = cfg.n_papers % n_years;
        for (int y = 0; y < n_years; ++y) year_count[y] = base + (y < rem ? 1 : 0);
    }

    Pool global;
    std::vector<Pool> tier_pool(planted ? cfg.tiers.size() : 0);
    std::vector<std::vector<std::uint32_t>> bare_by_year(n_years);

    std::uint32_t serial = 0;
    for (int yoff = 0; yoff < n_years; ++yoff) {
        global.mark_year();
        for (auto& tp : tier_pool) tp.mark_year();
        const int year = cfg.year_first + yoff;

        std::size_t first_of_year = papers.size();
        if (planted) {
            int jidx = 0;
            for (std::size_t t = 0; t < cfg.tiers.size(); ++t) {
                for (int k = 0; k < cfg.tiers[t].n_journals; ++k, ++jidx)
                    for (int p = 0; p < cfg.tiers[t].papers_per_journal_year; ++p) {
                        PaperDraft d;
                        d.journal = jidx;
                        d.tier = static_cast<int>(t);
                        d.year = year;
                        papers.push_back(std::move(d));
                    }
            }
        } else {
            for (int p = 0; p < year_count[yoff]; ++p) {
                PaperDraft d;
                d.journal = static_cast<int>(rng.uniform_int(0, static_cast<std::int64_t>(journals.size()) - 1));
                d.year = year;
                papers.push_back(std::move(d));
            }
        }

        for (std::size_t i = first_of_year; i < papers.size(); ++i) {
            PaperDraft& d = papers[i];
            ++serial;
            char buf[16];
            std::snprintf(buf, sizeof buf, "P%07u", serial);
            d.id = buf;
            if (rng.uniform() < cfg.doi_frac)
                d.doi = "10.5555/synth." + std::to_string(serial);

            double u = rng.uniform();
            int dt = 0;
            while (dt + 1 < static_cast<int>(mix_cum.size()) && u >= mix_cum[dt]) ++dt;
            d.doc_type = static_cast<DocType>(dt);

            switch (cfg.model) {
                case ModelKind::lognormal:
                    d.attract = std::exp(cfg.lognormal_mu + cfg.lognormal_sigma * rng.normal());
                    break;
                case ModelKind::powerlaw: {
                    double v = 1.0 - rng.uniform(); // (0, 1]
                    d.attract = std::pow(v, -1.0 / cfg.powerlaw_alpha);
                    break;
                }
                case ModelKind::planted: {
                    const auto& tier = cfg.tiers[d.tier];
                    d.attract = std::exp(tier.attract_sigma * rng.normal()) * tier.attract_boost;
                    break;
                }
            }

            d.bare = yoff > 0 && rng.uniform() < cfg.bare_citer_frac;
            if (d.bare) {
                bare_by_year[yoff].push_back(static_cast<std::uint32_t>(i));
            } else {
                int lo = planted ? cfg.tiers[d.tier].ref_min : cfg.ref_min;
                int hi = planted ? cfg.tiers[d.tier].ref_max : cfg.ref_max;
                d.m = static_cast<int>(rng.uniform_int(lo, hi));

                for (int slot = 0; slot < d.m; ++slot) {
                    std::uint32_t target = 0;
                    bool resolved = false;
                    if (rng.uniform() < cfg.resolvable_frac) {
                        if (planted && rng.uniform() < cfg.tiers[d.tier].in_tier_prob) {
                            resolved = tier_pool[d.tier].pick(
                                rng, tier_pool[d.tier].prefix_for(yoff), target);
                        }
                        if (!resolved)
                            resolved = global.pick(rng, global.prefix_for(yoff), target);
                    }
                    if (resolved) {
                        const PaperDraft& t = papers[target];
                        bool by_doi = !t.doi.empty() && rng.uniform() < 0.5;
                        d.references.push_back(by_doi ? t.doi : t.id);
                    } else {
                        d.references.push_back("unres:" + d.id + ":" + std::to_string(slot));
                    }
                }
                d.declared = rng.uniform() < cfg.declared_frac;
                if (d.declared) {
                    d.declared_count = d.m;
                    if (rng.uniform() < cfg.truncated_listing_frac) {
                        auto last = std::remove_if(d.references.begin(), d.references.end(),
                                                   [](const std::string& r) {
                                                       return r.rfind("unres:", 0) == 0;
                                                   });
                        d.references.erase(last, d.references.end());
                    }
                }
            }
        }

        // Extend the pools with this year's papers (eligible from next year on).
        for (std::size_t i = first_of_year; i < papers.size(); ++i) {
            global.add(static_cast<std::uint32_t>(i), papers[i].attract);
            if (planted) tier_pool[papers[i].tier].add(static_cast<std::uint32_t>(i), papers[i].attract);
        }
    }

    // --- external (metadata-free) citations ---
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ext; // (citing, cited)
    auto pick_bare_after = [&](int yoff, std::uint32_t& out) {
        // uniform pick over bare citers with year strictly after yoff
        std::size_t total = 0;
        for (int y = yoff + 1; y < n_years; ++y) total += bare_by_year[y].size();
        if (total == 0) return false;
        std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(total) - 1));
        for (int y = yoff + 1; y < n_years; ++y) {
            if (k < bare_by_year[y].size()) {
                out = bare_by_year[y][k];
                return true;
            }
            k -= bare_by_year[y].size();
        }
        return false;
    };

    if (planted) {
        for (std::uint32_t i = 0; i < papers.size(); ++i) {
            const auto& tier = cfg.tiers[papers[i].tier];
            if (tier.external_citations_mean <= 0.0) continue;
            int yoff = papers[i].year - cfg.year_first;
            std::int64_t k = rng.poisson(tier.external_citations_mean);
            for (std::int64_t e = 0; e < k; ++e) {
                std::uint32_t citer = 0;
                if (pick_bare_after(yoff, citer)) ext.emplace_back(citer, i);
            }
        }
    } else {
        for (int yoff = 1; yoff < n_years; ++yoff) {
            for (std::uint32_t b : bare_by_year[yoff]) {
                std::int64_t k = rng.uniform_int(cfg.external_per_bare_min, cfg.external_per_bare_max);
                for (std::int64_t e = 0; e < k; ++e) {
                    std::uint32_t target = 0;
                    if (global.pick(rng, global.prefix_for(yoff), target) && target != b)
                        ext.emplace_back(b, target);
                }
            }
        }
    }
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());

    // --- emission ---
    SyntheticCorpus out;
    {
        std::string& s = out.papers_jsonl;
        for (const auto& d : papers) {
            s += "{\"id\":\"" + d.id + "\",\"doi\":";
            s += d.doi.empty() ? "null" : "\"" + json_escape(d.doi) + "\"";
            s += ",\"year\":" + std::to_string(d.year);
            s += ",\"doc_type\":\"" + std::string(to_string(d.doc_type)) + "\"";
            s += ",\"journal_id\":\"" + journals[d.journal].id + "\"";
            s += ",\"references\":[";
            for (std::size_t r = 0; r < d.references.size(); ++r) {
                if (r) s.push_back(',');
                s += "\"" + json_escape(d.references[r]) + "\"";
            }
            s += "],\"ref_count\":";
            s += d.declared ? std::to_string(d.declared_count) : "null";
            s += "}\n";
        }
    }
    {
        std::string& s = out.journals_jsonl;
        for (const auto& j : journals) {
            char pub[16];
            std::snprintf(pub, sizeof pub, "PUB%02d", j.publisher);
            s += "{\"id\":\"" + j.id + "\",\"title\":\"" + json_escape(j.title) + "\"";
            s += ",\"issn\":[\"" + hyphenate_issn(j.issn) + "\"]";
            s += ",\"eissn\":[\"" + hyphenate_issn(j.eissn) + "\"]";
            s += ",\"publisher_id\":\"" + std::string(pub) + "\"";
            s += ",\"publisher_name\":\"Synthetic Press " + std::to_string(j.publisher + 1) + "\"}\n";
        }
    }
    if (cfg.emit_subjects) {
        std::string& s = out.subjects_csv;
        s += "journal_key,scheme,subject_id,subject_label\n";
        auto subject_row = [&s](const std::string& key, const char* scheme, const std::string& sid,
                                const std::string& label) {
            s += key + "," + scheme + "," + sid + "," + csv::escape(label) + "\n";
        };
        for (const auto& j : journals) {
            int f = j.field;
            int f2 = (f + 1) % cfg.subjects_per_scheme;
            char sid[16];
            // scilit keyed by hyphenated ISSN, scopus by eISSN, wos by journal
            // id: exercises every resolution path.
            std::snprintf(sid, sizeof sid, "SCI%02d", f);
            subject_row(hyphenate_issn(j.issn), "scilit", sid, "Scilit Field " + std::to_string(f));
            std::snprintf(sid, sizeof sid, "%04d", 2000 + f);
            subject_row(hyphenate_issn(j.eissn), "scopus_asjc", sid, "ASJC Field " + std::to_string(f));
            std::snprintf(sid, sizeof sid, "WC%03d", f);
            subject_row(j.id, "wos_category", sid, "WoS Field " + std::to_string(f));
            if ((j.field + static_cast<int>(j.publisher)) % 3 == 0) {
                std::snprintf(sid, sizeof sid, "SCI%02d", f2);
                subject_row(hyphenate_issn(j.issn), "scilit", sid,
                            "Scilit Field " + std::to_string(f2));
            }
        }
    }
    {
        std::string& s = out.edges_jsonl;
        for (const auto& [citing, cited] : ext)
            s += "{\"citing\":\"" + papers[citing].id + "\",\"cited\":\"" + papers[cited].id +
                 "\"}\n";
    }
    return out;
}

void write_corpus(const SyntheticCorpus& sc, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto dump = [&dir](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("synth: cannot write " + name + " under " + dir);
        out << content;
    };
    dump("papers.jsonl", sc.papers_jsonl);
    dump("journals.jsonl", sc.journals_jsonl);
    if (!sc.subjects_csv.empty()) dump("subjects.csv", sc.subjects_csv);
    dump("edges.jsonl", sc.edges_jsonl);
}

Corpus ingest(const SyntheticCorpus& sc, CorpusConfig cfg) {
    CorpusBuilder b(cfg);
    {
        std::istringstream in(sc.journals_jsonl);
        b.ingest_journals(in);
    }
    {
        std::istringstream in(sc.papers_jsonl);
        b.ingest_papers(in);
    }
    if (!sc.subjects_csv.empty()) {
        std::istringstream in(sc.subjects_csv);
        b.ingest_subjects(in);
    }
    if (!sc.edges_jsonl.empty()) {
        std::istringstream in(sc.edges_jsonl);
        b.ingest_external_edges(in);
    }
    return std::move(b).seal();
}

} // namespace impactum::synth
