#include "impactum/corpus.hpp"

#include "impactum/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace impactum {

namespace {

constexpr std::size_t kMaxSampleErrors = 10;

void note_error(IngestReport& rep, std::int64_t line, std::string reason) {
    if (rep.sample_errors.size() < kMaxSampleErrors)
        rep.sample_errors.emplace_back(line, std::move(reason));
}

const char* kDocTypeNames[kDocTypeCount] = {
    "research_article", "review_article", "conference_paper", "case_report",
    "clinical_trial",   "editorial",      "letter",           "book_chapter",
    "other",
};

const char* kSchemeNames[kSchemeCount] = {"scilit", "scopus_asjc", "wos_category"};

} // namespace

const char* to_string(DocType t) { return kDocTypeNames[static_cast<int>(t)]; }

std::optional<DocType> parse_doc_type(std::string_view token) {
    for (int i = 0; i < kDocTypeCount; ++i)
        if (token == kDocTypeNames[i]) return static_cast<DocType>(i);
    return std::nullopt;
}

const char* to_string(SubjectScheme s) { return kSchemeNames[static_cast<int>(s)]; }

std::optional<SubjectScheme> parse_subject_scheme(std::string_view token) {
    for (int i = 0; i < kSchemeCount; ++i)
        if (token == kSchemeNames[i]) return static_cast<SubjectScheme>(i);
    return std::nullopt;
}

std::optional<std::string> normalize_issn(std::string_view raw) {
    std::string s;
    s.reserve(8);
    for (char c : raw) {
        if (c == '-' || c == ' ') continue;
        s.push_back(c == 'x' ? 'X' : c);
    }
    if (s.size() != 8) return std::nullopt;
    int sum = 0;
    for (int i = 0; i < 8; ++i) {
        int v;
        char c = s[i];
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c == 'X' && i == 7) v = 10;
        else return std::nullopt;
        sum += v * (8 - i);
    }
    if (sum % 11 != 0) return std::nullopt;
    return s;
}

std::string normalize_doi(std::string_view raw) {
    std::size_t b = raw.find_first_not_of(" \t");
    std::size_t e = raw.find_last_not_of(" \t");
    if (b == std::string_view::npos) return {};
    std::string s(raw.substr(b, e - b + 1));
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (std::string_view prefix : {"https://doi.org/", "http://doi.org/",
                                    "https://dx.doi.org/", "http://dx.doi.org/", "doi:"}) {
        if (s.rfind(prefix, 0) == 0) {
            s.erase(0, prefix.size());
            break;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

using nlohmann::json;

IngestReport CorpusBuilder::ingest_papers(std::istream& in) {
    IngestReport rep;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ++rep.records_read;

        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            ++rep.malformed;
            note_error(rep, lineno, "invalid json");
            continue;
        }

        PaperRecord rec;
        if (!j.contains("id") || !j["id"].is_string() || j["id"].get_ref<const std::string&>().empty()) {
            ++rep.malformed;
            note_error(rep, lineno, "missing id");
            continue;
        }
        rec.id = j["id"].get<std::string>();

        if (!j.contains("year") || !j["year"].is_number_integer()) {
            ++rep.malformed;
            note_error(rep, lineno, "missing year");
            continue;
        }
        rec.year = j["year"].get<int>();
        if (rec.year < cfg_.min_year || rec.year > cfg_.max_year) {
            ++rep.malformed;
            note_error(rep, lineno, "year out of bounds");
            continue;
        }

        if (!j.contains("doc_type") || !j["doc_type"].is_string()) {
            ++rep.malformed;
            note_error(rep, lineno, "missing doc_type");
            continue;
        }
        if (auto dt = parse_doc_type(j["doc_type"].get<std::string>())) {
            rec.doc_type = *dt;
        } else {
            rec.doc_type = DocType::other;
            ++rep.unknown_doc_types;
        }

        if (j.contains("doi") && !j["doi"].is_null()) {
            if (!j["doi"].is_string()) {
                ++rep.malformed;
                note_error(rep, lineno, "doi not a string");
                continue;
            }
            rec.doi = normalize_doi(j["doi"].get<std::string>());
        }

        if (j.contains("journal_id") && !j["journal_id"].is_null()) {
            if (!j["journal_id"].is_string()) {
                ++rep.malformed;
                note_error(rep, lineno, "journal_id not a string");
                continue;
            }
            rec.journal_id = j["journal_id"].get<std::string>();
        }

        bool bad_refs = false;
        if (j.contains("references") && !j["references"].is_null()) {
            if (!j["references"].is_array()) {
                bad_refs = true;
            } else {
                for (const auto& r : j["references"]) {
                    if (!r.is_string()) { bad_refs = true; break; }
                    rec.references.push_back(r.get<std::string>());
                }
            }
        }
        if (bad_refs) {
            ++rep.malformed;
            note_error(rep, lineno, "references not a string array");
            continue;
        }

        if (j.contains("ref_count") && !j["ref_count"].is_null()) {
            if (!j["ref_count"].is_number_integer() || j["ref_count"].get<std::int64_t>() < 0) {
                ++rep.malformed;
                note_error(rep, lineno, "ref_count not a non-negative integer");
                continue;
            }
            rec.declared_ref_count = j["ref_count"].get<std::int64_t>();
            if (*rec.declared_ref_count < static_cast<std::int64_t>(rec.references.size())) {
                ++rep.malformed;
                note_error(rep, lineno, "ref_count below listed references");
                continue;
            }
        }

        if (paper_by_id_.count(rec.id)) {
            ++rep.duplicates_dropped;
            continue;
        }
        if (!rec.doi.empty() && paper_by_doi_.count(rec.doi)) {
            ++rep.duplicates_dropped;
            continue;
        }

        std::uint32_t idx = static_cast<std::uint32_t>(papers_.size());
        paper_by_id_.emplace(rec.id, idx);
        if (!rec.doi.empty()) paper_by_doi_.emplace(rec.doi, idx);
        papers_.push_back(std::move(rec));
        ++rep.records_accepted;
    }
    return rep;
}

IngestReport CorpusBuilder::ingest_journals(std::istream& in) {
    IngestReport rep;
    std::string line;
    std::int64_t lineno = 0;

    auto collect_keys = [](const json& v, std::vector<std::string>& out) {
        auto add = [&out](const json& item) {
            if (!item.is_string()) return;
            if (auto n = normalize_issn(item.get<std::string>())) {
                if (std::find(out.begin(), out.end(), *n) == out.end()) out.push_back(*n);
            }
        };
        if (v.is_string()) add(v);
        else if (v.is_array())
            for (const auto& item : v) add(item);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ++rep.records_read;

        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            ++rep.malformed;
            note_error(rep, lineno, "invalid json");
            continue;
        }

        JournalRecord rec;
        if (!j.contains("id") || !j["id"].is_string() || j["id"].get_ref<const std::string&>().empty()) {
            ++rep.malformed;
            note_error(rep, lineno, "missing id");
            continue;
        }
        rec.id = j["id"].get<std::string>();
        if (j.contains("title") && j["title"].is_string()) rec.title = j["title"].get<std::string>();
        if (j.contains("issn")) collect_keys(j["issn"], rec.issn);
        if (j.contains("eissn")) collect_keys(j["eissn"], rec.eissn);
        if (j.contains("publisher_id") && j["publisher_id"].is_string())
            rec.publisher_id = j["publisher_id"].get<std::string>();
        if (j.contains("publisher_name") && j["publisher_name"].is_string())
            rec.publisher_name = j["publisher_name"].get<std::string>();

        if (rec.issn.empty() && rec.eissn.empty() && rec.title.empty()) {
            ++rep.malformed;
            note_error(rep, lineno, "no usable key (issn/eissn/title)");
            continue;
        }

        if (journal_by_id_.count(rec.id)) {
            ++rep.duplicates_dropped;
            continue;
        }

        bool conflict = false;
        for (const auto* keys : {&rec.issn, &rec.eissn}) {
            for (const auto& k : *keys) {
                auto it = journal_by_issn_.find(k);
                if (it != journal_by_issn_.end() && journals_[it->second].id != rec.id) {
                    conflict = true;
                    break;
                }
            }
            if (conflict) break;
        }
        if (conflict) {
            ++rep.conflicts;
            note_error(rep, lineno, "issn already claimed by another journal");
            continue;
        }

        std::uint32_t idx = static_cast<std::uint32_t>(journals_.size());
        journal_by_id_.emplace(rec.id, idx);
        for (const auto* keys : {&rec.issn, &rec.eissn})
            for (const auto& k : *keys) journal_by_issn_.emplace(k, idx);
        journals_.push_back(std::move(rec));
        ++rep.records_accepted;
    }
    return rep;
}

IngestReport CorpusBuilder::ingest_subjects(std::istream& in, std::optional<SubjectScheme> expect) {
    IngestReport rep;
    csv::Reader reader(in);
    std::vector<std::string> row;

    if (!reader.next_row(row) || row.size() != 4 || row[0] != "journal_key" || row[1] != "scheme" ||
        row[2] != "subject_id" || row[3] != "subject_label") {
        throw std::runtime_error("subjects.csv: expected header journal_key,scheme,subject_id,subject_label");
    }

    while (reader.next_row(row)) {
        if (row.size() == 1 && row[0].empty()) continue; // blank line
        ++rep.records_read;
        if (row.size() != 4) {
            ++rep.malformed;
            note_error(rep, reader.row_line(), "wrong column count");
            continue;
        }
        auto scheme = parse_subject_scheme(row[1]);
        if (!scheme) {
            ++rep.malformed;
            note_error(rep, reader.row_line(), "unknown scheme '" + row[1] + "'");
            continue;
        }
        if (expect && *scheme != *expect) {
            ++rep.malformed;
            note_error(rep, reader.row_line(), "scheme does not match declared stream scheme");
            continue;
        }
        if (row[2].empty()) {
            ++rep.malformed;
            note_error(rep, reader.row_line(), "empty subject_id");
            continue;
        }

        // Resolve the key: ISSN index, then eISSN (shared injective index),
        // then journal id.
        const JournalRecord* journal = nullptr;
        if (auto issn = normalize_issn(row[0])) {
            auto it = journal_by_issn_.find(*issn);
            if (it != journal_by_issn_.end()) journal = &journals_[it->second];
        }
        if (!journal) {
            auto it = journal_by_id_.find(row[0]);
            if (it != journal_by_id_.end()) journal = &journals_[it->second];
        }
        if (!journal) {
            ++rep.malformed;
            note_error(rep, reader.row_line(), "unresolvable journal key '" + row[0] + "'");
            continue;
        }

        std::string dedup = row[1] + '\x1f' + row[2] + '\x1f' + journal->id;
        if (!subject_seen_.emplace(std::move(dedup), 1).second) {
            ++rep.duplicates_dropped;
            continue;
        }
        subjects_.push_back(RawSubject{*scheme, row[2], row[3], journal->id});
        ++rep.records_accepted;
    }
    return rep;
}

IngestReport CorpusBuilder::ingest_external_edges(std::istream& in) {
    IngestReport rep;
    std::string line;
    std::int64_t lineno = 0;
    std::unordered_map<std::string, char> seen;
    for (const auto& e : external_edges_) seen.emplace(e.first + '\x1f' + e.second, 1);

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ++rep.records_read;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("citing") || !j.contains("cited") ||
            !j["citing"].is_string() || !j["cited"].is_string() ||
            j["citing"].get_ref<const std::string&>().empty() ||
            j["cited"].get_ref<const std::string&>().empty()) {
            ++rep.malformed;
            note_error(rep, lineno, "expected {\"citing\": str, \"cited\": str}");
            continue;
        }
        std::string citing = j["citing"].get<std::string>();
        std::string cited = j["cited"].get<std::string>();
        if (!seen.emplace(citing + '\x1f' + cited, 1).second) {
            ++rep.duplicates_dropped;
            continue;
        }
        external_edges_.emplace_back(std::move(citing), std::move(cited));
        ++rep.records_accepted;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Sealing
// ---------------------------------------------------------------------------

Corpus CorpusBuilder::seal() && {
    Corpus c;
    c.cfg_ = cfg_;
    c.papers_ = std::move(papers_);
    c.journals_ = std::move(journals_);
    c.external_edges_ = std::move(external_edges_);

    // Canonical order: lexicographic by id. Index order == id order, which
    // downstream kernels rely on for deterministic accumulation.
    std::sort(c.papers_.begin(), c.papers_.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.id < b.id; });
    std::sort(c.journals_.begin(), c.journals_.end(),
              [](const JournalRecord& a, const JournalRecord& b) { return a.id < b.id; });
    std::sort(c.external_edges_.begin(), c.external_edges_.end());

    c.paper_by_id_.reserve(c.papers_.size());
    for (std::uint32_t i = 0; i < c.papers_.size(); ++i) {
        c.paper_by_id_.emplace(c.papers_[i].id, i);
        if (!c.papers_[i].doi.empty()) c.paper_by_doi_.emplace(c.papers_[i].doi, i);
    }
    c.journal_by_id_.reserve(c.journals_.size());
    for (std::uint32_t i = 0; i < c.journals_.size(); ++i) {
        c.journal_by_id_.emplace(c.journals_[i].id, i);
        for (const auto& k : c.journals_[i].issn) c.journal_by_issn_.emplace(k, i);
        for (const auto& k : c.journals_[i].eissn) c.journal_by_eissn_.emplace(k, i);
    }

    c.subjects_.reserve(subjects_.size());
    for (auto& rs : subjects_) {
        auto it = c.journal_by_id_.find(rs.journal_id);
        SubjectAssignment a;
        a.scheme = rs.scheme;
        a.subject_id = std::move(rs.subject_id);
        a.subject_label = std::move(rs.subject_label);
        a.journal = it == c.journal_by_id_.end() ? kNoIdx : it->second;
        c.subjects_.push_back(std::move(a));
    }
    std::sort(c.subjects_.begin(), c.subjects_.end(),
              [](const SubjectAssignment& a, const SubjectAssignment& b) {
                  if (a.scheme != b.scheme) return a.scheme < b.scheme;
                  if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
                  return a.journal < b.journal;
              });

    c.paper_journal_.resize(c.papers_.size(), kNoIdx);
    for (std::size_t i = 0; i < c.papers_.size(); ++i) {
        const auto& jid = c.papers_[i].journal_id;
        if (jid.empty()) continue;
        auto it = c.journal_by_id_.find(jid);
        if (it != c.journal_by_id_.end()) c.paper_journal_[i] = it->second;
    }

    c.journal_paper_offsets_.assign(c.journals_.size() + 1, 0);
    for (auto j : c.paper_journal_)
        if (j != kNoIdx) ++c.journal_paper_offsets_[j + 1];
    for (std::size_t i = 1; i < c.journal_paper_offsets_.size(); ++i)
        c.journal_paper_offsets_[i] += c.journal_paper_offsets_[i - 1];
    c.journal_paper_list_.resize(c.journal_paper_offsets_.back());
    std::vector<std::uint64_t> cursor(c.journal_paper_offsets_.begin(), c.journal_paper_offsets_.end() - 1);
    for (std::uint32_t p = 0; p < c.papers_.size(); ++p) {
        JournalIdx j = c.paper_journal_[p];
        if (j != kNoIdx) c.journal_paper_list_[cursor[j]++] = p;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Corpus queries
// ---------------------------------------------------------------------------

std::optional<PaperIdx> Corpus::find_paper(std::string_view id_or_doi) const {
    if (auto it = paper_by_id_.find(std::string(id_or_doi)); it != paper_by_id_.end())
        return it->second;
    std::string doi = normalize_doi(id_or_doi);
    if (!doi.empty())
        if (auto it = paper_by_doi_.find(doi); it != paper_by_doi_.end()) return it->second;
    return std::nullopt;
}

std::optional<JournalIdx> Corpus::find_journal_by_id(std::string_view id) const {
    auto it = journal_by_id_.find(std::string(id));
    if (it == journal_by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<JournalIdx> Corpus::find_journal_by_issn(std::string_view key) const {
    std::string k(key);
    if (auto it = journal_by_issn_.find(k); it != journal_by_issn_.end()) return it->second;
    if (auto it = journal_by_eissn_.find(k); it != journal_by_eissn_.end()) return it->second;
    return std::nullopt;
}

std::span<const PaperIdx> Corpus::journal_papers(JournalIdx j) const {
    auto lo = journal_paper_offsets_[j], hi = journal_paper_offsets_[j + 1];
    return {journal_paper_list_.data() + lo, hi - lo};
}

ValidationReport Corpus::validate() const {
    ValidationReport rep;
    for (std::size_t i = 0; i < papers_.size(); ++i) {
        const auto& p = papers_[i];
        if (p.journal_id.empty()) ++rep.papers_without_journal;
        else if (paper_journal_[i] == kNoIdx) ++rep.dangling_journal_papers;
        if (p.references.empty() && !p.declared_ref_count) ++rep.empty_reference_papers;
    }
    for (const auto& s : subjects_)
        if (s.journal == kNoIdx) ++rep.orphan_subjects;
    return rep;
}

} // namespace impactum
