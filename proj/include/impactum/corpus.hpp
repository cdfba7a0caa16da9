#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace impactum {

using PaperIdx = std::uint32_t;
using JournalIdx = std::uint32_t;
inline constexpr std::uint32_t kNoIdx = 0xffffffffu;

enum class DocType : std::uint8_t {
    research_article,
    review_article,
    conference_paper,
    case_report,
    clinical_trial,
    editorial,
    letter,
    book_chapter,
    other,
};
inline constexpr int kDocTypeCount = 9;

const char* to_string(DocType t);
std::optional<DocType> parse_doc_type(std::string_view token);

enum class SubjectScheme : std::uint8_t { scilit, scopus_asjc, wos_category };
inline constexpr int kSchemeCount = 3;

const char* to_string(SubjectScheme s);
std::optional<SubjectScheme> parse_subject_scheme(std::string_view token);

// 8-char normalized form (hyphens stripped, X uppercased) with a valid
// mod-11 check digit; nullopt otherwise.
std::optional<std::string> normalize_issn(std::string_view raw);

// Lowercased, resolver prefixes (doi:, https://doi.org/, ...) stripped.
std::string normalize_doi(std::string_view raw);

struct PaperRecord {
    std::string id;
    std::string doi; // normalized; empty if none
    int year = 0;
    DocType doc_type = DocType::other;
    std::string journal_id; // empty if none
    std::vector<std::string> references; // paper ids, DOIs, or unresolved placeholders
    std::optional<std::int64_t> declared_ref_count;
};

struct JournalRecord {
    std::string id;
    std::string title;
    std::vector<std::string> issn;  // normalized
    std::vector<std::string> eissn; // normalized
    std::string publisher_id;
    std::string publisher_name;
};

struct SubjectAssignment {
    SubjectScheme scheme = SubjectScheme::scilit;
    std::string subject_id;
    std::string subject_label;
    JournalIdx journal = kNoIdx;
};

struct IngestReport {
    std::int64_t records_read = 0;
    std::int64_t records_accepted = 0;
    std::int64_t duplicates_dropped = 0;
    std::int64_t conflicts = 0;
    std::int64_t malformed = 0;
    std::int64_t unknown_doc_types = 0; // accepted-with-warning tally
    std::vector<std::pair<std::int64_t, std::string>> sample_errors; // (line, reason), capped

    bool reconciles() const {
        return records_read == records_accepted + duplicates_dropped + conflicts + malformed;
    }
};

struct ValidationReport {
    std::int64_t dangling_journal_papers = 0; // journal_id set but unknown
    std::int64_t empty_reference_papers = 0;  // no references and no declared count
    std::int64_t orphan_subjects = 0;         // assignment pointing at no journal
    std::int64_t papers_without_journal = 0;  // journal_id absent (informational)

    std::int64_t defects() const { return dangling_journal_papers + orphan_subjects; }
};

struct CorpusConfig {
    int min_year = 1900;
    int max_year = 2100;
};

class Corpus;

// Single-writer ingestion. Journals must be ingested before subject
// assignments (assignments resolve against the ISSN index at ingest time).
class CorpusBuilder {
public:
    explicit CorpusBuilder(CorpusConfig cfg = {}) : cfg_(cfg) {}

    // papers.jsonl: one object per line. Malformed lines are counted and
    // skipped; duplicate id/DOI keeps the first record.
    IngestReport ingest_papers(std::istream& in);

    // journals.jsonl. An ISSN/eISSN claimed by two journal ids rejects the
    // later record under `conflicts`.
    IngestReport ingest_journals(std::istream& in);

    // subjects.csv with header journal_key,scheme,subject_id,subject_label.
    // When `expect` is set, rows carrying a different scheme are malformed.
    IngestReport ingest_subjects(std::istream& in, std::optional<SubjectScheme> expect = {});

    // edges.jsonl supplement: {"citing": str, "cited": str} per line.
    IngestReport ingest_external_edges(std::istream& in);

    Corpus seal() &&;

private:
    CorpusConfig cfg_;
    std::vector<PaperRecord> papers_;
    std::vector<JournalRecord> journals_;
    struct RawSubject {
        SubjectScheme scheme;
        std::string subject_id;
        std::string subject_label;
        std::string journal_id; // resolved at ingest
    };
    std::vector<RawSubject> subjects_;
    std::vector<std::pair<std::string, std::string>> external_edges_;

    std::unordered_map<std::string, std::uint32_t> paper_by_id_;
    std::unordered_map<std::string, std::uint32_t> paper_by_doi_;
    std::unordered_map<std::string, std::uint32_t> journal_by_id_;
    std::unordered_map<std::string, std::uint32_t> journal_by_issn_;  // both issn and eissn keys
    std::unordered_map<std::string, char> subject_seen_; // dedup key -> 1

    friend class Corpus;
};

// Sealed, immutable view. Papers and journals are sorted by id, so index
// order equals lexicographic id order. Safe to share across threads.
class Corpus {
public:
    std::span<const PaperRecord> papers() const { return papers_; }
    std::span<const JournalRecord> journals() const { return journals_; }
    std::span<const SubjectAssignment> subjects() const { return subjects_; }
    std::span<const std::pair<std::string, std::string>> external_edges() const { return external_edges_; }

    // id first, then normalized DOI.
    std::optional<PaperIdx> find_paper(std::string_view id_or_doi) const;
    std::optional<JournalIdx> find_journal_by_id(std::string_view id) const;
    // Checks the ISSN index, then eISSN. Expects a normalized key.
    std::optional<JournalIdx> find_journal_by_issn(std::string_view key) const;

    // kNoIdx when the paper has no journal or the id dangles.
    JournalIdx paper_journal(PaperIdx p) const { return paper_journal_[p]; }

    // Papers of one journal, ascending paper index.
    std::span<const PaperIdx> journal_papers(JournalIdx j) const;

    ValidationReport validate() const;
    const CorpusConfig& config() const { return cfg_; }

private:
    friend class CorpusBuilder;
    CorpusConfig cfg_;
    std::vector<PaperRecord> papers_;
    std::vector<JournalRecord> journals_;
    std::vector<SubjectAssignment> subjects_;
    std::vector<std::pair<std::string, std::string>> external_edges_;
    std::vector<JournalIdx> paper_journal_;
    std::vector<std::uint64_t> journal_paper_offsets_;
    std::vector<PaperIdx> journal_paper_list_;
    std::unordered_map<std::string, PaperIdx> paper_by_id_;
    std::unordered_map<std::string, PaperIdx> paper_by_doi_;
    std::unordered_map<std::string, JournalIdx> journal_by_id_;
    std::unordered_map<std::string, JournalIdx> journal_by_issn_;
    std::unordered_map<std::string, JournalIdx> journal_by_eissn_;
};

} // namespace impactum
