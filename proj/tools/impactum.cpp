#include "impactum/compare.hpp"
#include "impactum/corpus.hpp"
#include "impactum/csv.hpp"
#include "impactum/graph.hpp"
#include "impactum/indicators.hpp"
#include "impactum/oracle.hpp"
#include "impactum/parallel.hpp"
#include "impactum/synth.hpp"
#include "impactum/table_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace impactum;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Tracks files created by one run so a failure leaves no partial outputs.
class OutputTracker {
public:
    explicit OutputTracker(std::string dir) : dir_(std::move(dir)) {
        fs::create_directories(dir_);
    }
    void write(const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir_) / name, std::ios::binary);
        if (!out) throw DataError("cannot write output file: " + name);
        out << content;
        names_.push_back(name);
    }
    void adopt(const std::vector<std::string>& names) {
        names_.insert(names_.end(), names.begin(), names.end());
    }
    void remove_all() {
        for (const auto& n : names_) {
            std::error_code ec;
            fs::remove(fs::path(dir_) / n, ec);
        }
        names_.clear();
    }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::vector<std::string> names_;
};

struct InputRecord {
    std::string path;
    std::size_t bytes = 0;
    std::uint64_t hash = 0;
};

void write_manifest(OutputTracker& out, const std::string& command, const json& config,
                    const std::vector<InputRecord>& inputs, const std::string& status) {
    json m;
    m["tool"] = "impactum";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = config;
    m["status"] = status;
    json ins = json::array();
    for (const auto& i : inputs) {
        char hex[24];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(i.hash));
        ins.push_back({{"path", i.path}, {"bytes", i.bytes}, {"fnv1a64", hex}});
    }
    m["inputs"] = ins;
    m["outputs"] = out.names();
    out.write("run_manifest.json", m.dump(2) + "\n");
}

json report_to_json(const IngestReport& r) {
    json j;
    j["records_read"] = r.records_read;
    j["records_accepted"] = r.records_accepted;
    j["duplicates_dropped"] = r.duplicates_dropped;
    j["conflicts"] = r.conflicts;
    j["malformed"] = r.malformed;
    j["unknown_doc_types"] = r.unknown_doc_types;
    json errs = json::array();
    for (const auto& [line, reason] : r.sample_errors)
        errs.push_back({{"line", line}, {"reason", reason}});
    j["sample_errors"] = errs;
    return j;
}

struct CorpusInputs {
    std::string papers, journals, subjects, edges;
    std::string subjects_scheme; // optional declared scheme for the stream
};

Corpus load_corpus(const CorpusInputs& in, std::vector<InputRecord>& inputs, json* reports) {
    CorpusBuilder builder;
    auto ingest = [&inputs](const std::string& path, auto&& fn) -> std::optional<IngestReport> {
        if (path.empty()) return std::nullopt;
        std::string bytes = read_file(path);
        inputs.push_back({path, bytes.size(), fnv1a64(bytes)});
        std::istringstream ss(bytes);
        return fn(ss);
    };

    std::optional<SubjectScheme> expect;
    if (!in.subjects_scheme.empty()) {
        expect = parse_subject_scheme(in.subjects_scheme);
        if (!expect) throw DataError("unknown subject scheme token: " + in.subjects_scheme);
    }

    auto jr = ingest(in.journals, [&builder](std::istream& s) { return builder.ingest_journals(s); });
    auto pr = ingest(in.papers, [&builder](std::istream& s) { return builder.ingest_papers(s); });
    auto sr = ingest(in.subjects,
                     [&builder, &expect](std::istream& s) { return builder.ingest_subjects(s, expect); });
    auto er = ingest(in.edges,
                     [&builder](std::istream& s) { return builder.ingest_external_edges(s); });
    if (reports) {
        if (pr) (*reports)["papers"] = report_to_json(*pr);
        if (jr) (*reports)["journals"] = report_to_json(*jr);
        if (sr) (*reports)["subjects"] = report_to_json(*sr);
        if (er) (*reports)["edges"] = report_to_json(*er);
    }
    return std::move(builder).seal();
}

I3Weights parse_weights(const std::string& spec) {
    std::vector<std::int64_t> w;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(std::stoll(tok));
    if (w.size() != 4) throw DataError("--weights expects four comma-separated integers");
    I3Weights weights{w[0], w[1], w[2], w[3]};
    if (!weights.valid()) throw DataError("--weights must be non-negative and non-increasing");
    return weights;
}

std::set<DocType> parse_doc_types(const std::string& spec) {
    if (spec.empty()) return default_included_types();
    std::set<DocType> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto dt = parse_doc_type(tok);
        if (!dt) throw DataError("unknown doc_type in --doc-types: " + tok);
        out.insert(*dt);
    }
    return out;
}

std::pair<int, int> parse_two_years(const std::string& spec) {
    auto comma = spec.find(',');
    if (comma == std::string::npos) throw DataError("--years expects Y1,Y2");
    return {std::stoi(spec.substr(0, comma)), std::stoi(spec.substr(comma + 1))};
}

std::vector<std::string> split_list(const std::string& spec) {
    std::vector<std::string> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand drivers
// ---------------------------------------------------------------------------

struct ComputeOptions {
    CorpusInputs in;
    int year = 0;
    std::string weights = "100,10,2,0";
    std::string doc_types;
    std::string format = "csv";
    bool dump_classifications = false;
    std::string out_dir;
};

int run_compute(const ComputeOptions& opt) {
    std::vector<InputRecord> inputs;
    OutputTracker out(opt.out_dir);
    json config;
    config["year"] = opt.year;
    config["weights"] = opt.weights;
    config["doc_types"] = opt.doc_types.empty() ? "default" : opt.doc_types;
    config["format"] = opt.format;
    try {
        Corpus corpus = load_corpus(opt.in, inputs, nullptr);
        CitationGraph graph = CitationGraph::build(corpus);
        WindowPolicy policy = WindowPolicy::for_year(opt.year);
        auto result = run_indicator_pipeline(corpus, graph, policy, parse_weights(opt.weights),
                                             parse_doc_types(opt.doc_types));
        if (opt.format == "jsonl")
            out.write("indicators.jsonl", indicators_to_jsonl(result.rows));
        else
            out.write("indicators.csv", indicators_to_csv(result.rows));
        out.write("citations.csv", citations_to_csv(result.rows));
        if (opt.dump_classifications)
            out.write("classifications.csv",
                      classifications_to_csv(corpus, result.cohorts, result.classes));
        write_manifest(out, "compute", config, inputs, "ok");
        return kExitOk;
    } catch (...) {
        out.remove_all();
        write_manifest(out, "compute", config, inputs, "error");
        throw;
    }
}

struct CompareOptions {
    std::string tables;     // comma-separated indicator CSVs
    std::string journals;   // registry metadata (jsonl, comma list: one or per table)
    std::string subjects;   // registry subjects.csv
    std::string citations;  // comma-separated sidecars aligned with tables
    std::string years;
    std::int64_t crosswalk_threshold = 200;
    std::int64_t min_publisher_journals = 5;
    std::string out_dir;
};

int run_compare_cmd(const CompareOptions& opt) {
    std::vector<InputRecord> inputs;
    OutputTracker out(opt.out_dir);
    json config;
    config["tables"] = opt.tables;
    config["years"] = opt.years;
    config["crosswalk_threshold"] = opt.crosswalk_threshold;
    config["min_publisher_journals"] = opt.min_publisher_journals;
    try {
        auto [y1, y2] = parse_two_years(opt.years);
        auto table_paths = split_list(opt.tables);
        if (table_paths.size() < 2) throw DataError("compare needs at least two --tables");

        std::optional<Corpus> registry;
        if (!opt.journals.empty()) {
            CorpusInputs reg;
            reg.journals = opt.journals;
            reg.subjects = opt.subjects;
            registry = load_corpus(reg, inputs, nullptr);
        }

        auto citation_paths = split_list(opt.citations);
        if (!citation_paths.empty() && citation_paths.size() != table_paths.size())
            throw DataError("--citations must list one sidecar per table");

        std::vector<SourceTable> tables;
        for (std::size_t i = 0; i < table_paths.size(); ++i) {
            std::string bytes = read_file(table_paths[i]);
            inputs.push_back({table_paths[i], bytes.size(), fnv1a64(bytes)});
            std::istringstream ss(bytes);
            SourceTable t = load_source_table(fs::path(table_paths[i]).filename().string(), ss,
                                              registry ? &*registry : nullptr);
            if (!citation_paths.empty()) {
                std::string cb = read_file(citation_paths[i]);
                inputs.push_back({citation_paths[i], cb.size(), fnv1a64(cb)});
                std::istringstream cs(cb);
                apply_citations_csv(cs, t.rows);
            }
            tables.push_back(std::move(t));
        }

        CompareConfig cfg;
        cfg.y1 = y1;
        cfg.y2 = y2;
        cfg.crosswalk_threshold = opt.crosswalk_threshold;
        cfg.min_publisher_journals = static_cast<std::size_t>(opt.min_publisher_journals);
        CompareOutputs outputs = run_compare(tables, registry ? &*registry : nullptr, cfg);
        out.adopt(write_compare_outputs(outputs, cfg, out.dir()));
        write_manifest(out, "compare", config, inputs, "ok");
        return kExitOk;
    } catch (...) {
        out.remove_all();
        write_manifest(out, "compare", config, inputs, "error");
        throw;
    }
}

struct ReportOptions {
    CorpusInputs in;
    std::string years;
    std::string weights = "100,10,2,0";
    std::string doc_types;
    std::int64_t crosswalk_threshold = 200;
    std::int64_t min_publisher_journals = 5;
    std::string out_dir;
};

int run_report(const ReportOptions& opt) {
    std::vector<InputRecord> inputs;
    OutputTracker out(opt.out_dir);
    json config;
    config["years"] = opt.years;
    config["weights"] = opt.weights;
    config["doc_types"] = opt.doc_types.empty() ? "default" : opt.doc_types;
    config["crosswalk_threshold"] = opt.crosswalk_threshold;
    config["min_publisher_journals"] = opt.min_publisher_journals;
    try {
        auto [y1, y2] = parse_two_years(opt.years);
        Corpus corpus = load_corpus(opt.in, inputs, nullptr);
        CitationGraph graph = CitationGraph::build(corpus);
        I3Weights weights = parse_weights(opt.weights);
        auto types = parse_doc_types(opt.doc_types);

        auto r1 = run_indicator_pipeline(corpus, graph, WindowPolicy::for_year(y1), weights, types);
        auto r2 = run_indicator_pipeline(corpus, graph, WindowPolicy::for_year(y2), weights, types);
        out.write("indicators_" + std::to_string(y1) + ".csv", indicators_to_csv(r1.rows));
        out.write("indicators_" + std::to_string(y2) + ".csv", indicators_to_csv(r2.rows));

        std::vector<SourceTable> tables;
        tables.push_back(SourceTable::from_corpus(corpus, "y" + std::to_string(y1), r1.rows));
        tables.push_back(SourceTable::from_corpus(corpus, "y" + std::to_string(y2), r2.rows));

        CompareConfig cfg;
        cfg.y1 = y1;
        cfg.y2 = y2;
        cfg.crosswalk_threshold = opt.crosswalk_threshold;
        cfg.min_publisher_journals = static_cast<std::size_t>(opt.min_publisher_journals);
        CompareOutputs outputs = run_compare(tables, &corpus, cfg);
        out.adopt(write_compare_outputs(outputs, cfg, out.dir()));
        write_manifest(out, "report", config, inputs, "ok");
        return kExitOk;
    } catch (...) {
        out.remove_all();
        write_manifest(out, "report", config, inputs, "error");
        throw;
    }
}

struct SynthOptions {
    std::uint64_t seed = 1;
    int papers = 4000;
    int journals = 40;
    std::string model = "lognormal";
    int year_first = 2018;
    int year_last = 2024;
    std::string out_dir;
};

synth::GeneratorConfig synth_config_from(const SynthOptions& opt) {
    synth::GeneratorConfig cfg;
    cfg.seed = opt.seed;
    cfg.n_papers = opt.papers;
    cfg.n_journals = opt.journals;
    cfg.year_first = opt.year_first;
    cfg.year_last = opt.year_last;
    if (opt.model == "lognormal") cfg.model = synth::ModelKind::lognormal;
    else if (opt.model == "powerlaw") cfg.model = synth::ModelKind::powerlaw;
    else if (opt.model == "planted") {
        cfg.model = synth::ModelKind::planted;
        int per_tier = std::max(2, opt.journals / 3);
        int ppy = std::max(1, opt.papers / std::max(1, 3 * per_tier *
                                                           (opt.year_last - opt.year_first + 1)));
        cfg.tiers = {
            {"mainstream", per_tier, ppy * 2, 30, 60, 0.85, 1.0, 1.0, 0.0},
            {"elite", std::max(1, per_tier / 4), ppy, 20, 40, 0.5, 1.0, 8.0, 0.0},
            {"niche", per_tier, std::max(1, ppy / 2), 2, 6, 0.75, 1.0, 1.0, 2.0},
        };
        cfg.bare_citer_frac = 0.05;
    } else {
        throw DataError("unknown --model (expected lognormal|powerlaw|planted)");
    }
    return cfg;
}

int run_synth(const SynthOptions& opt) {
    OutputTracker out(opt.out_dir);
    json config;
    config["seed"] = opt.seed;
    config["papers"] = opt.papers;
    config["journals"] = opt.journals;
    config["model"] = opt.model;
    config["years"] = std::to_string(opt.year_first) + ".." + std::to_string(opt.year_last);
    try {
        auto sc = synth::generate(synth_config_from(opt));
        out.write("papers.jsonl", sc.papers_jsonl);
        out.write("journals.jsonl", sc.journals_jsonl);
        if (!sc.subjects_csv.empty()) out.write("subjects.csv", sc.subjects_csv);
        out.write("edges.jsonl", sc.edges_jsonl);
        write_manifest(out, "synth", config, {}, "ok");
        return kExitOk;
    } catch (...) {
        out.remove_all();
        write_manifest(out, "synth", config, {}, "error");
        throw;
    }
}

struct IngestOptions {
    CorpusInputs in;
    std::string out_dir;
};

int run_ingest(const IngestOptions& opt) {
    std::vector<InputRecord> inputs;
    json reports;
    Corpus corpus = load_corpus(opt.in, inputs, &reports);
    ValidationReport v = corpus.validate();
    json result;
    result["ingest"] = reports;
    result["validation"] = {{"dangling_journal_papers", v.dangling_journal_papers},
                            {"empty_reference_papers", v.empty_reference_papers},
                            {"orphan_subjects", v.orphan_subjects},
                            {"papers_without_journal", v.papers_without_journal}};
    result["papers"] = corpus.papers().size();
    result["journals"] = corpus.journals().size();
    std::cout << result.dump(2) << "\n";
    if (!opt.out_dir.empty()) {
        OutputTracker out(opt.out_dir);
        out.write("ingest_report.json", result.dump(2) + "\n");
        write_manifest(out, "ingest", json::object(), inputs, "ok");
    }
    return kExitOk;
}

int run_selftest(std::uint64_t seed) {
    struct Case {
        const char* name;
        synth::GeneratorConfig cfg;
    };
    std::vector<Case> cases;
    {
        synth::GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.model = synth::ModelKind::lognormal;
        cfg.n_papers = 1500;
        cfg.n_journals = 25;
        cases.push_back({"lognormal-1500", cfg});
    }
    {
        synth::GeneratorConfig cfg;
        cfg.seed = seed + 1;
        cfg.model = synth::ModelKind::powerlaw;
        cfg.n_papers = 1200;
        cfg.n_journals = 20;
        cases.push_back({"powerlaw-1200", cfg});
    }
    {
        synth::GeneratorConfig cfg;
        cfg.seed = seed + 2;
        cfg.model = synth::ModelKind::planted;
        cfg.tiers = {
            {"mainstream", 10, 30, 30, 60, 0.85, 1.0, 1.0, 0.0},
            {"niche", 6, 5, 2, 6, 0.75, 1.0, 1.0, 2.0},
        };
        cfg.bare_citer_frac = 0.05;
        cases.push_back({"planted", cfg});
    }

    bool all_ok = true;
    for (const auto& c : cases) {
        auto sc = synth::generate(c.cfg);
        Corpus corpus = synth::ingest(sc);
        CitationGraph graph = CitationGraph::build(corpus);
        const int year = c.cfg.year_last;
        auto result = run_indicator_pipeline(corpus, graph, WindowPolicy::for_year(year),
                                             I3Weights{}, default_included_types());
        auto expected = oracle::all_indicators(corpus, year);

        bool ok = true;
        auto close = [](std::optional<double> a, std::optional<double> b) {
            if (a.has_value() != b.has_value()) return false;
            if (!a) return true;
            double scale = std::max({std::abs(*a), std::abs(*b), 1.0});
            return std::abs(*a - *b) <= 1e-9 * scale;
        };
        for (const auto& row : result.rows) {
            const auto& exp = expected.at(row.journal_id);
            if (row.i3 != exp.i3 || row.n_pubs != exp.n_pubs || !close(row.i3_n, exp.i3_n) ||
                !close(row.jif, exp.jif) || !close(row.citescore, exp.citescore)) {
                ok = false;
                break;
            }
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "oracle-equivalence " << c.name << " ("
                  << corpus.papers().size() << " papers, " << corpus.journals().size()
                  << " journals)\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? kExitOk : kExitInternal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"impactum: distribution-sensitive journal indicators and comparison toolkit"};
    app.require_subcommand(1);

    ComputeOptions compute_opt;
    CompareOptions compare_opt;
    ReportOptions report_opt;
    SynthOptions synth_opt;
    IngestOptions ingest_opt;
    std::uint64_t selftest_seed = 20240101;

    auto add_corpus_inputs = [](CLI::App* cmd, CorpusInputs& in, bool papers_required) {
        auto* p = cmd->add_option("--papers", in.papers, "papers.jsonl path");
        if (papers_required) p->required();
        cmd->add_option("--journals", in.journals, "journals.jsonl path");
        cmd->add_option("--subjects", in.subjects, "subjects.csv path");
        cmd->add_option("--subjects-scheme", in.subjects_scheme,
                        "declared scheme of the subjects stream (scilit|scopus_asjc|wos_category)");
        cmd->add_option("--edges", in.edges, "edges.jsonl supplement path");
    };

    auto* synth_cmd = app.add_subcommand("synth", "generate a seeded synthetic corpus");
    synth_cmd->add_option("--seed", synth_opt.seed, "generator seed")->required();
    synth_cmd->add_option("--papers", synth_opt.papers, "paper count (non-planted models)");
    synth_cmd->add_option("--journals", synth_opt.journals, "journal count");
    synth_cmd->add_option("--model", synth_opt.model, "lognormal|powerlaw|planted");
    synth_cmd->add_option("--year-first", synth_opt.year_first, "first publication year");
    synth_cmd->add_option("--year-last", synth_opt.year_last, "last publication year");
    synth_cmd->add_option("--out", synth_opt.out_dir, "output directory")->required();

    auto* ingest_cmd = app.add_subcommand("ingest", "ingest and validate a corpus");
    add_corpus_inputs(ingest_cmd, ingest_opt.in, true);
    ingest_cmd->add_option("--out", ingest_opt.out_dir, "optional report directory");

    auto* compute_cmd = app.add_subcommand("compute", "compute the per-journal indicator table");
    add_corpus_inputs(compute_cmd, compute_opt.in, true);
    compute_cmd->add_option("--year", compute_opt.year, "indicator year Y")->required();
    compute_cmd->add_option("--weights", compute_opt.weights, "I3 class weights a,b,c,d");
    compute_cmd->add_option("--doc-types", compute_opt.doc_types,
                            "included document types (comma list)");
    compute_cmd->add_option("--format", compute_opt.format, "csv|jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    compute_cmd->add_flag("--dump-classifications", compute_opt.dump_classifications,
                          "write the per-paper classification dump");
    compute_cmd->add_option("--out", compute_opt.out_dir, "output directory")->required();

    auto* compare_cmd = app.add_subcommand("compare", "run the comparison suite on >=2 tables");
    compare_cmd->add_option("--tables", compare_opt.tables, "indicator CSVs (comma list)")
        ->required();
    compare_cmd->add_option("--journals", compare_opt.journals, "journal metadata jsonl");
    compare_cmd->add_option("--subjects", compare_opt.subjects, "subject assignments csv");
    compare_cmd->add_option("--citations", compare_opt.citations,
                            "citation sidecar CSVs (comma list, one per table)");
    compare_cmd->add_option("--years", compare_opt.years, "Y1,Y2")->required();
    compare_cmd->add_option("--crosswalk-threshold", compare_opt.crosswalk_threshold,
                            "minimum journal overlap (exclusive)");
    compare_cmd->add_option("--min-publisher-journals", compare_opt.min_publisher_journals,
                            "publishers below this size are omitted");
    compare_cmd->add_option("--out", compare_opt.out_dir, "output directory")->required();

    auto* report_cmd = app.add_subcommand("report", "full pipeline: compute both years + compare");
    add_corpus_inputs(report_cmd, report_opt.in, true);
    report_cmd->add_option("--years", report_opt.years, "Y1,Y2")->required();
    report_cmd->add_option("--weights", report_opt.weights, "I3 class weights a,b,c,d");
    report_cmd->add_option("--doc-types", report_opt.doc_types,
                           "included document types (comma list)");
    report_cmd->add_option("--crosswalk-threshold", report_opt.crosswalk_threshold,
                           "minimum journal overlap (exclusive)");
    report_cmd->add_option("--min-publisher-journals", report_opt.min_publisher_journals,
                           "publishers below this size are omitted");
    report_cmd->add_option("--out", report_opt.out_dir, "output directory")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "oracle equivalence on built-in corpora");
    selftest_cmd->add_option("--seed", selftest_seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (synth_cmd->parsed()) return run_synth(synth_opt);
        if (ingest_cmd->parsed()) return run_ingest(ingest_opt);
        if (compute_cmd->parsed()) return run_compute(compute_opt);
        if (compare_cmd->parsed()) return run_compare_cmd(compare_opt);
        if (report_cmd->parsed()) return run_report(report_opt);
        if (selftest_cmd->parsed()) return run_selftest(selftest_seed);
        std::cerr << "impactum: error code=1 kind=usage msg=\"no subcommand\"\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "impactum: error code=2 kind=data msg=\"" << e.what() << "\"\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "impactum: error code=2 kind=data msg=\"" << e.what() << "\"\n";
        return kExitData;
    } catch (const std::runtime_error& e) {
        std::cerr << "impactum: error code=2 kind=data msg=\"" << e.what() << "\"\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "impactum: error code=3 kind=internal msg=\"" << e.what() << "\"\n";
        return kExitInternal;
    }
}
