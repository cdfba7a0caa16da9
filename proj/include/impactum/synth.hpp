#pragma once

#include "impactum/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace impactum::synth {

// xoshiro256** seeded through splitmix64: a named, stable generator so a
// seed reproduces the same corpus everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next_u64();
    double uniform(); // [0, 1)
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi); // inclusive
    double normal();
    std::int64_t poisson(double mean);

private:
    std::uint64_t s_[4];
};

enum class ModelKind { lognormal, powerlaw, planted };
const char* to_string(ModelKind m);

struct PlantedTier {
    std::string name;
    int n_journals = 1;
    int papers_per_journal_year = 10;
    int ref_min = 10, ref_max = 30; // m of this tier's own papers
    double in_tier_prob = 0.9;      // share of references staying in-tier
    double attract_sigma = 1.0;     // within-tier citation skew
    double attract_boost = 1.0;     // cross-tier visibility multiplier
    double external_citations_mean = 0.0; // metadata-free (weight-1) inflow per paper
};

struct GeneratorConfig {
    std::uint64_t seed = 1;
    ModelKind model = ModelKind::lognormal;
    int n_journals = 40;  // ignored for planted (derived from tiers)
    int n_papers = 4000;  // ignored for planted
    int year_first = 2018;
    int year_last = 2024;
    std::vector<double> doc_type_mix; // kDocTypeCount entries; default mix when empty
    double lognormal_mu = 0.0;
    double lognormal_sigma = 1.0;
    double powerlaw_alpha = 2.5;
    std::vector<PlantedTier> tiers;
    int ref_min = 5, ref_max = 40;
    double resolvable_frac = 0.8;
    double doi_frac = 0.9;
    double declared_frac = 0.7;
    double truncated_listing_frac = 0.1; // declared kept, placeholders dropped
    double bare_citer_frac = 0.02;       // papers without reference metadata
    int external_per_bare_min = 1, external_per_bare_max = 3;
    int n_publishers = 8;
    int subjects_per_scheme = 12;
    bool emit_subjects = true;

    // Throws std::invalid_argument on invalid or infeasible settings.
    void validate() const;
};

std::vector<double> default_doc_type_mix();

struct SyntheticCorpus {
    std::string papers_jsonl;
    std::string journals_jsonl;
    std::string subjects_csv;
    std::string edges_jsonl;
};

// Byte-identical output for equal (config, seed).
SyntheticCorpus generate(const GeneratorConfig& cfg);

void write_corpus(const SyntheticCorpus& sc, const std::string& dir);

// Round-trips the generated streams through the regular ingestion path.
Corpus ingest(const SyntheticCorpus& sc, CorpusConfig cfg = {});

} // namespace impactum::synth
