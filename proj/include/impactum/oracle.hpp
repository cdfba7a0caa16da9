#pragma once

#include "impactum/corpus.hpp"
#include "impactum/percentile.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

// Direct-enumeration re-implementation of the indicator pipeline, kept free
// of the graph/percentile/indicator engine code so equivalence tests mean
// something. Desk-scale only.
namespace impactum::oracle {

inline constexpr std::size_t kMaxPapers = 200000;

struct OracleIndicators {
    std::int64_t n_pubs = 0;
    std::int64_t i3 = 0;
    std::optional<double> i3_n;
    std::optional<double> jif;
    std::optional<double> citescore;
};

// One entry per journal record. Throws std::invalid_argument above
// kMaxPapers.
std::map<std::string, OracleIndicators> all_indicators(const Corpus& corpus, int year,
                                                       const I3Weights& weights = {});

OracleIndicators indicators(const Corpus& corpus, std::string_view journal_id, int year,
                            const I3Weights& weights = {});

// Fractional citation counts over citing years {Y-3..Y}, by direct
// enumeration; exposed for classification cross-checks.
std::map<std::string, double> fractional_counts(const Corpus& corpus, int year);

} // namespace impactum::oracle
