#pragma once

#include "impactum/compare.hpp"
#include "impactum/corpus.hpp"
#include "impactum/indicators.hpp"
#include "impactum/percentile.hpp"

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace impactum {

// indicators.csv: journal_id,year,n_pubs,i3,i3_n,jif,citescore,h,i10,h5 with
// empty fields for undefined values, rows sorted by (journal_id, year).
std::string indicators_to_csv(std::span<const IndicatorRow> rows);
std::string indicators_to_jsonl(std::span<const IndicatorRow> rows);

// Throws std::runtime_error on a bad header or unparsable row.
std::vector<IndicatorRow> indicators_from_csv(std::istream& in);

// Sidecar with the integer citation totals backing the rank-quartile
// summaries: journal_id,year,citations.
std::string citations_to_csv(std::span<const IndicatorRow> rows);
void apply_citations_csv(std::istream& in, std::vector<IndicatorRow>& rows);

// Per-paper dump: paper_id,year,doc_type,frac_count,percentile,class.
std::string classifications_to_csv(const Corpus& corpus, std::span<const Cohort> cohorts,
                                   const ClassificationSet& classes);

// Builds a SourceTable from an indicators CSV; journal metadata comes from
// the registry when available, otherwise the journal id doubles as title.
SourceTable load_source_table(std::string label, std::istream& indicators_csv,
                              const Corpus* registry);

// Writes the comparison artifact set (concordance.csv, quadrants_*.csv,
// rank_quartiles_*.csv, crosswalk_edges.csv, subject_trends.csv,
// publisher_shift.csv, ecdf_diff.csv, quartile panels) under out_dir.
// Returns the file names written.
std::vector<std::string> write_compare_outputs(const CompareOutputs& outputs,
                                               const CompareConfig& cfg,
                                               const std::string& out_dir);

} // namespace impactum
