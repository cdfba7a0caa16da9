// Compares the OpenMP compute kernels against the serial reference
// implementations on a generated corpus and verifies bitwise agreement.
//
//   bench_kernels [n_papers] [n_journals]

#include "impactum/graph.hpp"
#include "impactum/indicators.hpp"
#include "impactum/parallel.hpp"
#include "impactum/percentile.hpp"
#include "impactum/reference_kernels.hpp"
#include "impactum/synth.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace impactum;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

template <typename F>
double time_ms(F&& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return ms_since(start);
}

void print_row(const char* kernel, double serial_ms, double par_ms, int threads, bool identical) {
    std::printf("%-28s %10.1f ms %10.1f ms (x%d) %7.2fx %s\n", kernel, serial_ms, par_ms, threads,
                par_ms > 0 ? serial_ms / par_ms : 0.0, identical ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int n_papers = argc > 1 ? std::atoi(argv[1]) : 200000;
    int n_journals = argc > 2 ? std::atoi(argv[2]) : std::max(20, n_papers / 150);
    int threads = thread_cap();

    synth::GeneratorConfig cfg;
    cfg.seed = 20240601;
    cfg.n_papers = n_papers;
    cfg.n_journals = n_journals;
    cfg.lognormal_sigma = 1.3;

    std::printf("generating corpus: %d papers, %d journals, %d worker threads\n", n_papers,
                n_journals, threads);
    auto sc = synth::generate(cfg);
    Corpus corpus;
    double ingest_ms = time_ms([&] { corpus = synth::ingest(sc); });
    CitationGraph graph;
    double build_ms = time_ms([&] { graph = CitationGraph::build(corpus); });
    std::printf("ingest %.1f ms, graph build %.1f ms, %zu edges\n\n", ingest_ms, build_ms,
                graph.edge_count());

    WindowPolicy policy = WindowPolicy::for_year(cfg.year_last);
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    std::vector<double> frac_serial, frac_par;
    double s1 = time_ms([&] { frac_serial = reference::fractional_counts(graph, policy.i3_cite_years); });
    double p1 = time_ms([&] { frac_par = graph.fractional_counts(policy.i3_cite_years, threads); });
    print_row("fractional_counts", s1, p1, threads, frac_serial == frac_par);

    std::vector<std::int64_t> int_serial, int_par;
    double s2 = time_ms([&] { int_serial = reference::integer_counts(graph, policy.i3_cite_years); });
    double p2 = time_ms([&] { int_par = graph.integer_counts(policy.i3_cite_years, threads); });
    print_row("integer_counts", s2, p2, threads, int_serial == int_par);

    auto cohorts = build_cohorts(corpus, policy.i3_pub_years, default_included_types());
    ClassificationSet cls_serial, cls_par;
    double s3 = time_ms([&] { cls_serial = reference::classify_cohorts(corpus, cohorts, frac_serial); });
    double p3 = time_ms([&] { cls_par = classify_cohorts(corpus, cohorts, frac_par, threads); });
    bool cls_same = cls_serial.percentile == cls_par.percentile && cls_serial.band == cls_par.band;
    print_row("classify_cohorts", s3, p3, threads, cls_same);

    std::vector<IndicatorRow> rows_serial, rows_par;
    double s4 = time_ms([&] {
        rows_serial = compute_indicator_table(corpus, graph, cls_serial, policy, I3Weights{}, 1);
    });
    double p4 = time_ms([&] {
        rows_par = compute_indicator_table(corpus, graph, cls_par, policy, I3Weights{}, threads);
    });
    bool rows_same = rows_serial.size() == rows_par.size();
    for (std::size_t i = 0; rows_same && i < rows_serial.size(); ++i)
        rows_same = rows_serial[i].i3 == rows_par[i].i3 &&
                    rows_serial[i].i3_n == rows_par[i].i3_n &&
                    rows_serial[i].jif == rows_par[i].jif &&
                    rows_serial[i].citescore == rows_par[i].citescore &&
                    rows_serial[i].h_index == rows_par[i].h_index;
    print_row("indicator_table", s4, p4, threads, rows_same);

    bool all_same = frac_serial == frac_par && int_serial == int_par && cls_same && rows_same;
    std::printf("\n%s\n", all_same ? "all kernels agree with the serial reference"
                                   : "KERNEL DISAGREEMENT DETECTED");
    return all_same ? 0 : 1;
}
