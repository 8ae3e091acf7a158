#ifndef STGR_REPORT_HPP
#define STGR_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "stgr/bounds.hpp"
#include "stgr/equivalence.hpp"
#include "stgr/packing.hpp"
#include "stgr/parallel.hpp"

namespace stgr {

/// Fixed 12-significant-digit scientific formatting used by every file
/// writer, so that seeded reruns are byte identical.
std::string fmt_g12(double v);

enum class OutputFormat { Csv, Json };
OutputFormat format_from_name(const std::string& name);

struct TableConfig {
    std::vector<Family> families;
    std::vector<int> ks;
    std::vector<int> ns;
    std::vector<double> rates;
    std::optional<double> kappa_bar;
    std::optional<double> alpha;
    std::optional<double> beta;
};

/// One evaluated table cell.
struct TableRow {
    Family family;
    int k;
    int n;
    double rate;
    BoundReport report;
};

/// Evaluates the grid (invalid (family,k,n) combinations are skipped).
/// Rows come back in deterministic grid order regardless of Exec.
std::vector<TableRow> bounds_table(const TableConfig& config, Exec exec = Exec::Parallel);

std::string bounds_table_csv(const std::vector<TableRow>& rows);
std::string bounds_table_json(const std::vector<TableRow>& rows);

std::string kappa_hist_csv(const KappaHistogram& hist);
std::string kappa_hist_json(const KappaHistogram& hist);

/// Pack-and-check report (min distance, rate, Hamming and GV comparisons).
struct PackReport {
    SpaceSpec space;
    PackingMetric metric;
    double target_distance;
    int size;
    std::optional<double> min_dist; // empty when size < 2
    double rate;
    HammingCheck hamming;
    GvCheck gv;
};
PackReport make_pack_report(const Codebook& cb, double target_distance, double kappa_bar);

std::string pack_report_csv(const PackReport& report);
std::string pack_report_json(const PackReport& report);

} // namespace stgr

#endif
