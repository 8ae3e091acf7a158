#include "stgr/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace stgr {

namespace {

using nlohmann::json;

const char* kInfeasible = "INFEASIBLE";

std::string opt_field(const std::optional<double>& v) {
    return v ? fmt_g12(*v) : std::string(kInfeasible);
}

json opt_json(const std::optional<double>& v) {
    if (v) return json(*v);
    return json(kInfeasible);
}

} // namespace

std::string fmt_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

OutputFormat format_from_name(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw InvalidSpec("unknown format: " + name);
}

std::vector<TableRow> bounds_table(const TableConfig& config, Exec exec) {
    if (config.families.empty() || config.ks.empty() || config.ns.empty() ||
        config.rates.empty())
        throw InvalidSpec("bounds_table: empty grid");

    struct Cell {
        Family family;
        int k, n;
        double rate;
    };
    std::vector<Cell> cells;
    for (Family family : config.families)
        for (int k : config.ks)
            for (int n : config.ns)
                for (double rate : config.rates) {
                    if (k < 1 || n < 1) throw InvalidSpec("bounds_table: bad k/n");
                    if (family == Family::Stiefel && k > n) continue;
                    if (family == Family::Grassmann && 2 * k > n) continue;
                    cells.push_back({family, k, n, rate});
                }

    std::vector<TableRow> rows(cells.size(), TableRow{Family::Stiefel, 0, 0, 0.0, {}});
    auto body = [&](std::size_t i) {
        const Cell& c = cells[i];
        SpaceSpec space(c.family, c.k, c.n);
        std::optional<EquivConstants> constants;
        if (config.alpha || config.beta) {
            EquivConstants ec = EquivConstants::defaults(space);
            if (config.alpha) ec.alpha = *config.alpha;
            if (config.beta) ec.beta = *config.beta;
            constants = ec;
        }
        rows[i] = TableRow{c.family, c.k, c.n, c.rate,
                           bound_report(BoundQuery(space, c.rate), config.kappa_bar,
                                        constants)};
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(cells.size()); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < cells.size(); ++i) body(i);
    }
    return rows;
}

std::string bounds_table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream out;
    out << "family,k,n,R,D,gv_lower,hamming_upper,theorem_floor,coding_lower,"
           "coding_upper\n";
    for (const TableRow& row : rows) {
        out << family_name(row.family) << ',' << row.k << ',' << row.n << ','
            << fmt_g12(row.rate) << ',' << row.report.D << ','
            << fmt_g12(row.report.gv_lower) << ',' << opt_field(row.report.hamming_upper)
            << ',' << fmt_g12(row.report.theorem_floor) << ','
            << fmt_g12(row.report.coding_lower) << ','
            << opt_field(row.report.coding_upper) << '\n';
    }
    return out.str();
}

std::string bounds_table_json(const std::vector<TableRow>& rows) {
    json arr = json::array();
    for (const TableRow& row : rows) {
        arr.push_back({{"family", family_name(row.family)},
                       {"k", row.k},
                       {"n", row.n},
                       {"R", row.rate},
                       {"D", row.report.D},
                       {"log_vol", row.report.log_vol.value},
                       {"gv_lower", row.report.gv_lower},
                       {"hamming_upper", opt_json(row.report.hamming_upper)},
                       {"theorem_floor", row.report.theorem_floor},
                       {"coding_lower", row.report.coding_lower},
                       {"coding_upper", opt_json(row.report.coding_upper)}});
    }
    return arr.dump(2) + "\n";
}

std::string kappa_hist_csv(const KappaHistogram& hist) {
    std::ostringstream out;
    out << "bin_left,bin_right,count\n";
    for (int i = 0; i < KappaHistogram::kBins; ++i)
        out << fmt_g12(hist.bin_left(i)) << ',' << fmt_g12(hist.bin_right(i)) << ','
            << hist.bin_counts[static_cast<std::size_t>(i)] << '\n';
    out << "# mean_one_minus_kappa," << fmt_g12(hist.mean_one_minus_kappa) << ",min,"
        << fmt_g12(hist.min_value) << ",max," << fmt_g12(hist.max_value) << ",samples,"
        << hist.samples << '\n';
    return out.str();
}

std::string kappa_hist_json(const KappaHistogram& hist) {
    json bins = json::array();
    for (int i = 0; i < KappaHistogram::kBins; ++i)
        bins.push_back({{"bin_left", hist.bin_left(i)},
                        {"bin_right", hist.bin_right(i)},
                        {"count", hist.bin_counts[static_cast<std::size_t>(i)]}});
    json out{{"mean_one_minus_kappa", hist.mean_one_minus_kappa},
             {"min", hist.min_value},
             {"max", hist.max_value},
             {"samples", hist.samples},
             {"bins", std::move(bins)}};
    return out.dump(2) + "\n";
}

PackReport make_pack_report(const Codebook& cb, double target_distance, double kappa_bar) {
    PackReport report{cb.space,
                      cb.metric,
                      target_distance,
                      static_cast<int>(cb.points.size()),
                      std::nullopt,
                      rate(cb),
                      HammingCheck{0.0, 0.0, true},
                      GvCheck{}};
    if (report.size >= 2) {
        report.min_dist = min_distance(cb);
        report.hamming = check_hamming(cb, kappa_bar);
    }
    report.gv = check_gv(cb.space, cb.metric, target_distance, report.size);
    return report;
}

std::string pack_report_csv(const PackReport& report) {
    std::ostringstream out;
    out << "family,k,n,metric,target_distance,size,min_distance,rate,hamming_lhs_log,"
           "hamming_rhs_log,hamming_passes,gv_floor,gv_exact_floor,gv_passes\n";
    out << family_name(report.space.family) << ',' << report.space.k << ','
        << report.space.n << ',' << metric_name(report.metric) << ','
        << fmt_g12(report.target_distance) << ',' << report.size << ',';
    if (report.min_dist)
        out << fmt_g12(*report.min_dist);
    else
        out << "TOO_FEW_POINTS";
    out << ',' << fmt_g12(report.rate) << ',';
    if (report.size >= 2)
        out << fmt_g12(report.hamming.lhs_log) << ',' << fmt_g12(report.hamming.rhs_log)
            << ',' << (report.hamming.passes ? "pass" : "FAIL");
    else
        out << ",,skipped";
    out << ',' << report.gv.gv_floor << ',';
    if (report.gv.exact_floor)
        out << *report.gv.exact_floor;
    out << ',' << (report.gv.passes ? "pass" : "FAIL") << '\n';
    return out.str();
}

std::string pack_report_json(const PackReport& report) {
    json out{{"family", family_name(report.space.family)},
             {"k", report.space.k},
             {"n", report.space.n},
             {"metric", metric_name(report.metric)},
             {"target_distance", report.target_distance},
             {"size", report.size},
             {"rate", report.rate},
             {"gv_floor", report.gv.gv_floor},
             {"gv_passes", report.gv.passes}};
    out["min_distance"] = report.min_dist ? json(*report.min_dist) : json("TOO_FEW_POINTS");
    if (report.gv.exact_floor) out["gv_exact_floor"] = *report.gv.exact_floor;
    if (report.size >= 2) {
        out["hamming"] = {{"lhs_log", report.hamming.lhs_log},
                          {"rhs_log", report.hamming.rhs_log},
                          {"passes", report.hamming.passes}};
    } else {
        out["hamming"] = "skipped";
    }
    return out.dump(2) + "\n";
}

} // namespace stgr
