#pragma once

// CSV result emission.  One fixed, documented column order (golden-file
// tested) so downstream plotting never guesses:
//
//   sweep_variable,sweep_value,analytic_pc,analytic_ps,
//   sim_pc,sim_pc_ci,sim_ps,sim_ps_ci,
//   pc_tier1..pc_tierK,ps_tier1..ps_tierK,
//   opt_theta_c_db,opt_theta_s_db,opt_r_tau_m,opt_pc,status
//
// Unused measurements stay empty.  Rows are flushed as they are produced so
// a failing sweep still leaves the completed points on disk.

#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetsec/errors.hpp"

namespace hetsec {

struct ResultRow {
    std::string sweep_variable;  ///< empty for single-point commands
    std::optional<double> sweep_value;
    std::optional<double> analytic_pc, analytic_ps;
    std::optional<double> sim_pc, sim_pc_ci, sim_ps, sim_ps_ci;
    std::vector<std::optional<double>> pc_tier, ps_tier;  ///< tier_count entries
    std::optional<double> opt_theta_c_db, opt_theta_s_db, opt_r_tau_m, opt_pc;
    std::string status = "ok";
};

namespace detail {

inline std::string csv_number(const std::optional<double>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", *v);
    return buf;
}

inline void check_probability(const std::optional<double>& v, const char* name) {
    if (v && !(*v >= -1e-9 && *v <= 1.0 + 1e-9))
        throw std::logic_error(std::string("result row: ") + name + " = " +
                               std::to_string(*v) + " is not a probability");
}

}  // namespace detail

class CsvReporter {
public:
    CsvReporter(const std::string& path, int tier_count)
        : file_(path, std::ios::binary), sink_(&file_), tiers_(tier_count) {
        if (!file_) throw ConfigError("cannot open output file '" + path + "'");
        *sink_ << header(tier_count) << '\n';
        sink_->flush();
    }

    CsvReporter(std::ostream& sink, int tier_count) : sink_(&sink), tiers_(tier_count) {
        *sink_ << header(tier_count) << '\n';
        sink_->flush();
    }

    static std::string header(int tier_count) {
        std::string h =
            "sweep_variable,sweep_value,analytic_pc,analytic_ps,sim_pc,sim_pc_ci,"
            "sim_ps,sim_ps_ci";
        for (int k = 1; k <= tier_count; ++k) h += ",pc_tier" + std::to_string(k);
        for (int k = 1; k <= tier_count; ++k) h += ",ps_tier" + std::to_string(k);
        h += ",opt_theta_c_db,opt_theta_s_db,opt_r_tau_m,opt_pc,status";
        return h;
    }

    void write(const ResultRow& row) {
        using detail::check_probability;
        using detail::csv_number;
        check_probability(row.analytic_pc, "analytic_pc");
        check_probability(row.analytic_ps, "analytic_ps");
        check_probability(row.sim_pc, "sim_pc");
        check_probability(row.sim_ps, "sim_ps");
        check_probability(row.opt_pc, "opt_pc");
        if (static_cast<int>(row.pc_tier.size()) > tiers_ ||
            static_cast<int>(row.ps_tier.size()) > tiers_)
            throw std::logic_error("result row: more per-tier values than tiers");

        std::string line = row.sweep_variable;
        line += ',';
        line += csv_number(row.sweep_value);
        for (const auto& v : {row.analytic_pc, row.analytic_ps, row.sim_pc,
                              row.sim_pc_ci, row.sim_ps, row.sim_ps_ci}) {
            line += ',';
            line += csv_number(v);
        }
        for (int k = 0; k < tiers_; ++k) {
            line += ',';
            if (k < static_cast<int>(row.pc_tier.size())) {
                check_probability(row.pc_tier[static_cast<std::size_t>(k)], "pc_tier");
                line += csv_number(row.pc_tier[static_cast<std::size_t>(k)]);
            }
        }
        for (int k = 0; k < tiers_; ++k) {
            line += ',';
            if (k < static_cast<int>(row.ps_tier.size())) {
                check_probability(row.ps_tier[static_cast<std::size_t>(k)], "ps_tier");
                line += csv_number(row.ps_tier[static_cast<std::size_t>(k)]);
            }
        }
        for (const auto& v :
             {row.opt_theta_c_db, row.opt_theta_s_db, row.opt_r_tau_m, row.opt_pc}) {
            line += ',';
            line += csv_number(v);
        }
        line += ',';
        for (char c : row.status) line += (c == ',' || c == '\n') ? ';' : c;
        *sink_ << line << '\n';
        sink_->flush();
    }

private:
    std::ofstream file_;
    std::ostream* sink_;
    int tiers_;
};

}  // namespace hetsec
