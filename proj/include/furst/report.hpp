#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace furst {

struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

struct CheckRow {
    std::string check_id;
    std::string ref; // short description of the identity or limit being checked
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
};

struct Report {
    std::vector<CheckRow> rows;

    void add(CheckRow row) { rows.push_back(std::move(row)); }
    void merge(const Report& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }
    void sort_by_id();
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

// columns: check_id,paper_ref,lhs,rhs,tolerance,pass,runtime_ms (17 significant digits)
void write_report_csv(const Report& report, const std::string& path);
void write_report_json(const Report& report, const std::string& path);
Report read_report_json(const std::string& path);

std::string format_g17(double v);

} // namespace furst
