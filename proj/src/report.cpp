#include "furst/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace furst {

void Report::sort_by_id() {
    std::sort(rows.begin(), rows.end(), [](const CheckRow& a, const CheckRow& b) { return a.check_id < b.check_id; });
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_report_csv(const Report& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoFailure("cannot write " + path);
    os << "check_id,paper_ref,lhs,rhs,tolerance,pass,runtime_ms\n";
    for (const auto& r : report.rows) {
        os << r.check_id << ',' << r.ref << ',' << format_g17(r.lhs) << ',' << format_g17(r.rhs) << ','
           << format_g17(r.tolerance) << ',' << (r.pass ? 1 : 0) << ',' << format_g17(r.runtime_ms) << '\n';
    }
    if (!os) throw IoFailure("write failed for " + path);
}

void write_report_json(const Report& report, const std::string& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : report.rows) {
        arr.push_back({{"check_id", r.check_id},
                       {"paper_ref", r.ref},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass},
                       {"runtime_ms", r.runtime_ms}});
    }
    std::ofstream os(path);
    if (!os) throw IoFailure("cannot write " + path);
    os << nlohmann::json{{"checks", arr}}.dump(2) << '\n';
    if (!os) throw IoFailure("write failed for " + path);
}

Report read_report_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoFailure("cannot read " + path);
    nlohmann::json j;
    is >> j;
    Report rep;
    for (const auto& item : j.at("checks")) {
        CheckRow r;
        r.check_id = item.at("check_id").get<std::string>();
        r.ref = item.at("paper_ref").get<std::string>();
        r.lhs = item.at("lhs").get<double>();
        r.rhs = item.at("rhs").get<double>();
        r.tolerance = item.at("tolerance").get<double>();
        r.pass = item.at("pass").get<bool>();
        r.runtime_ms = item.at("runtime_ms").get<double>();
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

} // namespace furst
