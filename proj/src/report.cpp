#include "pll/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pll {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

namespace {

std::string num_or_empty(double v) {
    return std::isnan(v) ? std::string{} : format_double(v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_num(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::stod(s);
}

} // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "k0_over_tau1,tau2,k,method,omega_l,omega_l_tau1_over_k0,case,"
          "err_estimate,error\n";
    for (const auto& r : rows) {
        const double y = r.omega_l / r.k0_over_tau1;
        os << format_double(r.k0_over_tau1) << ',' << format_double(r.tau2) << ','
           << format_double(r.k) << ',' << to_string(r.method) << ','
           << num_or_empty(r.omega_l) << ',' << num_or_empty(y) << ','
           << (r.error.empty() ? to_string(r.case_tag) : "") << ','
           << num_or_empty(r.err_estimate) << ',' << csv_escape(r.error) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
    std::vector<SweepRow> rows;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("sweep csv: empty stream");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9) throw std::runtime_error("sweep csv: bad row: " + line);
        SweepRow r;
        r.k0_over_tau1 = parse_num(f[0]);
        r.tau2 = parse_num(f[1]);
        r.k = parse_num(f[2]);
        r.method = (f[3] == "analytic") ? LockInMethod::Analytic : LockInMethod::Numeric;
        r.omega_l = parse_num(f[4]);
        if (f[6] == "Node")
            r.case_tag = StableCase::Node;
        else if (f[6] == "DegenerateNode")
            r.case_tag = StableCase::DegenerateNode;
        else
            r.case_tag = StableCase::Focus;
        r.err_estimate = parse_num(f[7]);
        r.error = f[8];
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

void json_kv(std::ostream& os, const char* key, const std::string& val, bool quote,
             bool comma = true) {
    os << '"' << key << "\":";
    if (quote)
        os << '"' << val << '"';
    else
        os << val;
    if (comma) os << ',';
}

} // namespace

std::string lockin_report_json(const LoopParameters& p,
                               const std::vector<LockInResult>& results,
                               bool deterministic) {
    std::ostringstream os;
    os << "{\"params\":{";
    json_kv(os, "tau1", format_double(p.tau1()), false);
    json_kv(os, "tau2", format_double(p.tau2()), false);
    json_kv(os, "k0", format_double(p.k0()), false);
    json_kv(os, "slope_k", format_double(p.slope_k()), false);
    json_kv(os, "omega_delta_free", format_double(p.omega_delta_free()), false,
            false);
    os << "},";
    json_kv(os, "case", to_string(classify_stable(p)), true);
    os << "\"results\":[";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        os << "{";
        json_kv(os, "method", to_string(r.method), true);
        json_kv(os, "omega_l", format_double(r.omega_l), false);
        json_kv(os, "s_prime_zero", format_double(r.s_prime_at_zero), false);
        os << "\"diagnostics\":{";
        std::size_t j = 0;
        for (const auto& [key, val] : r.diagnostics) {
            json_kv(os, key.c_str(), format_double(val), false,
                    ++j < r.diagnostics.size());
        }
        os << "}}";
        if (i + 1 < results.size()) os << ',';
    }
    os << "],";
    if (!deterministic) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
        json_kv(os, "generated_at", buf, true);
    }
    os << "\"versions\":{";
    json_kv(os, "pll-lockin", kVersion, true);
    json_kv(os, "report", "1", false, false);
    os << "}}";
    return os.str();
}

} // namespace pll
