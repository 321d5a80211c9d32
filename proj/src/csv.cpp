#include "maglev/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "maglev/errors.hpp"

namespace maglev {

namespace {

void append(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, ptr);
}

void append_row(std::string& out, const LogRecord& r, bool with_delta_u) {
    const double values[] = {r.t,          r.Y,          r.v,          r.lambda,      r.i,
                             r.u,          r.psi,        r.eta_hat,    r.lambda_hat,  r.v_hat,
                             r.Y_hat,      r.Delta,      r.Ycal,       r.z,           r.phi[0],
                             r.phi[1],     r.phi[2],     r.phi[3],     r.phi[4],      r.e_lambda,
                             r.e_v,        r.e_Y,        r.Y_star,     r.dY_star,     r.ddY_star,
                             r.dddY_star,  r.excitation, r.clamp ? 1.0 : 0.0,
                             r.constraint_violated ? 1.0 : 0.0};
    bool first = true;
    for (double v : values) {
        if (!first) out.push_back(',');
        first = false;
        append(out, v);
    }
    if (with_delta_u) {
        out.push_back(',');
        append(out, r.delta_u);
    }
    out.push_back('\n');
}

std::string join(const std::vector<std::string>& cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out.push_back(',');
        out += cols[i];
    }
    out.push_back('\n');
    return out;
}

std::vector<double> metric_values(const RunMetrics& m) {
    return {m.duration,
            m.settle_lambda,
            m.settle_v,
            m.settle_Y,
            m.settle_tracking,
            m.final_e_lambda,
            m.final_e_v,
            m.final_e_Y,
            m.final_tracking,
            m.max_abs_u,
            m.excitation_integral,
            m.delta_not_l2_plausible ? 1.0 : 0.0,
            static_cast<double>(m.clamp_steps),
            static_cast<double>(m.constraint_violation_steps),
            m.aborted ? 1.0 : 0.0,
            m.abort_time};
}

}  // namespace

std::vector<std::string> log_columns(bool with_delta_u) {
    std::vector<std::string> cols = {
        "t",        "Y",        "v",        "lambda",     "i",          "u",
        "psi",      "eta_hat",  "lambda_hat", "v_hat",    "Y_hat",      "Delta",
        "Ycal",     "z",        "phi1",     "phi2",       "phi3",       "phi4",
        "phi5",     "e_lambda", "e_v",      "e_Y",        "Y_star",     "dY_star",
        "ddY_star", "dddY_star", "excitation", "clamp",   "constraint_violated"};
    if (with_delta_u) cols.emplace_back("delta_u");
    return cols;
}

std::vector<std::string> metrics_columns() {
    return {"duration",        "settle_lambda",   "settle_v",          "settle_Y",
            "settle_tracking", "final_e_lambda",  "final_e_v",         "final_e_Y",
            "final_tracking",  "max_abs_u",       "excitation_integral", "delta_not_l2_plausible",
            "clamp_steps",     "constraint_violation_steps", "aborted", "abort_time"};
}

std::string format_value(double v) {
    std::string s;
    append(s, v);
    return s;
}

std::string log_to_csv(const std::vector<LogRecord>& log, bool with_delta_u) {
    std::string out = join(log_columns(with_delta_u));
    out.reserve(out.size() + log.size() * 600);
    for (const auto& r : log) append_row(out, r, with_delta_u);
    return out;
}

std::string metrics_to_csv(const RunMetrics& m) {
    std::string out = join(metrics_columns());
    const auto vals = metric_values(m);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) out.push_back(',');
        append(out, vals[i]);
    }
    out.push_back('\n');
    return out;
}

std::string sweep_metrics_to_csv(const std::string& axis, const std::vector<SweepRun>& runs) {
    auto cols = metrics_columns();
    cols.insert(cols.begin(), {"run", "axis", "value"});
    std::string out = join(cols);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        out += "run_" + std::to_string(i) + "," + axis + ",";
        append(out, runs[i].value);
        for (double v : metric_values(runs[i].result.metrics)) {
            out.push_back(',');
            append(out, v);
        }
        out.push_back('\n');
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

void write_csv(const std::vector<LogRecord>& log, const std::string& path, bool with_delta_u) {
    write_text_file(path, log_to_csv(log, with_delta_u));
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("csv: missing header");
    std::string field;
    for (std::istringstream hs(line); std::getline(hs, field, ',');) table.header.push_back(field);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.header.size());
        const char* p = line.data();
        const char* end = p + line.size();
        while (p <= end) {
            const char* comma = std::find(p, end, ',');
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(p, comma, v);
            if (ec != std::errc{} || ptr != comma) {
                throw Error("csv: bad number on line " + std::to_string(line_no));
            }
            row.push_back(v);
            p = comma + 1;
        }
        if (row.size() != table.header.size()) {
            throw Error("csv: wrong field count on line " + std::to_string(line_no));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace maglev
