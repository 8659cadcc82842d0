#include "mls/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mls::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::string& file, const std::string& content) {
    const std::string tmp = file + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open for writing: " + tmp);
        os << content;
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), file.c_str()) != 0)
        throw std::runtime_error("rename failed: " + file);
}

void write_path_csv(const SamplePath& path, const std::string& file) {
    std::string out;
    out.reserve(path.values.size() * 24 + 16);
    out += "t,value\n";
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        out += format_double(path.t_at(k));
        out += ',';
        out += format_double(path.values[k]);
        out += '\n';
    }
    write_text_atomic(file, out);
}

namespace {

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc();
}

std::vector<std::pair<std::string, std::string>> read_rows(const std::string& file,
                                                           bool* had_second) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open: " + file);
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    bool any_second = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            rows.emplace_back(line, "");
        } else {
            rows.emplace_back(line.substr(0, comma), line.substr(comma + 1));
            any_second = true;
        }
    }
    if (had_second) *had_second = any_second;
    return rows;
}

}  // namespace

SamplePath read_path_csv(const std::string& file) {
    const auto rows = read_rows(file, nullptr);
    std::vector<double> ts, vs;
    ts.reserve(rows.size());
    vs.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double t, v;
        if (!parse_double(rows[i].first, t) || !parse_double(rows[i].second, v)) {
            if (i == 0) continue;  // header
            throw std::runtime_error("unparseable row in " + file);
        }
        ts.push_back(t);
        vs.push_back(v);
    }
    if (ts.size() < 3) throw std::runtime_error("path CSV too short: " + file);

    const double dt = ts[1] - ts[0];
    if (!(dt > 0.0)) throw std::runtime_error("non-increasing time grid: " + file);
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
        const double d = ts[i + 1] - ts[i];
        if (std::abs(d - dt) > 1e-9 * std::abs(dt))
            throw std::runtime_error("non-uniform time grid: " + file);
    }

    SamplePath path;
    path.values = std::move(vs);
    path.resolution = static_cast<long>(std::llround(1.0 / dt));
    path.t_start = ts.front();
    path.t_end =
        ts.front() + static_cast<double>(ts.size() - 1) / static_cast<double>(path.resolution);
    path.meta["source"] = file;
    path.validate();
    return path;
}

std::vector<double> read_raw_csv(const std::string& file) {
    bool two_columns = false;
    const auto rows = read_rows(file, &two_columns);
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string& cell = two_columns ? rows[i].second : rows[i].first;
        double v;
        if (!parse_double(cell, v)) {
            if (i == 0) continue;  // header
            throw std::runtime_error("unparseable row in " + file);
        }
        out.push_back(v);
    }
    if (out.empty()) throw std::runtime_error("empty series: " + file);
    return out;
}

void write_series_csv(const EstimateSeries& series, const std::string& file) {
    std::string out = "t0,h_hat,alpha_hat,status\n";
    for (std::size_t i = 0; i < series.t0_values.size(); ++i) {
        out += format_double(series.t0_values[i]);
        out += ',';
        out += format_double(series.h_hat[i]);
        out += ',';
        out += format_double(series.alpha_hat[i]);
        out += ',';
        std::string status = series.status[i];
        std::replace(status.begin(), status.end(), ',', ';');
        out += status;
        out += '\n';
    }
    write_text_atomic(file, out);
}

}  // namespace mls::io
