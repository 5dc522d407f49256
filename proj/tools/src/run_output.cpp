#include "fdci_app/run_output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace fdci::app {

namespace {

struct Column {
    const char* json_name;
    const char* csv_name;
    std::vector<double> RunOutput::*member;
};

constexpr Column kColumns[] = {
    {"x", "x", &RunOutput::x},
    {"fd_solution", "fd", &RunOutput::fd_solution},
    {"posterior_mean", "mean", &RunOutput::posterior_mean},
    {"ci_lower", "lower", &RunOutput::ci_lower},
    {"ci_upper", "upper", &RunOutput::ci_upper},
    {"width", "width", &RunOutput::width},
    {"scaled_width", "scaled_width", &RunOutput::scaled_width},
    {"exact", "exact", &RunOutput::exact},
    {"abs_error", "abs_error", &RunOutput::abs_error},
    {"rel_error", "rel_error", &RunOutput::rel_error},
    {"truncation_leading", "truncation_leading", &RunOutput::truncation_leading},
    {"reference", "reference", &RunOutput::reference},
};

Json array_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) {
        if (std::isfinite(x)) {
            a.push_back(x);
        } else {
            a.push_back(nullptr);
        }
    }
    return a;
}

std::vector<double> array_from(const Json& a) {
    std::vector<double> v;
    v.reserve(a.size());
    for (const Json& x : a) {
        v.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN() : x.get<double>());
    }
    return v;
}

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void RunOutput::validate() const {
    const std::size_t n = x.size();
    for (const Column& c : kColumns) {
        const auto& v = this->*c.member;
        if (!v.empty() && v.size() != n) {
            throw std::invalid_argument(std::string("RunOutput: column ") + c.json_name +
                                        " has wrong length");
        }
    }
    for (const auto& [name, v] : extra) {
        if (v.size() != n) throw std::invalid_argument("RunOutput: column " + name + " has wrong length");
    }
}

Json to_json(const RunOutput& out) {
    out.validate();
    Json doc = Json::object();
    doc["metadata"] = out.metadata;
    Json arrays = Json::object();
    for (const Column& c : kColumns) {
        const auto& v = out.*c.member;
        if (!v.empty()) arrays[c.json_name] = array_json(v);
    }
    for (const auto& [name, v] : out.extra) arrays[name] = array_json(v);
    doc["arrays"] = std::move(arrays);
    return doc;
}

RunOutput from_json(const Json& doc) {
    RunOutput out;
    out.metadata = doc.at("metadata");
    for (const auto& [key, value] : doc.at("arrays").items()) {
        bool known = false;
        for (const Column& c : kColumns) {
            if (key == c.json_name) {
                out.*c.member = array_from(value);
                known = true;
                break;
            }
        }
        if (!known) out.extra.emplace_back(key, array_from(value));
    }
    out.validate();
    return out;
}

void write_json(std::ostream& os, const RunOutput& out) { os << to_json(out).dump(2) << '\n'; }

void write_csv(std::ostream& os, const RunOutput& out) {
    out.validate();
    std::vector<std::pair<std::string, const std::vector<double>*>> cols;
    for (const Column& c : kColumns) {
        const auto& v = out.*c.member;
        if (!v.empty()) cols.emplace_back(c.csv_name, &v);
    }
    for (const auto& [name, v] : out.extra) cols.emplace_back(name, &v);

    for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << cols[j].first;
    os << '\n';
    for (std::size_t i = 0; i < out.x.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << fmt17((*cols[j].second)[i]);
        os << '\n';
    }
}

void export_output(const RunOutput& out, Format fmt, const std::string& path) {
    const auto emit = [&](std::ostream& os) {
        if (fmt == Format::Json) {
            write_json(os, out);
        } else {
            write_csv(os, out);
        }
    };
    if (path == "-") {
        emit(std::cout);
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("cannot write to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    emit(f);
    f.close();
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

RunOutput read_json_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return from_json(Json::parse(f));
}

}  // namespace fdci::app
