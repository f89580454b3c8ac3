// Copyright 2026 The qlayerwise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlw/training/record_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "qlw/errors.hpp"

namespace qlw::training {
namespace {

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_real(const std::string &text) {
    if (text == "nan") {
        return std::nan("");
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) {
        throw ParseError("bad real '" + text + "'");
    }
    return v;
}

} // namespace

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_run_rows(std::ostream &out, const RunRecord &record) {
    for (const auto &row : record.rows) {
        out << record.run_id << ',' << record.strategy << ',' << row.epoch << ',' << row.segment
            << ',' << row.n_trainable << ',' << format_real(row.train_loss) << ','
            << format_real(row.test_error) << ',' << row.cumulative_measurements << ','
            << format_real(row.wall_seconds_estimate) << ',' << row.forward_measurements << ','
            << (record.diverged ? 1 : 0) << ',' << record.config_label << '\n';
    }
}

void write_runs_csv(std::ostream &out, std::span<const RunRecord> records,
                    const std::string &comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << kRunsCsvHeader << '\n';
    for (const auto &r : records) {
        write_run_rows(out, r);
    }
}

std::vector<RunRecord> read_runs_csv(std::istream &in) {
    std::vector<RunRecord> records;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != kRunsCsvHeader) {
                throw ParseError("runs.csv line " + std::to_string(line_no) +
                                 ": unexpected header");
            }
            header_seen = true;
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 12) {
            throw ParseError("runs.csv line " + std::to_string(line_no) + ": expected 12 fields");
        }
        try {
            auto [it, inserted] = index.try_emplace(f[0], records.size());
            if (inserted) {
                RunRecord r;
                r.run_id = f[0];
                r.strategy = f[1];
                r.config_label = f[11];
                records.push_back(std::move(r));
            }
            auto &record = records[it->second];
            EpochRow row;
            row.epoch = std::stoull(f[2]);
            row.segment = std::stoull(f[3]);
            row.n_trainable = std::stoull(f[4]);
            row.train_loss = parse_real(f[5]);
            row.test_error = parse_real(f[6]);
            row.cumulative_measurements = std::stoull(f[7]);
            row.wall_seconds_estimate = parse_real(f[8]);
            row.forward_measurements = std::stoull(f[9]);
            record.diverged = record.diverged || f[10] == "1";
            record.rows.push_back(row);
        } catch (const std::logic_error &e) {
            throw ParseError("runs.csv line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

} // namespace qlw::training
