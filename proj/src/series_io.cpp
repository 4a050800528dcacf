// Copyright 2026 The kicktomo Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <fstream>
#include <sstream>

#include "kicktomo/experiments.hpp"

namespace kicktomo {

namespace {

constexpr std::string_view kHeader = "experiment,lambda,delta_lambda,eta,step,value,stderr";

std::string optional_field(const std::optional<double> &v) {
    return v ? format_exact(*v) : std::string();
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

double parse_field(std::string_view text, const std::filesystem::path &path, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad number '" +
                                 std::string(text) + "'");
    return v;
}

std::optional<double> parse_optional(std::string_view text, const std::filesystem::path &path,
                                     std::size_t line_no) {
    if (text.empty())
        return std::nullopt;
    return parse_field(text, path, line_no);
}

Metric parse_metric(std::string_view name, const std::filesystem::path &path) {
    for (Metric m : {Metric::fidelity, Metric::loschmidt, Metric::rel_entropy, Metric::otoc})
        if (metric_name(m) == name)
            return m;
    throw std::runtime_error(path.string() + ": unknown metric '" + std::string(name) + "'");
}

} // namespace

void write_series(const MetricSeries &series, std::string_view experiment,
                  const SeriesMetadata &metadata, const std::filesystem::path &path) {
    if (series.values.size() != series.times.size() ||
        (series.has_stderr() && series.stderr.size() != series.times.size()))
        throw PreconditionError("series columns differ in length");

    std::ostringstream os;
    for (const auto &[key, value] : metadata)
        os << "# " << key << ": " << value << '\n';
    os << kHeader << '\n';
    const std::string lambda = optional_field(series.params.lambda);
    const std::string dlambda = optional_field(series.params.delta_lambda);
    const std::string eta = optional_field(series.params.eta);
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << experiment << ',' << lambda << ',' << dlambda << ',' << eta << ',' << series.times[i] << ','
           << format_exact(series.values[i]) << ',';
        if (series.has_stderr())
            os << format_exact(series.stderr[i]);
        os << '\n';
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << os.str();
    out.close();
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

SeriesFile read_series(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());

    SeriesFile file;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool any_stderr = false;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos)
                continue;
            std::string key = line.substr(1, colon - 1);
            std::string value = line.substr(colon + 1);
            key.erase(0, key.find_first_not_of(' '));
            value.erase(0, value.find_first_not_of(' '));
            file.metadata[key] = value;
            continue;
        }
        if (!header_seen) {
            if (line != kHeader)
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": unexpected header");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 7)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected 7 fields");
        if (first_row) {
            file.experiment = std::string(fields[0]);
            file.series.params.lambda = parse_optional(fields[1], path, line_no);
            file.series.params.delta_lambda = parse_optional(fields[2], path, line_no);
            file.series.params.eta = parse_optional(fields[3], path, line_no);
            any_stderr = !fields[6].empty();
            first_row = false;
        }
        file.series.times.push_back(static_cast<int>(parse_field(fields[4], path, line_no)));
        file.series.values.push_back(parse_field(fields[5], path, line_no));
        if (any_stderr)
            file.series.stderr.push_back(parse_field(fields[6], path, line_no));
    }
    if (!header_seen)
        throw std::runtime_error(path.string() + ": missing CSV header");
    if (const auto it = file.metadata.find("metric"); it != file.metadata.end())
        file.series.metric = parse_metric(it->second, path);
    if (const auto it = file.metadata.find("seed"); it != file.metadata.end())
        file.series.params.seed = std::stoull(it->second);
    return file;
}

} // namespace kicktomo
