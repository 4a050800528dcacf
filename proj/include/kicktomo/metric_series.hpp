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

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "kicktomo/types.hpp"

namespace kicktomo {

enum class Metric { fidelity, loschmidt, rel_entropy, otoc };

std::string_view metric_name(Metric m);
/// Unit label written into series metadata.
std::string_view metric_units(Metric m);

/// Run coordinates of one series; unset fields are written as empty CSV cells.
struct SeriesParams {
    std::optional<double> lambda;
    std::optional<double> delta_lambda;
    std::optional<double> eta;
    Seed seed = 0;
};

/// Time-indexed values of one metric. stderr is empty unless the series is
/// an ensemble mean.
struct MetricSeries {
    Metric metric = Metric::fidelity;
    std::vector<int> times;
    std::vector<double> values;
    std::vector<double> stderr;
    SeriesParams params;

    [[nodiscard]] std::size_t size() const { return times.size(); }
    [[nodiscard]] bool has_stderr() const { return !stderr.empty(); }
};

} // namespace kicktomo
