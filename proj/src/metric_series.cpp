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

#include "kicktomo/metric_series.hpp"

namespace kicktomo {

std::string_view metric_name(Metric m) {
    switch (m) {
    case Metric::fidelity:
        return "fidelity";
    case Metric::loschmidt:
        return "loschmidt";
    case Metric::rel_entropy:
        return "rel_entropy";
    case Metric::otoc:
        return "otoc";
    }
    return "unknown";
}

std::string_view metric_units(Metric m) {
    return m == Metric::rel_entropy ? "nats" : "dimensionless";
}

} // namespace kicktomo
