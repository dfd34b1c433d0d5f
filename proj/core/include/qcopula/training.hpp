#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcopula/qopula.hpp"

namespace qcopula {

struct TrainingRecord {
    std::size_t iteration = 0;
    std::vector<std::pair<std::string, double>> metrics;  // emitted in this order
    ParamVector theta;                                    // optional snapshot, may be empty

    std::optional<double> metric(const std::string& name) const {
        for (const auto& [k, v] : metrics) {
            if (k == name) return v;
        }
        return std::nullopt;
    }
};

/// Invoked after every iteration so callers can stream logs.
using RecordSink = std::function<void(const TrainingRecord&)>;

}  // namespace qcopula
