#include "windfarm/farm_topology.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "windfarm/errors.hpp"

namespace windfarm {

FarmLayout FarmLayout::build(const FarmConfig& config) {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw ValidationError(msg);
    };
    require(config.rows >= 1, "farm.rows must be >= 1");
    require(config.cols >= 1, "farm.cols must be >= 1");
    require(config.downstream_spacing > 0.0, "farm.downstream_spacing must be > 0");
    require(config.crosswind_spacing > 0.0, "farm.crosswind_spacing must be > 0");
    require(config.rotor_diameter > 0.0, "farm.rotor_diameter must be > 0");
    require(config.free_stream > 0.0, "farm.free_stream must be > 0");
    require(config.air_density > 0.0, "farm.air_density must be > 0");
    require(config.sample_time > 0.0, "farm.sample_time must be > 0");
    return FarmLayout(config);
}

double FarmLayout::rotor_area() const {
    return 0.25 * std::numbers::pi * cfg_.rotor_diameter * cfg_.rotor_diameter;
}

DelayTable DelayTable::compute(const FarmLayout& layout) {
    DelayTable table;
    table.cols_ = layout.cols();
    table.by_gap_.reserve(layout.cols() > 0 ? layout.cols() - 1 : 0);
    for (int gap = 1; gap < layout.cols(); ++gap) {
        const double distance = gap * layout.downstream_spacing();
        const double samples = distance / (layout.free_stream() * layout.sample_time());
        // llround rounds half away from zero, which keeps the table
        // deterministic across platforms.
        table.by_gap_.push_back(static_cast<int>(std::llround(samples)));
    }
    return table;
}

int DelayTable::gap_delay(int gap) const {
    if (gap < 1 || gap >= cols_) throw std::logic_error("DelayTable: column gap out of range");
    return by_gap_[static_cast<std::size_t>(gap - 1)];
}

int DelayTable::delay(int j, int i) const {
    const int cj = j % cols_;
    const int ci = i % cols_;
    if (j / cols_ != i / cols_ || cj >= ci)
        throw std::logic_error("DelayTable: delay is defined only for same-row pairs with col(j) < col(i)");
    return gap_delay(ci - cj);
}

int DelayTable::max_row_delay() const {
    return by_gap_.empty() ? 0 : by_gap_.back();
}

InteractionSets interaction_sets(const FarmLayout& layout, const DelayTable& delays, int horizon) {
    if (horizon < 1) throw ValidationError("interaction_sets: horizon must be >= 1");
    const int n = layout.size();
    InteractionSets sets;
    sets.horizon = horizon;
    sets.theta_plus.resize(n);
    sets.theta_minus.resize(n);
    sets.Theta_plus.resize(n);
    sets.Theta_minus.resize(n);
    sets.Theta_plus_H.resize(n);
    sets.Theta_minus_H.resize(n);
    for (int i = 0; i < n; ++i) {
        const int col = layout.col_of(i);
        if (col > 0) sets.theta_plus[i] = i - 1;
        if (col + 1 < layout.cols()) sets.theta_minus[i] = i + 1;
        for (int c = 0; c < layout.cols(); ++c) {
            const int j = layout.index(layout.row_of(i), c);
            if (c < col) {
                sets.Theta_plus[i].push_back(j);
                if (delays.delay(j, i) <= horizon) sets.Theta_plus_H[i].push_back(j);
            } else if (c > col) {
                sets.Theta_minus[i].push_back(j);
                if (delays.delay(i, j) <= horizon) sets.Theta_minus_H[i].push_back(j);
            }
        }
    }
    return sets;
}

}  // namespace windfarm
