#ifndef WINDFARM_FARM_TOPOLOGY_HPP
#define WINDFARM_FARM_TOPOLOGY_HPP

#include <optional>
#include <vector>

namespace windfarm {

// Raw farm geometry and ambient conditions, as read from the [farm]
// section of a configuration file.
struct FarmConfig {
    int rows = 0;                      // M
    int cols = 0;                      // N
    double downstream_spacing = 0.0;   // m, between consecutive columns
    double crosswind_spacing = 0.0;    // m, between rows
    double rotor_diameter = 0.0;       // m
    double free_stream = 0.0;          // m/s
    double air_density = 1.2;          // kg/m^3
    double sample_time = 1.0;          // s
};

// Validated rectangular farm. Turbines are indexed row-major starting at
// the top row, so the most upwind turbine of row m is m*cols().
// Immutable after construction; safe to share across threads.
class FarmLayout {
public:
    static FarmLayout build(const FarmConfig& config);

    int rows() const { return cfg_.rows; }
    int cols() const { return cfg_.cols; }
    int size() const { return cfg_.rows * cfg_.cols; }

    int row_of(int turbine) const { return turbine / cfg_.cols; }
    int col_of(int turbine) const { return turbine % cfg_.cols; }
    int index(int row, int col) const { return row * cfg_.cols + col; }
    bool same_row(int a, int b) const { return row_of(a) == row_of(b); }
    int most_upwind(int row) const { return row * cfg_.cols; }

    double downstream_spacing() const { return cfg_.downstream_spacing; }
    double crosswind_spacing() const { return cfg_.crosswind_spacing; }
    double rotor_diameter() const { return cfg_.rotor_diameter; }
    double free_stream() const { return cfg_.free_stream; }
    double air_density() const { return cfg_.air_density; }
    double sample_time() const { return cfg_.sample_time; }
    double rotor_area() const;  // (pi/4) D^2, always derived

private:
    explicit FarmLayout(const FarmConfig& cfg) : cfg_(cfg) {}
    FarmConfig cfg_;
};

// Wake travel delays in samples between same-row turbine pairs.
// delay(j, i) is defined for col(j) < col(i) in the same row and equals
// round(gap * downstream_spacing / (free_stream * sample_time)), with
// round-half-away-from-zero.
class DelayTable {
public:
    static DelayTable compute(const FarmLayout& layout);

    int delay(int j, int i) const;       // same-row pair, col(j) < col(i)
    int gap_delay(int gap) const;        // gap in columns, 1 <= gap < cols
    int max_row_delay() const;           // delay across a full row (0 if one column)
    int cols() const { return cols_; }

private:
    std::vector<int> by_gap_;  // by_gap_[g-1] = delay over g column gaps
    int cols_ = 0;
};

// Upstream/downstream neighbour structure. theta_plus[i] is the turbine
// immediately upwind of i in its row (empty for the most upwind turbine),
// Theta_plus[i] all same-row upwind turbines, and the _H variants keep
// only members whose wake reaches within the horizon.
struct InteractionSets {
    int horizon = 0;
    std::vector<std::optional<int>> theta_plus;
    std::vector<std::optional<int>> theta_minus;
    std::vector<std::vector<int>> Theta_plus;
    std::vector<std::vector<int>> Theta_minus;
    std::vector<std::vector<int>> Theta_plus_H;
    std::vector<std::vector<int>> Theta_minus_H;
};

InteractionSets interaction_sets(const FarmLayout& layout, const DelayTable& delays, int horizon);

}  // namespace windfarm

#endif
