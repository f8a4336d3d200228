#ifndef WINDFARM_WAKE_PLANT_HPP
#define WINDFARM_WAKE_PLANT_HPP

#include <vector>

#include "windfarm/farm_topology.hpp"

namespace windfarm {

// Physical parameters of the nonlinear truth model. induction_scale lets a
// simulation deliberately perturb the plant's induction map relative to the
// controller model to emulate model mismatch.
struct PlantParams {
    double wake_constant = 0.68;         // c_w, must be in (0, 1)
    double filter_time_constant = 5.0;   // tau, s
    double induction_scale = 1.0;        // a = scale * (1 - sqrt(1 - ct)) / 2
    double ct_min = 0.01;
    double ct_max = 8.0 / 9.0;

    void validate() const;
};

// Standard actuator-disk relation between thrust coefficient and induction
// factor; reproduces a = 1/3 at the Betz point ct = 8/9.
double induction_factor(double ct, double scale = 1.0);

// Cross-sectional wake area just in front of the next turbine, given the sum
// of the delayed (filtered) thrust coefficients of every upstream turbine.
double wake_area(double rotor_area, double wake_constant, double delayed_ct_sum);

// Wind speed deficit shed between a turbine and the next one downwind.
double wake_deficit(double wind, double ct, double area,
                    double free_stream, double wake_constant, double rotor_area);

// Actuator-disk power of a single turbine.
double turbine_power(double wind, double ct, double induction,
                     double air_density, double rotor_area);

// One zero-order-hold step of the first-order thrust-coefficient filter.
double ct_filter_step(double filtered_ct, double commanded_ct, double tau, double sample_time);

// Steady state of the farm while every thrust coefficient is held constant.
// Solved directly by sweeping each row from the most upwind column.
struct SteadyState {
    std::vector<double> wind;          // V_i
    std::vector<double> deficit;       // deficit shed by turbine i
    std::vector<double> area_next;     // wake area just in front of the next column
    std::vector<double> power;         // W
    std::vector<double> filtered_ct;
    double total_power = 0.0;
};

SteadyState steady_state(const FarmLayout& layout, const PlantParams& params,
                         const std::vector<double>& ct);

// Nonlinear simulated wind farm: the flow and turbine equations with
// per-pair wake travel delays and the first-order actuation filter. Stands
// in for a medium-fidelity simulator in closed loop. The state is owned
// exclusively by the simulation loop driving it.
class WakePlant {
public:
    struct Outputs {
        std::vector<double> power;  // W, at the current sample
        std::vector<double> wind;   // m/s, at the current sample
    };

    WakePlant(const FarmLayout& layout, const PlantParams& params);

    // Pre-fills every history with the steady state at the given operating
    // thrust coefficients. Must be called before measure/step.
    void warm_start(const std::vector<double>& ct_operating);

    // Outputs at the current sample; does not advance time.
    Outputs measure() const;

    // Applies the commanded thrust coefficients for the current sample and
    // advances one sample. Returns the outputs of the sample being completed
    // (they do not yet depend on this command: actuation passes through the
    // filter first). Commands outside [ct_min, ct_max] are clamped and
    // counted in clamp_warnings().
    Outputs step(const std::vector<double>& ct_command);

    const std::vector<double>& filtered_ct() const { return filtered_ct_; }
    const std::vector<double>& last_applied_ct() const { return applied_ct_; }
    long clamp_warnings() const { return clamp_warnings_; }
    long sample_index() const { return sample_; }
    const PlantParams& params() const { return params_; }

private:
    struct Sweep {
        std::vector<double> wind, power, deficit;
    };
    Sweep sweep() const;
    double deficit_at_age(int turbine, int age, const Sweep& current) const;
    double filtered_ct_at_age(int turbine, int age) const;
    void require_started() const;

    FarmLayout layout_;
    PlantParams params_;
    DelayTable delays_;
    // Ring buffers, one row per turbine: slot (head_ + age - 1) % depth holds
    // the value aged `age` samples. Depth covers the largest same-row delay.
    int depth_;
    std::vector<std::vector<double>> deficit_history_;
    std::vector<std::vector<double>> ct_history_;
    int head_ = 0;
    std::vector<double> filtered_ct_;
    std::vector<double> applied_ct_;
    bool started_ = false;
    long clamp_warnings_ = 0;
    long sample_ = 0;
};

// Steady-state total farm power with every turbine at the Betz point,
// computed both by the direct row sweep and by running the plant to
// convergence; throws if the two routes disagree.
double greedy_power(const FarmLayout& layout, const PlantParams& params);

}  // namespace windfarm

#endif
