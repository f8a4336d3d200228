#ifndef WINDFARM_LINEAR_MODEL_HPP
#define WINDFARM_LINEAR_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

#include "windfarm/farm_topology.hpp"
#include "windfarm/wake_plant.hpp"

namespace windfarm {

// Multipliers on the linearized flow/power gains, used to tune the
// controller model against a real farm. All default to 1 (no retuning).
struct TuningConstants {
    double c_VV = 1.0;    // deficit vs wind
    double c_VCT = 1.0;   // deficit vs thrust coefficient
    double c_VA = 1.0;    // deficit vs wake area
    double c_PV = 1.0;    // power vs wind
    double c_PCT = 1.0;   // power vs thrust coefficient
};

// Controller-side model parameters. The plant may be perturbed relative to
// these to emulate model mismatch.
struct ControlModel {
    double wake_constant = 0.68;
    double filter_time_constant = 5.0;
    TuningConstants tuning;
};

// Operating point: the controller model's steady state at a chosen thrust
// coefficient vector, one entry per turbine.
struct LinearizationPoint {
    std::vector<double> ct;         // C_T at the point
    std::vector<double> wind;       // V
    std::vector<double> induction;  // a
    std::vector<double> deficit;    // deficit shed by each turbine
    std::vector<double> area_next;  // wake area in front of the next column
    std::vector<double> power;      // W

    // Computes the steady state of the controller model at ct0 and verifies
    // ct0 is strictly inside [ct_min, ct_max].
    static LinearizationPoint from_steady_state(const FarmLayout& layout, const ControlModel& model,
                                                const std::vector<double>& ct0, double ct_min,
                                                double ct_max);
};

struct DeficitPartials {
    double wrt_wind = 0.0;
    double wrt_ct = 0.0;
    double wrt_area = 0.0;
};

struct PowerPartials {
    double wrt_wind = 0.0;
    double wrt_ct = 0.0;
};

// Analytic partial derivatives of the deficit and power maps at the point.
DeficitPartials deficit_partials(const LinearizationPoint& point, double wake_constant,
                                 double rotor_area, double free_stream, int turbine);
PowerPartials power_partials(const LinearizationPoint& point, double air_density,
                             double rotor_area, int turbine);

// Constant bias terms that make the tuned linear model exact at the point.
struct BiasTerms {
    std::vector<double> deficit;  // one per turbine
    std::vector<double> power;    // one per turbine
};

BiasTerms assemble_bias_terms(const FarmLayout& layout, const LinearizationPoint& point,
                              const TuningConstants& tuning,
                              const std::vector<DeficitPartials>& dp,
                              const std::vector<PowerPartials>& pp);

// One delayed-signal segment pair inside a subsystem state vector. Entries
// of age `head_age + t` live at `deficit_offset + t` (shed deficits) and
// `ct_offset + t` (filtered thrust coefficients) for the given source
// turbine. head_age equals the column gap to the source: values are relayed
// one hop per sample and then age in place until the pair delay tail_age.
struct SourceLine {
    int source = -1;
    int head_age = 0;
    int tail_age = 0;
    int deficit_offset = 0;
    int ct_offset = 0;
    int length() const { return tail_age - head_age + 1; }
};

struct RealizeOptions {
    int max_states_per_subsystem = 200000;
};

// Per-turbine linear state-space block. State layout: index 0 is the
// filtered thrust coefficient, followed by the source lines in ascending
// source column order. Only the state of the immediately upwind subsystem
// enters through step(); wake effects cascade through the relayed lines.
// Models are immutable once built and safe to share across threads.
class SubsystemModel {
public:
    int turbine = -1;
    int nx = 0;
    double filter_decay = 0.0;  // e^{-h/tau}
    std::vector<SourceLine> lines;  // lines[s] has source column s

    Eigen::RowVectorXd output_row;   // power = output_row * x + output_bias
    double output_bias = 0.0;
    Eigen::RowVectorXd deficit_row;  // shed deficit = deficit_row * x + deficit_bias
    double deficit_bias = 0.0;
    Eigen::RowVectorXd wind_row;     // local wind = wind_row * x + wind_bias
    double wind_bias = 0.0;

    Eigen::VectorXd point_state;  // state that holds the linearization point

    double output(const Eigen::VectorXd& x) const { return output_row.dot(x) + output_bias; }

    // One sample of x+ = A x + A_up x_up + B u (+ bias). upstream is null
    // for the most upwind subsystem of a row. with_bias=false advances pure
    // increments, which is what the velocity form needs.
    void step(Eigen::VectorXd& next, const Eigen::VectorXd& own, const Eigen::VectorXd* upstream,
              const SubsystemModel* upstream_model, double input, bool with_bias) const;

    // Dense realizations of the same dynamics, for small farms and tests.
    Eigen::MatrixXd dense_transition() const;                                  // A_ii
    Eigen::MatrixXd dense_coupling(const SubsystemModel& upstream_model) const;  // A_{i,i-1}
    Eigen::VectorXd dense_input() const;                                       // B_i
    Eigen::VectorXd dense_bias(const SubsystemModel* upstream_model) const;    // c_{x,i}
};

// Realizes the tuned linear farm model as chained per-turbine blocks.
std::vector<SubsystemModel> realize_state_space(const FarmLayout& layout, const DelayTable& delays,
                                                const LinearizationPoint& point,
                                                const ControlModel& model,
                                                const RealizeOptions& options = {});

// State of one subsystem in velocity form: the tracked power output plus the
// most recent state increment.
struct VelocityState {
    double power = 0.0;
    Eigen::VectorXd dx;
};

// Velocity-form wrapper [P; dx] of a subsystem: differences of the state
// equation plus the output appended as an integrated state. Constant biases
// cancel, which is what gives the controller integral action.
class VelocityFormModel {
public:
    explicit VelocityFormModel(SubsystemModel base) : base_(std::move(base)) {}

    const SubsystemModel& base() const { return base_; }
    int turbine() const { return base_.turbine; }
    int state_dim() const { return base_.nx + 1; }

    void step(VelocityState& next, const VelocityState& own, const VelocityState* upstream,
              const VelocityFormModel* upstream_model, double input_increment) const;

    // Dense blocks [[I, C A],[0, A]], [[0, C A_up],[0, A_up]], [C B; B], [I 0].
    Eigen::MatrixXd dense_transition() const;
    Eigen::MatrixXd dense_coupling(const VelocityFormModel& upstream_model) const;
    Eigen::VectorXd dense_input() const;
    Eigen::RowVectorXd dense_output() const;

private:
    SubsystemModel base_;
};

VelocityFormModel to_velocity_form(const SubsystemModel& subsystem);

}  // namespace windfarm

#endif
