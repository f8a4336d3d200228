#include "windfarm/linear_model.hpp"

#include <cmath>
#include <string>

#include "windfarm/errors.hpp"

namespace windfarm {

LinearizationPoint LinearizationPoint::from_steady_state(const FarmLayout& layout,
                                                         const ControlModel& model,
                                                         const std::vector<double>& ct0,
                                                         double ct_min, double ct_max) {
    for (std::size_t i = 0; i < ct0.size(); ++i) {
        if (!(ct0[i] > ct_min && ct0[i] < ct_max))
            throw ValidationError("linearization ct0[" + std::to_string(i) +
                                  "] must lie strictly inside [ct_min, ct_max]");
    }
    PlantParams params;
    params.wake_constant = model.wake_constant;
    params.filter_time_constant = model.filter_time_constant;
    params.ct_min = ct_min;
    params.ct_max = ct_max;
    const SteadyState ss = steady_state(layout, params, ct0);
    LinearizationPoint point;
    point.ct = ct0;
    point.wind = ss.wind;
    point.deficit = ss.deficit;
    point.area_next = ss.area_next;
    point.power = ss.power;
    point.induction.resize(ct0.size());
    for (std::size_t i = 0; i < ct0.size(); ++i)
        point.induction[i] = induction_factor(ct0[i]);
    return point;
}

DeficitPartials deficit_partials(const LinearizationPoint& point, double wake_constant,
                                 double rotor_area, double free_stream, int turbine) {
    const double area0 = point.area_next[static_cast<std::size_t>(turbine)];
    if (area0 == 0.0)
        throw ValidationError("deficit_partials: wake area at the linearization point is zero");
    const double expansion = wake_constant / (1.0 - wake_constant);
    const double v0 = point.wind[static_cast<std::size_t>(turbine)];
    const double ct0 = point.ct[static_cast<std::size_t>(turbine)];
    const double bracket = v0 - expansion * (free_stream - v0);
    DeficitPartials d;
    d.wrt_wind = 0.5 * (rotor_area / area0) * ct0 * (1.0 + expansion);
    d.wrt_ct = 0.5 * (rotor_area / area0) * bracket;
    d.wrt_area = -0.5 * (rotor_area / (area0 * area0)) * ct0 * bracket;
    return d;
}

PowerPartials power_partials(const LinearizationPoint& point, double air_density,
                             double rotor_area, int turbine) {
    const double v0 = point.wind[static_cast<std::size_t>(turbine)];
    const double ct0 = point.ct[static_cast<std::size_t>(turbine)];
    const double a0 = point.induction[static_cast<std::size_t>(turbine)];
    PowerPartials p;
    p.wrt_wind = 1.5 * air_density * v0 * v0 * rotor_area * ct0 * (1.0 - a0);
    p.wrt_ct = 0.5 * air_density * v0 * v0 * v0 * rotor_area * (1.0 - a0);
    return p;
}

BiasTerms assemble_bias_terms(const FarmLayout& layout, const LinearizationPoint& point,
                              const TuningConstants& tuning,
                              const std::vector<DeficitPartials>& dp,
                              const std::vector<PowerPartials>& pp) {
    const int n = layout.size();
    const double rotor_area = layout.rotor_area();
    BiasTerms bias;
    bias.deficit.resize(n);
    bias.power.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto is = static_cast<std::size_t>(i);
        bias.deficit[is] = point.deficit[is] - tuning.c_VV * dp[is].wrt_wind * point.wind[is] -
                           tuning.c_VCT * dp[is].wrt_ct * point.ct[is] +
                           tuning.c_VA * (dp[is].wrt_area * rotor_area -
                                          dp[is].wrt_area * point.area_next[is]);
        bias.power[is] = point.power[is] - tuning.c_PV * pp[is].wrt_wind * point.wind[is] -
                         tuning.c_PCT * pp[is].wrt_ct * point.ct[is];
    }
    return bias;
}

void SubsystemModel::step(Eigen::VectorXd& next, const Eigen::VectorXd& own,
                          const Eigen::VectorXd* upstream, const SubsystemModel* upstream_model,
                          double input, bool with_bias) const {
    next.resize(nx);
    next[0] = filter_decay * own[0] + (1.0 - filter_decay) * input;
    for (const SourceLine& line : lines) {
        const int len = line.length();
        // Age everything one sample (oldest first so the copy is in place).
        for (int t = len - 1; t >= 1; --t) {
            next[line.deficit_offset + t] = own[line.deficit_offset + t - 1];
            next[line.ct_offset + t] = own[line.ct_offset + t - 1];
        }
        // Inject the freshest value from the immediate upwind neighbour.
        if (line.source == upstream_model->turbine) {
            next[line.deficit_offset] = upstream_model->deficit_row.dot(*upstream) +
                                        (with_bias ? upstream_model->deficit_bias : 0.0);
            next[line.ct_offset] = (*upstream)[0];
        } else {
            const SourceLine& relay =
                upstream_model->lines[static_cast<std::size_t>(line.source - upstream_model->lines[0].source)];
            next[line.deficit_offset] = (*upstream)[relay.deficit_offset];
            next[line.ct_offset] = (*upstream)[relay.ct_offset];
        }
    }
}

Eigen::MatrixXd SubsystemModel::dense_transition() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nx, nx);
    a(0, 0) = filter_decay;
    for (const SourceLine& line : lines) {
        for (int t = 1; t < line.length(); ++t) {
            a(line.deficit_offset + t, line.deficit_offset + t - 1) = 1.0;
            a(line.ct_offset + t, line.ct_offset + t - 1) = 1.0;
        }
    }
    return a;
}

Eigen::MatrixXd SubsystemModel::dense_coupling(const SubsystemModel& upstream_model) const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nx, upstream_model.nx);
    for (const SourceLine& line : lines) {
        if (line.source == upstream_model.turbine) {
            a.row(line.deficit_offset) = upstream_model.deficit_row;
            a(line.ct_offset, 0) = 1.0;
        } else {
            const SourceLine& relay =
                upstream_model.lines[static_cast<std::size_t>(line.source - upstream_model.lines[0].source)];
            a(line.deficit_offset, relay.deficit_offset) = 1.0;
            a(line.ct_offset, relay.ct_offset) = 1.0;
        }
    }
    return a;
}

Eigen::VectorXd SubsystemModel::dense_input() const {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(nx);
    b[0] = 1.0 - filter_decay;
    return b;
}

Eigen::VectorXd SubsystemModel::dense_bias(const SubsystemModel* upstream_model) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nx);
    if (upstream_model != nullptr) {
        for (const SourceLine& line : lines) {
            if (line.source == upstream_model->turbine)
                c[line.deficit_offset] = upstream_model->deficit_bias;
        }
    }
    return c;
}

std::vector<SubsystemModel> realize_state_space(const FarmLayout& layout, const DelayTable& delays,
                                                const LinearizationPoint& point,
                                                const ControlModel& model,
                                                const RealizeOptions& options) {
    const int n = layout.size();
    const double rotor_area = layout.rotor_area();
    const double free_stream = layout.free_stream();
    const double expansion = model.wake_constant / (1.0 - model.wake_constant);
    const TuningConstants& tuning = model.tuning;

    std::vector<DeficitPartials> dp(static_cast<std::size_t>(n));
    std::vector<PowerPartials> pp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        dp[static_cast<std::size_t>(i)] =
            deficit_partials(point, model.wake_constant, rotor_area, free_stream, i);
        pp[static_cast<std::size_t>(i)] =
            power_partials(point, layout.air_density(), rotor_area, i);
    }
    const BiasTerms bias = assemble_bias_terms(layout, point, tuning, dp, pp);

    std::vector<SubsystemModel> subs;
    subs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int row = layout.row_of(i);
        const int col = layout.col_of(i);
        SubsystemModel sub;
        sub.turbine = i;
        sub.filter_decay = std::exp(-layout.sample_time() / model.filter_time_constant);

        int offset = 1;
        for (int sc = 0; sc < col; ++sc) {
            const int source = layout.index(row, sc);
            SourceLine line;
            line.source = source;
            line.head_age = col - sc;
            line.tail_age = delays.delay(source, i);
            if (line.tail_age < line.head_age)
                throw ValidationError(
                    "realize_state_space: wake delay between turbines " + std::to_string(source) +
                    " and " + std::to_string(i) +
                    " is shorter than the relay chain; increase spacing or sample rate");
            line.deficit_offset = offset;
            line.ct_offset = offset + line.length();
            offset += 2 * line.length();
            sub.lines.push_back(line);
        }
        sub.nx = offset;
        if (sub.nx > options.max_states_per_subsystem)
            throw ValidationError("realize_state_space: subsystem " + std::to_string(i) +
                                  " needs " + std::to_string(sub.nx) +
                                  " states, beyond the configured budget of " +
                                  std::to_string(options.max_states_per_subsystem));

        const auto is = static_cast<std::size_t>(i);
        const double g_pv = tuning.c_PV * pp[is].wrt_wind;
        const double g_pc = tuning.c_PCT * pp[is].wrt_ct;
        const double g_vv = tuning.c_VV * dp[is].wrt_wind;
        const double g_vc = tuning.c_VCT * dp[is].wrt_ct;
        // Gain on each delayed filtered ct inside the wake-area sum.
        const double g_va = tuning.c_VA * dp[is].wrt_area * 0.5 * rotor_area * expansion;

        sub.output_row = Eigen::RowVectorXd::Zero(sub.nx);
        sub.deficit_row = Eigen::RowVectorXd::Zero(sub.nx);
        sub.wind_row = Eigen::RowVectorXd::Zero(sub.nx);
        sub.output_row[0] = g_pc;
        sub.deficit_row[0] = g_vc + g_va;
        for (const SourceLine& line : sub.lines) {
            const int deficit_tail = line.deficit_offset + line.length() - 1;
            const int ct_tail = line.ct_offset + line.length() - 1;
            sub.output_row[deficit_tail] = -g_pv;
            sub.deficit_row[deficit_tail] = -g_vv;
            sub.deficit_row[ct_tail] = g_va;
            sub.wind_row[deficit_tail] = -1.0;
        }
        sub.output_bias = bias.power[is] + g_pv * free_stream;
        sub.deficit_bias = bias.deficit[is] + g_vv * free_stream;
        sub.wind_bias = free_stream;

        sub.point_state = Eigen::VectorXd::Zero(sub.nx);
        sub.point_state[0] = point.ct[is];
        for (const SourceLine& line : sub.lines) {
            const auto src = static_cast<std::size_t>(line.source);
            for (int t = 0; t < line.length(); ++t) {
                sub.point_state[line.deficit_offset + t] = point.deficit[src];
                sub.point_state[line.ct_offset + t] = point.ct[src];
            }
        }
        subs.push_back(std::move(sub));
    }
    return subs;
}

void VelocityFormModel::step(VelocityState& next, const VelocityState& own,
                             const VelocityState* upstream, const VelocityFormModel* upstream_model,
                             double input_increment) const {
    base_.step(next.dx, own.dx, upstream != nullptr ? &upstream->dx : nullptr,
               upstream_model != nullptr ? &upstream_model->base_ : nullptr, input_increment,
               /*with_bias=*/false);
    next.power = own.power + base_.output_row.dot(next.dx);
}

Eigen::MatrixXd VelocityFormModel::dense_transition() const {
    const int nx = base_.nx;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nx + 1, nx + 1);
    const Eigen::MatrixXd base_a = base_.dense_transition();
    a(0, 0) = 1.0;
    a.block(0, 1, 1, nx) = base_.output_row * base_a;
    a.block(1, 1, nx, nx) = base_a;
    return a;
}

Eigen::MatrixXd VelocityFormModel::dense_coupling(const VelocityFormModel& upstream_model) const {
    const int nx = base_.nx;
    const int nup = upstream_model.base_.nx;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nx + 1, nup + 1);
    const Eigen::MatrixXd base_c = base_.dense_coupling(upstream_model.base_);
    a.block(0, 1, 1, nup) = base_.output_row * base_c;
    a.block(1, 1, nx, nup) = base_c;
    return a;
}

Eigen::VectorXd VelocityFormModel::dense_input() const {
    const int nx = base_.nx;
    Eigen::VectorXd b(nx + 1);
    const Eigen::VectorXd base_b = base_.dense_input();
    b[0] = base_.output_row.dot(base_b);
    b.tail(nx) = base_b;
    return b;
}

Eigen::RowVectorXd VelocityFormModel::dense_output() const {
    Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(base_.nx + 1);
    c[0] = 1.0;
    return c;
}

VelocityFormModel to_velocity_form(const SubsystemModel& subsystem) {
    return VelocityFormModel(subsystem);
}

}  // namespace windfarm
