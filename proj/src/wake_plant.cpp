#include "windfarm/wake_plant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "windfarm/errors.hpp"

namespace windfarm {

void PlantParams::validate() const {
    if (!(wake_constant > 0.0 && wake_constant < 1.0))
        throw ValidationError("plant.wake_constant must be in (0, 1)");
    if (!(filter_time_constant > 0.0))
        throw ValidationError("plant.filter_time_constant must be > 0");
    if (!(induction_scale > 0.0))
        throw ValidationError("plant.induction_scale must be > 0");
    if (!(ct_min >= 0.0 && ct_min < ct_max && ct_max <= 1.0))
        throw ValidationError("plant ct bounds must satisfy 0 <= ct_min < ct_max <= 1");
}

double induction_factor(double ct, double scale) {
    const double clipped = std::clamp(ct, 0.0, 1.0);
    return scale * 0.5 * (1.0 - std::sqrt(1.0 - clipped));
}

double wake_area(double rotor_area, double wake_constant, double delayed_ct_sum) {
    if (!(wake_constant > 0.0 && wake_constant < 1.0))
        throw ValidationError("wake_area: wake_constant must be in (0, 1)");
    const double expansion = wake_constant / (1.0 - wake_constant);
    return rotor_area * (1.0 + 0.5 * expansion * delayed_ct_sum);
}

double wake_deficit(double wind, double ct, double area,
                    double free_stream, double wake_constant, double rotor_area) {
    const double expansion = wake_constant / (1.0 - wake_constant);
    return 0.5 * (rotor_area / area) * ct * (wind - expansion * (free_stream - wind));
}

double turbine_power(double wind, double ct, double induction,
                     double air_density, double rotor_area) {
    return 0.5 * air_density * wind * wind * wind * rotor_area * ct * (1.0 - induction);
}

double ct_filter_step(double filtered_ct, double commanded_ct, double tau, double sample_time) {
    const double decay = std::exp(-sample_time / tau);
    return decay * filtered_ct + (1.0 - decay) * commanded_ct;
}

SteadyState steady_state(const FarmLayout& layout, const PlantParams& params,
                         const std::vector<double>& ct) {
    params.validate();
    const int n = layout.size();
    if (static_cast<int>(ct.size()) != n)
        throw ValidationError("steady_state: ct vector length must equal the turbine count");
    SteadyState ss;
    ss.wind.resize(n);
    ss.deficit.resize(n);
    ss.area_next.resize(n);
    ss.power.resize(n);
    ss.filtered_ct = ct;  // filter fixed point
    const double area = layout.rotor_area();
    const double vinf = layout.free_stream();
    for (int r = 0; r < layout.rows(); ++r) {
        double ct_sum = 0.0;      // sum of filtered cts of columns 0..c
        double deficit_sum = 0.0; // deficits accumulated in front of column c
        for (int c = 0; c < layout.cols(); ++c) {
            const int i = layout.index(r, c);
            const double v = std::clamp(vinf - deficit_sum, 0.0, vinf);
            ss.wind[i] = v;
            ss.power[i] = turbine_power(v, ct[i], induction_factor(ct[i], params.induction_scale),
                                        layout.air_density(), area);
            ct_sum += ct[i];
            ss.area_next[i] = wake_area(area, params.wake_constant, ct_sum);
            ss.deficit[i] = wake_deficit(v, ct[i], ss.area_next[i], vinf, params.wake_constant, area);
            deficit_sum += ss.deficit[i];
            ss.total_power += ss.power[i];
        }
    }
    return ss;
}

WakePlant::WakePlant(const FarmLayout& layout, const PlantParams& params)
    : layout_(layout), params_(params), delays_(DelayTable::compute(layout)) {
    params_.validate();
    depth_ = std::max(1, delays_.max_row_delay());
    const int n = layout_.size();
    deficit_history_.assign(n, std::vector<double>(depth_, 0.0));
    ct_history_.assign(n, std::vector<double>(depth_, 0.0));
    filtered_ct_.assign(n, 0.0);
    applied_ct_.assign(n, 0.0);
}

void WakePlant::warm_start(const std::vector<double>& ct_operating) {
    const SteadyState ss = steady_state(layout_, params_, ct_operating);
    const int n = layout_.size();
    for (int i = 0; i < n; ++i) {
        std::fill(deficit_history_[i].begin(), deficit_history_[i].end(), ss.deficit[i]);
        std::fill(ct_history_[i].begin(), ct_history_[i].end(), ss.filtered_ct[i]);
        filtered_ct_[i] = ss.filtered_ct[i];
        applied_ct_[i] = std::clamp(ct_operating[i], params_.ct_min, params_.ct_max);
    }
    head_ = 0;
    started_ = true;
    sample_ = 0;
}

void WakePlant::require_started() const {
    if (!started_)
        throw ValidationError("WakePlant: state is uninitialized; call warm_start first");
}

double WakePlant::deficit_at_age(int turbine, int age, const Sweep& current) const {
    if (age == 0) return current.deficit[turbine];
    const int slot = (head_ + age - 1) % depth_;
    return deficit_history_[turbine][static_cast<std::size_t>(slot)];
}

double WakePlant::filtered_ct_at_age(int turbine, int age) const {
    if (age == 0) return filtered_ct_[turbine];
    const int slot = (head_ + age - 1) % depth_;
    return ct_history_[turbine][static_cast<std::size_t>(slot)];
}

// Column-order sweep of one sample. Winds use the delayed deficits of every
// upwind turbine, areas the delayed filtered cts, so columns must be visited
// upwind to downwind (a zero-delay tap then reads this sweep's value).
WakePlant::Sweep WakePlant::sweep() const {
    const int n = layout_.size();
    Sweep s;
    s.wind.resize(n);
    s.power.resize(n);
    s.deficit.resize(n);
    const double area_r = layout_.rotor_area();
    const double vinf = layout_.free_stream();
    for (int r = 0; r < layout_.rows(); ++r) {
        for (int c = 0; c < layout_.cols(); ++c) {
            const int i = layout_.index(r, c);
            double deficit_sum = 0.0;
            for (int cj = 0; cj < c; ++cj) {
                const int j = layout_.index(r, cj);
                deficit_sum += deficit_at_age(j, delays_.delay(j, i), s);
            }
            const double v = std::clamp(vinf - deficit_sum, 0.0, vinf);
            s.wind[i] = v;
            const double ct = filtered_ct_[i];
            s.power[i] = turbine_power(v, ct, induction_factor(ct, params_.induction_scale),
                                       layout_.air_density(), area_r);
            double ct_sum = ct;  // own current value, delay 0
            for (int cl = 0; cl < c; ++cl) {
                const int l = layout_.index(r, cl);
                ct_sum += filtered_ct_at_age(l, delays_.delay(l, i));
            }
            const double area = wake_area(area_r, params_.wake_constant, ct_sum);
            s.deficit[i] = wake_deficit(v, ct, area, vinf, params_.wake_constant, area_r);
        }
    }
    return s;
}

WakePlant::Outputs WakePlant::measure() const {
    require_started();
    Sweep s = sweep();
    return Outputs{std::move(s.power), std::move(s.wind)};
}

WakePlant::Outputs WakePlant::step(const std::vector<double>& ct_command) {
    require_started();
    if (static_cast<int>(ct_command.size()) != layout_.size())
        throw ValidationError("WakePlant::step: command length must equal the turbine count");
    Sweep s = sweep();
    // Rotate the rings by one sample: the new age-1 slot receives the values
    // of the sample being completed.
    head_ = (head_ - 1 + depth_) % depth_;
    const int n = layout_.size();
    for (int i = 0; i < n; ++i) {
        deficit_history_[i][static_cast<std::size_t>(head_)] = s.deficit[i];
        ct_history_[i][static_cast<std::size_t>(head_)] = filtered_ct_[i];
        double u = ct_command[static_cast<std::size_t>(i)];
        if (u < params_.ct_min || u > params_.ct_max) {
            ++clamp_warnings_;
            u = std::clamp(u, params_.ct_min, params_.ct_max);
        }
        filtered_ct_[i] = ct_filter_step(filtered_ct_[i], u, params_.filter_time_constant,
                                         layout_.sample_time());
        applied_ct_[i] = u;
    }
    ++sample_;
    return Outputs{std::move(s.power), std::move(s.wind)};
}

double greedy_power(const FarmLayout& layout, const PlantParams& params) {
    std::vector<double> betz(static_cast<std::size_t>(layout.size()), params.ct_max);
    const SteadyState ss = steady_state(layout, params, betz);

    // Independent route: run the plant from a deliberately different state
    // until the per-sample total power change is negligible.
    WakePlant plant(layout, params);
    std::vector<double> start(static_cast<std::size_t>(layout.size()),
                              0.5 * (params.ct_min + params.ct_max));
    plant.warm_start(start);
    DelayTable delays = DelayTable::compute(layout);
    // 10x the slowest wake path plus enough samples for the actuation filter
    // to settle to machine precision.
    const long filter_settle =
        static_cast<long>(std::ceil(60.0 * params.filter_time_constant / layout.sample_time()));
    const long limit = 10L * delays.max_row_delay() + filter_settle + 10;
    double previous = -1.0;
    double settled = 0.0;
    bool converged = false;
    for (long k = 0; k < limit; ++k) {
        const WakePlant::Outputs out = plant.step(betz);
        double total = 0.0;
        for (double p : out.power) total += p;
        if (previous >= 0.0 && std::abs(total - previous) < 1e-9 * std::max(total, 1.0)) {
            settled = total;
            converged = true;
            break;
        }
        previous = total;
    }
    if (!converged)
        throw SolverError("greedy_power: plant did not settle within " + std::to_string(limit) +
                          " samples");
    if (std::abs(settled - ss.total_power) > 1e-6 * std::max(ss.total_power, 1.0))
        throw SolverError("greedy_power: sweep and simulation disagree (" +
                          std::to_string(ss.total_power) + " vs " + std::to_string(settled) + " W)");
    return ss.total_power;
}

}  // namespace windfarm
