#pragma once

// Cartpole balancing environment: classic-control constants, explicit Euler
// integration, bang-bang force. Observation scaling and termination bounds
// all live in the parameter block.

#include <cmath>
#include <numbers>

#include "devann/brain.hpp"
#include "devann/rng.hpp"

namespace devann {

struct CartpoleParams {
    double gravity = 9.8;
    double cart_mass = 1.0;
    double pole_mass = 0.1;
    double half_length = 0.5;
    double force_mag = 10.0;
    double tau = 0.02;
    double x_limit = 2.4;
    double theta_limit = 12.0 * std::numbers::pi / 180.0;  // ~0.2094 rad
    double velocity_scale = 4.0;    // observation divisor for both velocities
    double init_range = 0.05;       // initial state uniform in +-init_range
    int max_steps = 1000;
};

struct CartpoleState {
    double x = 0.0;
    double x_dot = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
    bool operator==(const CartpoleState&) const = default;
};

enum class CartAction { left, right };

inline CartpoleState cartpole_step(const CartpoleState& s, CartAction action,
                                   const CartpoleParams& p) {
    const double force = action == CartAction::right ? p.force_mag : -p.force_mag;
    const double total_mass = p.cart_mass + p.pole_mass;
    const double cos_t = std::cos(s.theta);
    const double sin_t = std::sin(s.theta);
    const double temp =
        (force + p.pole_mass * p.half_length * s.theta_dot * s.theta_dot * sin_t) /
        total_mass;
    const double theta_acc =
        (p.gravity * sin_t - cos_t * temp) /
        (p.half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
    const double x_acc = temp - p.pole_mass * p.half_length * theta_acc * cos_t / total_mass;
    CartpoleState next;
    next.x = s.x + p.tau * s.x_dot;
    next.x_dot = s.x_dot + p.tau * x_acc;
    next.theta = s.theta + p.tau * s.theta_dot;
    next.theta_dot = s.theta_dot + p.tau * theta_acc;
    return next;
}

inline bool cartpole_terminal(const CartpoleState& s, const CartpoleParams& p) {
    return std::fabs(s.x) > p.x_limit || std::fabs(s.theta) > p.theta_limit;
}

inline CartpoleState random_cartpole_state(const CartpoleParams& p, Rng& rng) {
    CartpoleState s;
    s.x = uniform_range(rng, -p.init_range, p.init_range);
    s.x_dot = uniform_range(rng, -p.init_range, p.init_range);
    s.theta = uniform_range(rng, -p.init_range, p.init_range);
    s.theta_dot = uniform_range(rng, -p.init_range, p.init_range);
    return s;
}

// Runs one episode, returning the number of completed steps before the state
// leaves the allowed region, capped at max_steps. The network's single task
// output picks the force direction: right when the output is >= 0.
inline int run_cartpole_episode(const WiredNetwork& net, int task_id,
                                const CartpoleParams& p, Rng& rng) {
    CartpoleState state = random_cartpole_state(p, rng);
    std::array<double, 4> obs;
    std::array<double, 1> out;
    std::vector<double> values;
    int steps = 0;
    while (steps < p.max_steps) {
        obs = {clamp_unit(state.x / p.x_limit), clamp_unit(state.x_dot / p.velocity_scale),
               clamp_unit(state.theta / p.theta_limit),
               clamp_unit(state.theta_dot / p.velocity_scale)};
        evaluate_into(net, task_id, obs, out, values);
        state = cartpole_step(state, out[0] >= 0.0 ? CartAction::right : CartAction::left, p);
        ++steps;
        if (cartpole_terminal(state, p)) break;
    }
    return steps;
}

}  // namespace devann
