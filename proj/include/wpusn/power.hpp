// Maps each PB's power budget to its usable transmit power.
//
// Ideal system: the full budget radiates. Practical system: amplifier
// efficiency and the consumption of RF chains and circuitry are charged; RAB
// additionally pays for the servo motor's PWM rotation pulses.
#pragma once

#include <cmath>
#include <string>

#include "wpusn/common.hpp"
#include "wpusn/schemes.hpp"

namespace wpusn {

struct PowerBudget {
  double budget_w = 10.0;
  double amp_efficiency = 0.38;  // eta
  double circuit_w = 0.1;        // P_c
  double rf_chain_w = 0.06;      // P_rf per chain

  void validate() const {
    if (!(budget_w > 0.0)) throw validation_error("power: budget must be > 0");
    if (!(amp_efficiency > 0.0 && amp_efficiency <= 1.0))
      throw validation_error("power: amp_efficiency must be in (0, 1]");
    if (!(circuit_w >= 0.0)) throw validation_error("power: circuit power must be >= 0");
    if (!(rf_chain_w >= 0.0)) throw validation_error("power: rf_chain power must be >= 0");
  }
};

// Servo motor PWM parameters (defaults: Micro SG90 on a 1 s block).
struct MotorParams {
  double pulse_min_s = 1e-3;     // T_0, shaft at -pi/2
  double pulse_max_s = 2e-3;     // T_Q, shaft at +pi/2
  double duty_cycle_s = 20e-3;   // T_f
  double supply_v = 5.0;
  double working_current_a = 0.25;
  double block_s = 1.0;          // normalized block T

  void validate() const {
    if (!(pulse_min_s > 0.0)) throw validation_error("motor: pulse_min must be > 0");
    if (!(pulse_max_s > pulse_min_s))
      throw validation_error("motor: pulse_max must exceed pulse_min");
    if (!(duty_cycle_s >= pulse_max_s))
      throw validation_error("motor: duty_cycle must be >= pulse_max");
    if (!(supply_v > 0.0)) throw validation_error("motor: supply voltage must be > 0");
    if (!(working_current_a > 0.0)) throw validation_error("motor: working current must be > 0");
    if (!(block_s >= duty_cycle_s)) throw validation_error("motor: block must be >= duty_cycle");
  }
};

inline double transmit_power_ideal(const PowerBudget& budget) {
  budget.validate();
  return budget.budget_w;
}

// Rotation pulse budget per block: a homing T_0 pulse plus Q stepped pulses
// T_q = T_0 + q*(T_Q - T_0)/Q, averaged over the duty cycle.
inline double motor_power(const MotorParams& motor, int q) {
  motor.validate();
  if (q < 2) throw validation_error("motor_power: RAB rotation needs q >= 2");
  double pulses = motor.pulse_min_s;
  for (int step = 1; step <= q; ++step)
    pulses += motor.pulse_min_s +
              static_cast<double>(step) * (motor.pulse_max_s - motor.pulse_min_s) / q;
  return pulses / motor.duty_cycle_s * motor.supply_v * motor.working_current_a;
}

// Number of rotation steps (hence antennas) a block can accommodate.
inline int rab_max_antennas(const MotorParams& motor) {
  motor.validate();
  return static_cast<int>(std::floor(motor.block_s / motor.duty_cycle_s));
}

// p = eta*(P_budget - Q^s*P_rf - P_c), s = 1 for AA-IS (and the fully-digital
// FULL_CSI baseline), 0 otherwise. RAB has its own budget op.
inline double transmit_power_practical(const PowerBudget& budget, SchemeKind scheme, int q) {
  budget.validate();
  if (q < 1) throw validation_error("transmit_power_practical: q must be >= 1");
  if (scheme == SchemeKind::RAB)
    throw validation_error("transmit_power_practical: RAB uses transmit_power_rab");
  const bool per_chain = scheme == SchemeKind::AA_IS || scheme == SchemeKind::FULL_CSI;
  const double rf = per_chain ? q * budget.rf_chain_w : budget.rf_chain_w;
  const double p = budget.amp_efficiency * (budget.budget_w - rf - budget.circuit_w);
  if (!(p > 0.0))
    throw insufficient_budget_error(
        "practical budget exhausted for " + std::string(to_string(scheme)) + " with Q = " +
            std::to_string(q) + " (deficit " + std::to_string(rf + budget.circuit_w - budget.budget_w) +
            " W)",
        rf + budget.circuit_w - budget.budget_w);
  return p;
}

// p_RAB = eta*(P_budget - P_rf - P_motor(Q)); strictly decreasing in Q.
inline double transmit_power_rab(const PowerBudget& budget, const MotorParams& motor, int q) {
  budget.validate();
  if (q < 2) throw validation_error("transmit_power_rab: RAB needs q >= 2");
  if (q > rab_max_antennas(motor))
    throw validation_error("transmit_power_rab: Q = " + std::to_string(q) +
                           " exceeds the motor limit of " +
                           std::to_string(rab_max_antennas(motor)) + " rotation steps per block");
  const double drain = budget.rf_chain_w + motor_power(motor, q);
  const double p = budget.amp_efficiency * (budget.budget_w - drain);
  if (!(p > 0.0))
    throw insufficient_budget_error(
        "practical budget exhausted for RAB with Q = " + std::to_string(q) + " (deficit " +
            std::to_string(drain - budget.budget_w) + " W)",
        drain - budget.budget_w);
  return p;
}

}  // namespace wpusn
