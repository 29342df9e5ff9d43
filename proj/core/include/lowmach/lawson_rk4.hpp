#pragma once

#include <utility>

namespace lowmach {

/// One step of the Lawson (integrating-factor) fourth-order Runge-Kutta
/// scheme for y' = L y + N(y, t), where exp(tau L) is applied exactly.
///
///   nonlinear(y, t)   -> State   tendency N
///   propagate(y, tau)            in place y <- exp(tau L) y, tau >= 0 only
///   observe(y, w)                called on the four stage states with the
///                                RK4 quadrature weights (1/6, 1/3, 1/3, 1/6);
///                                summing w * h * f(stage) integrates any
///                                functional f over the step to fourth order.
///
/// State must be copyable and support axpy(State&, double, const State&).
template <class State, class Nonlinear, class Propagate, class Observe>
void lawson_rk4_step(State& y, double t, double h, Nonlinear&& nonlinear,
                     Propagate&& propagate, Observe&& observe) {
  const State a = nonlinear(y, t);

  State y2 = y;
  axpy(y2, 0.5 * h, a);
  propagate(y2, 0.5 * h);
  const State b = nonlinear(y2, t + 0.5 * h);

  State ey_half = y;
  propagate(ey_half, 0.5 * h);
  State y3 = ey_half;
  axpy(y3, 0.5 * h, b);
  State c = nonlinear(y3, t + 0.5 * h);

  State ey = y;
  propagate(ey, h);
  State y4 = ey;
  {
    State ec = c;
    propagate(ec, 0.5 * h);
    axpy(y4, h, ec);
  }
  const State d = nonlinear(y4, t + h);

  observe(static_cast<const State&>(y), 1.0 / 6.0);
  observe(static_cast<const State&>(y2), 1.0 / 3.0);
  observe(static_cast<const State&>(y3), 1.0 / 3.0);
  observe(static_cast<const State&>(y4), 1.0 / 6.0);

  State ea = a;
  propagate(ea, h);
  State bc = b;
  axpy(bc, 1.0, c);
  propagate(bc, 0.5 * h);

  y = std::move(ey);
  axpy(y, h / 6.0, ea);
  axpy(y, h / 3.0, bc);
  axpy(y, h / 6.0, d);
}

template <class State, class Nonlinear, class Propagate>
void lawson_rk4_step(State& y, double t, double h, Nonlinear&& nonlinear,
                     Propagate&& propagate) {
  lawson_rk4_step(y, t, h, std::forward<Nonlinear>(nonlinear),
                  std::forward<Propagate>(propagate), [](const State&, double) {});
}

}  // namespace lowmach
