#pragma once
// Branch-free sin/cos for phase accumulation loops. The hot quadrature paths
// evaluate millions of phases t*log(n+alpha); libm sincos dominates there, so
// this header provides a plain-C++ pair (Cody-Waite reduction + Taylor
// polynomials on [-pi, pi]) that compilers can vectorize across loop
// iterations. Polynomial truncation is below 4e-16 on the reduced range; the
// reduction contributes ~5e-10 absolute at phase magnitudes ~3e6 (mul/sub,
// no fma dependency), which is far below what the callers need.

#include <cmath>

namespace hzlab {

// x = 2*pi*k + r with r in [-pi, pi]; two-term 2*pi keeps the subtraction
// error at k*ulp level.
inline double reduce_two_pi(double x) {
  constexpr double kInvTwoPi = 0.15915494309189534561;
  constexpr double kTwoPiHi = 6.283185307179586232;
  constexpr double kTwoPiLo = 2.449293598294706414e-16;
  double k = std::nearbyint(x * kInvTwoPi);
  return (x - k * kTwoPiHi) - k * kTwoPiLo;
}

// sin and cos of r for |r| <= pi (+ reduction slack): Taylor through r^27
// and r^26.
inline void sincos_reduced(double r, double& s, double& c) {
  const double z = r * r;
  double ps = -9.1836898637955462e-29;  // -1/27!
  ps = ps * z + 6.4469502843844734e-26;   // 1/25!
  ps = ps * z + -3.8681701706306840e-23;  // -1/23!
  ps = ps * z + 1.9572941063391261e-20;   // 1/21!
  ps = ps * z + -8.2206352466243297e-18;  // -1/19!
  ps = ps * z + 2.8114572543455206e-15;   // 1/17!
  ps = ps * z + -7.6471637318198165e-13;  // -1/15!
  ps = ps * z + 1.6059043836821613e-10;   // 1/13!
  ps = ps * z + -2.5052108385441719e-08;  // -1/11!
  ps = ps * z + 2.7557319223985893e-06;   // 1/9!
  ps = ps * z + -1.9841269841269841e-04;  // -1/7!
  ps = ps * z + 8.3333333333333333e-03;   // 1/5!
  ps = ps * z + -1.6666666666666667e-01;  // -1/3!
  ps = ps * z + 1.0;
  s = ps * r;
  double pc = -6.4469502843844735e-28;  // -1/26!
  pc = pc * z + 1.6117375710961184e-24;   // 1/24!
  pc = pc * z + -8.8967913924505733e-22;  // -1/22!
  pc = pc * z + 4.1103176233121648e-19;   // 1/20!
  pc = pc * z + -1.5619206968586225e-16;  // -1/18!
  pc = pc * z + 4.7794773323873853e-14;   // 1/16!
  pc = pc * z + -1.1470745597729725e-11;  // -1/14!
  pc = pc * z + 2.0876756987868099e-09;   // 1/12!
  pc = pc * z + -2.7557319223985888e-07;  // -1/10!
  pc = pc * z + 2.4801587301587302e-05;   // 1/8!
  pc = pc * z + -1.3888888888888889e-03;  // -1/6!
  pc = pc * z + 4.1666666666666664e-02;   // 1/4!
  pc = pc * z + -5.0000000000000000e-01;  // -1/2!
  pc = pc * z + 1.0;
  c = pc;
}

inline void sincos_phase(double phase, double& s, double& c) {
  sincos_reduced(reduce_two_pi(phase), s, c);
}

}  // namespace hzlab
