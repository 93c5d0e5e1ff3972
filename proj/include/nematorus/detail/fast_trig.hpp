#pragma once

// Branch-free sin/cos pair that the compiler can vectorize inside the flow
// kernel. Accuracy is within one ulp of libm for |x| up to about 1e6, far
// beyond the angles that occur in a run.

namespace nematorus::detail {

inline void fast_sincos(double x, double& s, double& c) {
  constexpr double kTwoOverPi = 0.63661977236758134308;
  constexpr double kRound = 6755399441055744.0;
  // pi/2 split into three parts for an exact reduction of the argument.
  constexpr double kP1 = 1.57079625129699707031;
  constexpr double kP2 = 7.54978941586159635336e-8;
  constexpr double kP3 = 5.39030285815811905290e-15;

  const double k = (x * kTwoOverPi + kRound) - kRound;
  const double r = ((x - k * kP1) - k * kP2) - k * kP3;
  const double z = r * r;

  const double ps =
      (((((1.58962301576546568060e-10 * z - 2.50507477628578072866e-8) * z +
          2.75573136213857245213e-6) * z - 1.98412698295895385996e-4) * z +
        8.33333333332211858878e-3) * z - 1.66666666666666307295e-1);
  const double sr = r + r * z * ps;
  const double pc =
      (((((-1.13585365213876817300e-11 * z + 2.08757008419747316778e-9) * z -
          2.75573141792967388112e-7) * z + 2.48015872888517045348e-5) * z -
        1.38888888888730564116e-3) * z + 4.16666666666665929218e-2);
  const double cr = 1.0 - 0.5 * z + z * z * pc;

  const int q = static_cast<int>(k) & 3;
  const double s0 = (q & 1) ? cr : sr;
  const double c0 = (q & 1) ? sr : cr;
  s = (q & 2) ? -s0 : s0;
  c = ((q + 1) & 2) ? -c0 : c0;
}

}  // namespace nematorus::detail
