#include "swnoon/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swnoon {

namespace {

// Complex arithmetic is spelled out on split real/imag arrays; std::complex
// multiplication goes through the Annex G slow path otherwise.
struct SplitGenerator {
  double re[3][3];
  double im[3][3];

  explicit SplitGenerator(const Generator& g) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        re[i][j] = g[i][j].real();
        im[i][j] = g[i][j].imag();
      }
    }
  }

  void apply(const double* y, double* out) const {
    for (int i = 0; i < 3; ++i) {
      double r = 0.0, m = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double yr = y[2 * j], yi = y[2 * j + 1];
        r += re[i][j] * yr - im[i][j] * yi;
        m += re[i][j] * yi + im[i][j] * yr;
      }
      out[2 * i] = r;
      out[2 * i + 1] = m;
    }
  }

  double max_row_sum() const {
    double best = 0.0;
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += std::hypot(re[i][j], im[i][j]);
      best = std::max(best, s);
    }
    return best;
  }
};

// Dormand-Prince 5(4) tableau; the system is autonomous so the abscissae drop out.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Generator generator_from_hamiltonian(const Generator& h) {
  Generator g{};
  const std::complex<double> minus_i{0.0, -1.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g[i][j] = minus_i * h[i][j];
  }
  return g;
}

Amplitudes integrate_general(const Generator& generator, const Amplitudes& initial, double duration,
                             const IntegratorOptions& options, IntegrationStats* stats) {
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("integrator tolerance must be > 0");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("integration duration must be finite and >= 0");
  }
  for (const auto& row : generator) {
    for (const auto& g : row) {
      if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
        throw IntegrationError("non-finite generator entry");
      }
    }
  }

  const SplitGenerator G(generator);
  double y[6];
  for (int i = 0; i < 3; ++i) {
    y[2 * i] = initial.c[i].real();
    y[2 * i + 1] = initial.c[i].imag();
  }

  IntegrationStats local;
  const double scale = G.max_row_sum();
  if (duration == 0.0 || scale == 0.0) {
    if (stats) *stats = local;
    return initial;
  }

  const double tol = options.tolerance;
  const double h_min = 64.0 * std::numeric_limits<double>::epsilon() * duration;
  double h = std::min(duration, 0.05 / scale);
  double t = 0.0;

  double k1[6], k2[6], k3[6], k4[6], k5[6], k6[6], k7[6], tmp[6], y5[6];
  G.apply(y, k1);

  while (t < duration) {
    if (local.accepted + local.rejected >= options.max_steps) {
      throw IntegrationError("step budget of " + std::to_string(options.max_steps) +
                             " exhausted at t=" + std::to_string(t) + " of " + std::to_string(duration));
    }
    bool last = false;
    if (t + h >= duration) {
      h = duration - t;
      last = true;
    }

    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    G.apply(tmp, k2);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    G.apply(tmp, k3);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    G.apply(tmp, k4);
    for (int i = 0; i < 6; ++i) {
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    G.apply(tmp, k5);
    for (int i = 0; i < 6; ++i) {
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    G.apply(tmp, k6);
    for (int i = 0; i < 6; ++i) {
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    G.apply(y5, k7);

    double err2 = 0.0;  // squared error of the worst amplitude
    for (int c = 0; c < 3; ++c) {
      double d[2];
      for (int p = 0; p < 2; ++p) {
        const int i = 2 * c + p;
        d[p] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      }
      err2 = std::max(err2, d[0] * d[0] + d[1] * d[1]);
    }
    const double err = std::sqrt(err2);
    if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate at t=" + std::to_string(t));

    if (err <= tol) {
      t = last ? duration : t + h;
      std::copy(std::begin(y5), std::end(y5), std::begin(y));
      std::copy(std::begin(k7), std::end(k7), std::begin(k1));
      ++local.accepted;
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 5.0);
      h *= grow;
    } else {
      ++local.rejected;
      h *= std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
      if (h < h_min) {
        throw IntegrationError("step size underflow (h=" + std::to_string(h) + ") at t=" +
                               std::to_string(t));
      }
    }
  }

  if (stats) *stats = local;
  Amplitudes out;
  for (int i = 0; i < 3; ++i) out.c[i] = {y[2 * i], y[2 * i + 1]};
  return out;
}

}  // namespace swnoon
