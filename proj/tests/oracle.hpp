#pragma once

// Closed-form evaluators written directly from the formulas, with no matrices
// and no library code. Every constructed network is compared against these.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

inline double relu(double x) { return x > 0.0 ? x : 0.0; }
inline double prelu(double alpha, double x) { return x < 0.0 ? alpha * x : x; }
inline double sigma(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double grid_point(std::size_t i, std::size_t n) { return static_cast<double>(i) / static_cast<double>(n - 1); }

/// Tent of height 1 on [-h, h].
inline double hat(double t, double h) { return std::max(0.0, 1.0 - std::abs(t) / h); }

/// (s(t+h) - 2 s(t) + s(t-h)) / ((1-alpha) h) with s the parametric ReLU.
inline double prelu_hat(double t, double h, double alpha) {
  return (prelu(alpha, t + h) - 2.0 * prelu(alpha, t) + prelu(alpha, t - h)) / ((1.0 - alpha) * h);
}

/// (s(x) - s(x-c) - alpha c) / (1-alpha): 0 below 0, x on [0,c], c above.
inline double prelu_ramp(double x, double c, double alpha) {
  return (prelu(alpha, x) - prelu(alpha, x - c) - alpha * c) / (1.0 - alpha);
}

inline double spike(double t, double k) {
  return (sigma(k * t + 1.0) - sigma(k * t - 1.0)) / (sigma(1.0) - sigma(-1.0));
}

// Sum of disjoint hats (h = spacing/2) over the centers selected by `side`:
// +1 right half (x >= 0.5), -1 left half, 0 all.
template <class Hat>
double comb(double x, std::size_t n, int side, Hat hat_fn) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = grid_point(i, n);
    if (side > 0 && c < 0.5) continue;
    if (side < 0 && c >= 0.5) continue;
    s += hat_fn(x - c);
  }
  return s;
}

struct Gate {
  // a(s)/scale for a truncated signal s; ReLU or the parametric ramp.
  double alpha = 0.0;
  double clip = 0.0;  // 0: plain ReLU
  double operator()(double s) const { return clip > 0.0 ? prelu_ramp(s, clip, alpha) : relu(s); }
};

inline double classifier_1d(double x, std::size_t n, double b1, double b2, bool cross_entropy = false,
                            double alpha = 0.0, double clip = 0.0) {
  const double h = 0.5 / static_cast<double>(n - 1);
  auto phi = [&](double t) { return clip > 0.0 ? prelu_hat(t, h, alpha) : hat(t, h); };
  const Gate a{alpha, clip};
  const double i1 = comb(x, n, +1, phi) - b1;
  const double i2 = comb(x, n, -1, phi) - b2;
  if (cross_entropy) return 0.5 * a(i1) / (1.0 - b1) - 0.5 * a(i2) / (1.0 - b2) + 0.5;
  return a(i1) / (1.0 - b1) - a(i2) / (1.0 - b2);
}

inline double classifier_nd(const std::vector<double>& x, std::size_t n, double b, double alpha = 0.0,
                            double clip = 0.0) {
  const double h = 0.5 / static_cast<double>(n - 1);
  auto phi = [&](double t) { return clip > 0.0 ? prelu_hat(t, h, alpha) : hat(t, h); };
  const Gate a{alpha, clip};
  const double d = static_cast<double>(x.size());
  double rest = 0.0;
  for (std::size_t j = 1; j < x.size(); ++j) rest += comb(x[j], n, 0, phi);
  const double i1 = comb(x[0], n, +1, phi) + rest - b;
  const double i2 = comb(x[0], n, -1, phi) + rest - b;
  return a(i1) / (d - b) - a(i2) / (d - b);
}

/// sum_i y_i a(sum_j phi(x_j - c_{i_j}) - b) / (d - b), h = spacing; ys row-major.
inline double approximator_nd(const std::vector<double>& x, std::size_t n, const std::vector<double>& ys, double b,
                              double alpha = 0.0, double clip = 0.0) {
  const double h = 1.0 / static_cast<double>(n - 1);
  auto phi = [&](double t) { return clip > 0.0 ? prelu_hat(t, h, alpha) : hat(t, h); };
  const Gate a{alpha, clip};
  const std::size_t d = x.size();
  double f = 0.0;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t cell = 0; cell < ys.size(); ++cell) {
    std::size_t rest = cell;
    for (std::size_t j = d; j-- > 0;) {
      idx[j] = rest % n;
      rest /= n;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += phi(x[j] - grid_point(idx[j], n));
    f += ys[cell] * a(s - b) / (static_cast<double>(d) - b);
  }
  return f;
}

inline double approximator_1d(double x, const std::vector<double>& ys, double b, double alpha = 0.0,
                              double clip = 0.0) {
  return approximator_nd({x}, ys.size(), ys, b, alpha, clip);
}

/// Image classifier: dark-sum neuron weighted -1/(P-b), light-sum +1/(P-b).
inline double image_classifier(const std::vector<double>& x, int m, double b) {
  const double h = static_cast<double>(m) / 510.0;
  const double p = static_cast<double>(x.size());
  double dark = 0.0;
  double light = 0.0;
  for (double xi : x) {
    for (int raw = 0; raw <= 255; raw += m) {
      const double v = hat(xi - raw / 255.0, h);
      (raw < 128 ? dark : light) += v;
    }
  }
  return -relu(dark - b) / (p - b) + relu(light - b) / (p - b);
}

/// sum_i y_i sigma(L (Phi_i(x) - b) / (d - b)), Phi_i = sum_j spike(x_j - c_{i_j}).
inline double sigmoid_approximator(const std::vector<double>& x, std::size_t n, const std::vector<double>& ys,
                                   double k, double l, double b) {
  const std::size_t d = x.size();
  double f = 0.0;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t cell = 0; cell < ys.size(); ++cell) {
    std::size_t rest = cell;
    for (std::size_t j = d; j-- > 0;) {
      idx[j] = rest % n;
      rest /= n;
    }
    double phi = 0.0;
    for (std::size_t j = 0; j < d; ++j) phi += spike(x[j] - grid_point(idx[j], n), k);
    f += ys[cell] * sigma(l * (phi - b) / (static_cast<double>(d) - b));
  }
  return f;
}

/// p_1 = eps f, p_n = 4 sigma(p_{n-1}) - 2, output 4 sigma(p_M)/eps - 2/eps.
inline double sigmoid_extension(double f, double eps, std::size_t layers) {
  double p = eps * f;
  for (std::size_t n = 2; n <= layers; ++n) p = 4.0 * sigma(p) - 2.0;
  return 4.0 * sigma(p) / eps - 2.0 / eps;
}

/// General anchor c: p_1 = eps f + c, p_n = (sigma(p) - sigma(c))/sigma'(c) + c,
/// output (sigma(p_M) - sigma(c)) / (sigma'(c) eps).
inline double sigmoid_extension(double f, double eps, std::size_t layers, double c) {
  const double ac = sigma(c);
  const double dac = ac * (1.0 - ac);
  double p = eps * f + c;
  for (std::size_t n = 2; n <= layers; ++n) p = (sigma(p) - ac) / dac + c;
  return (sigma(p) - ac) / (dac * eps);
}

inline double sin_pi(double x) { return std::sin(std::numbers::pi * x); }

inline std::vector<double> sin_samples(std::size_t n) {
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = sin_pi(grid_point(i, n));
  return ys;
}

}  // namespace oracle
