#include "core/bump.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace qc {

namespace {

constexpr double pi = std::numbers::pi;

// 16-point Gauss-Legendre nodes/weights on [-1,1]
struct Gauss16 {
  std::array<double, 16> x{}, w{};
  Gauss16() {
    for (int i = 0; i < 16; ++i) {
      double t = std::cos(pi * (i + 0.75) / 16.5);  // initial guess
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = t;
        for (int k = 2; k <= 16; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = 16 * (t * p1 - p0) / (t * t - 1);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      double p0 = 1, p1 = t;
      for (int k = 2; k <= 16; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = 16 * (t * p1 - p0) / (t * t - 1);
      x[i] = t;
      w[i] = 2.0 / ((1 - t * t) * dp * dp);
    }
  }
};

const Gauss16& gauss16() {
  static Gauss16 g;
  return g;
}

}  // namespace

double integrate_radial(const std::function<double(double)>& fn, double a, double b,
                        double osc) {
  if (b <= a) return 0;
  int panels = std::max(8, int(std::ceil(4.0 * std::abs(osc) * (b - a))) + 4);
  const auto& g = gauss16();
  double total = 0;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h, mid = lo + 0.5 * h;
    double acc = 0;
    for (int i = 0; i < 16; ++i) acc += g.w[i] * fn(mid + 0.5 * h * g.x[i]);
    total += acc * 0.5 * h;
  }
  return total;
}

BumpFunction::BumpFunction(double radius) : radius_(radius) {
  if (!(radius > 0)) fail(Err::input, "bump radius must be positive");
}

double BumpFunction::value(double t) const {
  double u = t / radius_;
  if (u >= 1.0 || u <= -1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double BumpFunction::mass(int dim) const {
  double surface;  // measure of the unit sphere S^{dim-1}
  switch (dim) {
    case 1: surface = 2; break;
    case 2: surface = 2 * pi; break;
    case 3: surface = 4 * pi; break;
    default: fail(Err::capacity, "bump mass supported for dim <= 3");
  }
  auto fn = [this, dim](double r) { return value(r) * std::pow(r, dim - 1); };
  return surface * integrate_radial(fn, 0, radius_, 0);
}

double BumpFunction::fourier(int dim, double rho) const {
  double r0 = radius_;
  rho = std::abs(rho);
  switch (dim) {
    case 1: {
      auto fn = [this, rho](double r) { return value(r) * std::cos(2 * pi * rho * r); };
      return 2.0 * integrate_radial(fn, 0, r0, rho);
    }
    case 2: {
      auto fn = [this, rho](double r) {
        return value(r) * std::cyl_bessel_j(0, 2 * pi * rho * r) * r;
      };
      return 2 * pi * integrate_radial(fn, 0, r0, rho);
    }
    case 3: {
      if (rho < 1e-12) return mass(3);
      auto fn = [this, rho](double r) { return value(r) * std::sin(2 * pi * rho * r) * r; };
      return (2.0 / rho) * integrate_radial(fn, 0, r0, rho);
    }
    default:
      fail(Err::capacity, "radial transform supported for dim <= 3");
  }
}

double smooth_step(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  double a = std::exp(-1.0 / u);
  double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double unit_ball_volume(int dim) {
  return std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

PlateauMollifier::PlateauMollifier(int dim, double eps) : dim_(dim), eps_(eps) {
  if (dim < 1) fail(Err::input, "mollifier dim must be >= 1");
  if (!(eps > 0 && eps < 1)) fail(Err::input, "mollifier eps must be in (0,1)");
  scale_ = 1.0;
  double omega = unit_ball_volume(dim);
  auto raw = [this, omega](double t) {
    if (t < 1 - eps_) return 1.0 / omega;
    if (t > 1 + eps_) return 0.0;
    return smooth_step((1 + eps_ - t) / (2 * eps_)) / omega;
  };
  double surface = dim * omega;  // |S^{d-1}| = d * omega_d
  auto fn = [&](double r) { return raw(r) * std::pow(r, dim_ - 1); };
  double total = surface * integrate_radial(fn, 0, 1 + eps_, 0);
  scale_ = 1.0 / total;
}

double PlateauMollifier::value(double t) const {
  double omega = unit_ball_volume(dim_);
  double raw;
  if (t < 1 - eps_)
    raw = 1.0 / omega;
  else if (t > 1 + eps_)
    raw = 0.0;
  else
    raw = smooth_step((1 + eps_ - t) / (2 * eps_)) / omega;
  return raw * scale_;
}

}  // namespace qc
