#pragma once

// Weighted-homogeneity primitives for the second-order differentiator:
// signed powers, weight systems, homogeneous q-norms, dilations and
// parametrizations of homogeneous unit spheres.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace homgain {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

// sign(x) * |x|^p. Requires p > 0, or p == 0 with x != 0.
double signed_power(double x, double p);

// Weights of the error dynamics for homogeneity degree d in (-1, 1):
//   state  r_z = (1 - d, 1)
//   input  r_u = (r_nu, r_delta) = (1 - d, 1 + d)
//   output r_y = 1,  time r_t = -d
struct WeightSystem {
  double d = 0.0;
  Vec2 state{1.0, 1.0};
  Vec2 input{1.0, 1.0};
  double output = 1.0;
  double time = 0.0;

  static WeightSystem for_degree(double d);

  double r_nu() const { return input[0]; }
  double r_delta() const { return input[1]; }
  // (r_1, r_2, r_nu): joint state/noise sphere.
  Vec3 state_noise() const { return {state[0], state[1], input[0]}; }
  // (r_1, r_2, r_delta): joint state/disturbance sphere.
  Vec3 state_disturbance() const { return {state[0], state[1], input[1]}; }
};

// (sum_i |x_i|^(q / r_i))^(1/q)
double hom_qnorm(std::span<const double> x, std::span<const double> r, double q = 2.0);

// Component-wise kappa^{r_i} x_i.
std::vector<double> dilate_point(std::span<const double> x, std::span<const double> r,
                                 double kappa);

struct SpherePoint2 {
  double z1 = 0.0;
  double z2 = 0.0;
};

// Third coordinate `w` is nu or delta depending on the sphere in use.
struct SpherePoint3 {
  double z1 = 0.0;
  double z2 = 0.0;
  double w = 0.0;
};

// Pullback of the Euclidean unit circle: z_i = signed_power(e_i, r_i) with
// e = (cos phi, sin phi). The result has unit homogeneous 2-norm.
SpherePoint2 sphere_param2(double phi, const Vec2& r);

// Euclidean spherical point e = (sin p1 cos p2, sin p1 sin p2, cos p1) mapped
// component-wise by signed powers. phi1 = 0 is the pole z = 0, w = 1.
SpherePoint3 sphere_param3(double phi1, double phi2, const Vec3& r);

// Uniformly sampled vector-valued signal, stored row-major.
class SampledSignal {
 public:
  SampledSignal() = default;
  SampledSignal(std::size_t dim, double sample_time, double t0 = 0.0);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
  bool empty() const { return values_.empty(); }
  double sample_time() const { return sample_time_; }
  double t0() const { return t0_; }
  double time(std::size_t k) const { return t0_ + static_cast<double>(k) * sample_time_; }

  std::span<const double> at(std::size_t k) const {
    return {values_.data() + k * dim_, dim_};
  }
  std::span<double> at(std::size_t k) { return {values_.data() + k * dim_, dim_}; }
  double operator()(std::size_t k, std::size_t i) const { return values_[k * dim_ + i]; }

  void reserve(std::size_t samples) { values_.reserve(samples * dim_); }
  void push_back(std::span<const double> sample);
  void push_back(std::initializer_list<double> sample);

  const std::vector<double>& raw() const { return values_; }

 private:
  std::size_t dim_ = 1;
  double sample_time_ = 1.0;
  double t0_ = 0.0;
  std::vector<double> values_;
};

// s~(kappa^{r_t} t) = Delta_kappa^r(s(t)). Keeps the number of samples and
// stretches the sample time (and t0) by kappa^{r_t}.
SampledSignal dilate_signal(const SampledSignal& s, std::span<const double> r, double r_t,
                            double kappa);

}  // namespace homgain
