#include "homgain/hom_core.hpp"

#include <cmath>
#include <string>

#include "homgain/errors.hpp"

namespace homgain {

double signed_power(double x, double p) {
  if (x == 0.0) {
    if (p <= 0.0) throw DomainError("signed_power: zero base requires p > 0");
    return 0.0;
  }
  return std::copysign(std::pow(std::abs(x), p), x);
}

WeightSystem WeightSystem::for_degree(double d) {
  if (!(d > -1.0 && d < 1.0)) {
    throw DomainError("homogeneity degree must lie in (-1, 1), got " + std::to_string(d));
  }
  WeightSystem w;
  w.d = d;
  w.state = {1.0 - d, 1.0};
  w.input = {1.0 - d, 1.0 + d};
  w.output = 1.0;
  w.time = -d;
  return w;
}

namespace {

void check_weights(std::size_t n, std::span<const double> r) {
  if (n != r.size()) throw DomainError("weight vector length does not match the point");
  for (double ri : r) {
    if (!(ri > 0.0)) throw DomainError("weights must be strictly positive");
  }
}

}  // namespace

double hom_qnorm(std::span<const double> x, std::span<const double> r, double q) {
  check_weights(x.size(), r);
  if (!(q >= 1.0)) throw DomainError("hom_qnorm: q must be >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) sum += std::pow(std::abs(x[i]), q / r[i]);
  }
  return std::pow(sum, 1.0 / q);
}

std::vector<double> dilate_point(std::span<const double> x, std::span<const double> r,
                                 double kappa) {
  check_weights(x.size(), r);
  if (!(kappa > 0.0)) throw DomainError("dilation factor must be positive");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::pow(kappa, r[i]) * x[i];
  return out;
}

SpherePoint2 sphere_param2(double phi, const Vec2& r) {
  return {signed_power(std::cos(phi), r[0]), signed_power(std::sin(phi), r[1])};
}

SpherePoint3 sphere_param3(double phi1, double phi2, const Vec3& r) {
  const double s1 = std::sin(phi1);
  return {signed_power(s1 * std::cos(phi2), r[0]), signed_power(s1 * std::sin(phi2), r[1]),
          signed_power(std::cos(phi1), r[2])};
}

SampledSignal::SampledSignal(std::size_t dim, double sample_time, double t0)
    : dim_(dim), sample_time_(sample_time), t0_(t0) {
  if (dim == 0) throw DomainError("SampledSignal: dimension must be positive");
  if (!(sample_time > 0.0)) throw DomainError("SampledSignal: sample time must be positive");
}

void SampledSignal::push_back(std::span<const double> sample) {
  if (sample.size() != dim_) throw DomainError("SampledSignal: sample dimension mismatch");
  values_.insert(values_.end(), sample.begin(), sample.end());
}

void SampledSignal::push_back(std::initializer_list<double> sample) {
  push_back(std::span<const double>(sample.begin(), sample.size()));
}

SampledSignal dilate_signal(const SampledSignal& s, std::span<const double> r, double r_t,
                            double kappa) {
  if (!(kappa > 0.0)) throw DomainError("dilation factor must be positive");
  if (r.size() != s.dim()) throw DomainError("dilate_signal: weight/dimension mismatch");
  if (kappa == 1.0) return s;

  const double stretch = std::pow(kappa, r_t);
  SampledSignal out(s.dim(), s.sample_time() * stretch, s.t0() * stretch);
  out.reserve(s.size());
  std::vector<double> scale(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) scale[i] = std::pow(kappa, r[i]);
  std::vector<double> buf(s.dim());
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto v = s.at(k);
    for (std::size_t i = 0; i < s.dim(); ++i) buf[i] = scale[i] * v[i];
    out.push_back(buf);
  }
  return out;
}

}  // namespace homgain
