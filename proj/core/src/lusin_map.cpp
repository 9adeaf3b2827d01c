#include "lusin/lusin_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lusin {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angle of (x, y) - (cx, cy) reduced to [0, 2 pi).
double polar_angle(double x, double y) {
  double a = std::atan2(y, x);
  if (a < 0.0) a += kTwoPi;
  return a >= kTwoPi ? 0.0 : a;
}

double rational_to_parameter(double q) { return q / (1.0 - q); }

std::optional<double> radial_inverse_power(double w, double power) {
  if (!(w > 0.0) || w > 1.0 + 1e-12) return std::nullopt;
  return std::max(0.0, std::pow(w, -1.0 / power) - 1.0);
}

}  // namespace

Point evaluate(const BranchForm& form, double s) {
  return std::visit(
      overloaded{
          [s](const AffineForm& f) {
            std::vector<double> c(f.offset.size());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.offset[i] + s * f.velocity[i];
            return Point(std::move(c));
          },
          [s](const RationalCircleForm& f) {
            const double theta = f.theta0 + f.sweep * (s / (1.0 + s));
            return Point{f.cx + f.radius * std::cos(theta), f.cy + f.radius * std::sin(theta)};
          },
          [s](const SpiralForm& f) {
            const double theta = f.theta0 + kTwoPi * std::fmod(f.turns * s, 1.0);
            const double r = f.r_inf + f.amplitude * std::pow(1.0 + s, -f.power);
            return Point{f.cx + r * std::cos(theta), f.cy + r * std::sin(theta)};
          },
          [s](const LogSpiralForm& f) {
            const double theta = f.theta0 + kTwoPi * std::fmod(f.turns * s, 1.0);
            const double r = f.r_inf + f.amplitude * std::exp(-f.rate * s);
            return Point{f.cx + r * std::cos(theta), f.cy + r * std::sin(theta)};
          },
          [s](const FigureEightForm& f) {
            const double u = f.sign * std::numbers::pi * (s / (1.0 + s));
            const double su = std::sin(u);
            return Point{f.scale * su, f.scale * su * std::cos(u)};
          },
      },
      form);
}

std::optional<double> invert(const BranchForm& form, const Point& y) {
  return std::visit(
      overloaded{
          [&](const AffineForm& f) -> std::optional<double> {
            if (y.dimension() != f.offset.size()) return std::nullopt;
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < f.offset.size(); ++i) {
              num += (y.coords[i] - f.offset[i]) * f.velocity[i];
              den += f.velocity[i] * f.velocity[i];
            }
            if (den == 0.0) return 0.0;
            return std::max(0.0, num / den);
          },
          [&](const RationalCircleForm& f) -> std::optional<double> {
            if (y.dimension() != 2 || f.sweep == 0.0) return std::nullopt;
            double phi = polar_angle(y.coords[0] - f.cx, y.coords[1] - f.cy) - polar_angle(std::cos(f.theta0), std::sin(f.theta0));
            if (f.sweep > 0.0) {
              if (phi < 0.0) phi += kTwoPi;
            } else if (phi > 0.0) {
              phi -= kTwoPi;
            }
            const double q = phi / f.sweep;
            if (q >= 1.0) return std::nullopt;
            return rational_to_parameter(q);
          },
          [&](const SpiralForm& f) -> std::optional<double> {
            if (y.dimension() != 2 || f.amplitude == 0.0) return std::nullopt;
            const double r = std::hypot(y.coords[0] - f.cx, y.coords[1] - f.cy);
            return radial_inverse_power((r - f.r_inf) / f.amplitude, f.power);
          },
          [&](const LogSpiralForm& f) -> std::optional<double> {
            if (y.dimension() != 2 || f.amplitude == 0.0 || f.rate <= 0.0) return std::nullopt;
            const double r = std::hypot(y.coords[0] - f.cx, y.coords[1] - f.cy);
            const double w = (r - f.r_inf) / f.amplitude;
            if (!(w > 0.0) || w > 1.0 + 1e-12) return std::nullopt;
            return std::max(0.0, -std::log(w) / f.rate);
          },
          [&](const FigureEightForm& f) -> std::optional<double> {
            if (y.dimension() != 2 || f.scale == 0.0) return std::nullopt;
            const double a = y.coords[0] / f.scale;
            const double b = y.coords[1] / f.scale;
            if (a == 0.0) return b == 0.0 ? std::optional<double>(0.0) : std::nullopt;
            if (f.sign * a < 0.0) return std::nullopt;
            // sin u = a and cos u = b / a
            const double u = std::abs(std::atan2(a, b / a));
            const double q = u / std::numbers::pi;
            if (q >= 1.0) return std::nullopt;
            return rational_to_parameter(q);
          },
      },
      form);
}

std::size_t codomain_dimension(const BranchForm& form) {
  if (const auto* a = std::get_if<AffineForm>(&form)) return a->offset.size();
  return 2;
}

std::string_view form_name(const BranchForm& form) {
  return std::visit(overloaded{
                        [](const AffineForm&) { return std::string_view("affine"); },
                        [](const RationalCircleForm&) { return std::string_view("rational_circle"); },
                        [](const SpiralForm&) { return std::string_view("spiral"); },
                        [](const LogSpiralForm&) { return std::string_view("log_spiral"); },
                        [](const FigureEightForm&) { return std::string_view("figure_eight"); },
                    },
                    form);
}

BranchForm make_form(std::string_view name, std::span<const double> c) {
  auto need = [&](std::size_t n) {
    if (c.size() != n)
      throw DescriptorError("form '" + std::string(name) + "' takes " + std::to_string(n) + " coefficients, got " +
                            std::to_string(c.size()));
  };
  for (double v : c)
    if (!std::isfinite(v)) throw DescriptorError("form '" + std::string(name) + "': non-finite coefficient");

  if (name == "affine") {
    if (c.empty() || c.size() % 2 != 0) throw DescriptorError("affine form takes 2m coefficients (offset, velocity)");
    const std::size_t m = c.size() / 2;
    return AffineForm{{c.begin(), c.begin() + static_cast<long>(m)}, {c.begin() + static_cast<long>(m), c.end()}};
  }
  if (name == "rational_circle") {
    need(5);
    if (std::abs(c[4]) > kTwoPi + 1e-12) throw DescriptorError("rational_circle sweep must satisfy |sweep| <= 2 pi");
    return RationalCircleForm{c[0], c[1], c[2], c[3], c[4]};
  }
  if (name == "spiral") {
    need(7);
    if (c[4] <= 0.0) throw DescriptorError("spiral power must be > 0");
    return SpiralForm{c[0], c[1], c[2], c[3], c[4], c[5], c[6]};
  }
  if (name == "log_spiral") {
    need(7);
    if (c[4] <= 0.0) throw DescriptorError("log_spiral rate must be > 0");
    return LogSpiralForm{c[0], c[1], c[2], c[3], c[4], c[5], c[6]};
  }
  if (name == "figure_eight") {
    need(2);
    if (c[1] != 1.0 && c[1] != -1.0) throw DescriptorError("figure_eight sign must be +1 or -1");
    return FigureEightForm{c[0], c[1] > 0 ? 1 : -1};
  }
  throw DescriptorError("unknown branch form '" + std::string(name) + "'");
}

Point MapInstance::at(int branch, double s) const {
  return evaluate(forms.at(static_cast<std::size_t>(branch)), s);
}

Point MapInstance::forward(const Point& x) const {
  if (!domain.contains(x)) throw DomainError(name + ": " + to_string(x) + " is not in the domain");
  const auto loc = domain.locate(x);
  const Point y = at(loc->branch, loc->parameter);
  if (!y.is_finite()) throw MapError(name + ": forward evaluation at " + to_string(x) + " is not finite");
  return y;
}

Point MapInstance::inverse(const Point& y) const {
  if (y.dimension() != codomain_dimension) throw MapError(name + ": image point has the wrong dimension");
  double best = std::numeric_limits<double>::infinity();
  int best_branch = -1;
  double best_s = 0.0;
  for (std::size_t b = 0; b < forms.size(); ++b) {
    const auto s = invert(forms[b], y);
    if (!s || !std::isfinite(*s)) continue;
    const double residual = euclidean(evaluate(forms[b], *s), y);
    if (residual < best) {
      best = residual;
      best_branch = static_cast<int>(b);
      best_s = *s;
    }
  }
  double scale = 1.0;
  for (double v : y.coords) scale = std::max(scale, std::abs(v));
  if (best_branch < 0 || best > 1e-7 * scale)
    throw MapError(name + ": " + to_string(y) + " is not in the image");
  return domain.on_branch(best_branch, best_s);
}

void validate_map(const MapInstance& map) {
  if (map.domain.branches.empty()) throw DescriptorError(map.name + ": domain must be ray-parametrised");
  if (map.forms.size() != map.domain.branches.size())
    throw DescriptorError(map.name + ": " + std::to_string(map.forms.size()) + " branch forms for " +
                          std::to_string(map.domain.branches.size()) + " domain rays");
  if (map.sampling.size() != map.forms.size()) throw DescriptorError(map.name + ": one sampling law per branch");
  for (const auto& f : map.forms)
    if (codomain_dimension(f) != map.codomain_dimension)
      throw DescriptorError(map.name + ": branch forms disagree on the codomain dimension");
  for (const auto& s : map.sampling)
    if (!(s.extent > 0.0) || !std::isfinite(s.extent)) throw DescriptorError(map.name + ": sampling extent must be > 0");
}

std::vector<Point> sample_domain(const MapInstance& map, std::size_t per_branch, std::uint64_t seed) {
  if (per_branch == 0) throw ParameterError("sample_domain: per_branch must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(per_branch * map.forms.size());
  for (std::size_t b = 0; b < map.forms.size(); ++b) {
    const BranchSampling& law = map.sampling[b];
    out.push_back(map.domain.on_branch(static_cast<int>(b), 0.0));
    for (std::size_t i = 1; i < per_branch; ++i) {
      const double u = unit_uniform(rng);
      double s = 0.0;
      if (law.law == SamplingLaw::linear) {
        s = u * law.extent;
      } else {
        s = rational_to_parameter(u * law.extent / (1.0 + law.extent));
      }
      out.push_back(map.domain.on_branch(static_cast<int>(b), s));
    }
  }
  return out;
}

BijectionReport check_bijection(const MapInstance& map, std::span<const Point> samples, double tolerance) {
  BijectionReport rep;
  for (const Point& x : samples) {
    ++rep.checked;
    double err = std::numeric_limits<double>::infinity();
    try {
      err = euclidean(map.inverse(map.forward(x)), x);
    } catch (const MapError&) {
    }
    rep.max_error = std::max(rep.max_error, err);
    if (!(err <= tolerance)) ++rep.failures;
  }
  return rep;
}

ContinuityReport check_continuity(const MapInstance& map, double step) {
  if (!(step > 0.0)) throw ParameterError("check_continuity: step must be > 0");
  ContinuityReport rep;
  for (std::size_t b = 0; b < map.forms.size(); ++b) {
    const auto n = static_cast<std::size_t>(std::ceil(map.sampling[b].extent / step));
    Point prev = map.at(static_cast<int>(b), 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
      const Point cur = map.at(static_cast<int>(b), static_cast<double>(i) * step);
      const double ratio = euclidean(prev, cur) / (map.lipschitz * step);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (ratio > 1.0 + 1e-9) ++rep.failures;
      ++rep.steps;
      prev = cur;
    }
  }
  return rep;
}

double EscapeSampler::parameter(int step, int sequence) const {
  return std::floor(start * std::pow(factor, step)) + static_cast<double>(sequence) / per_branch_count;
}

EscapeSampler EscapeSampler::all_branches(const MapInstance& map) {
  EscapeSampler s;
  for (std::size_t b = 0; b < map.forms.size(); ++b) s.branch_ids.push_back(static_cast<int>(b));
  return s;
}

std::vector<EscapePoint> escape_points(const MapInstance& map, const EscapeSampler& sampler, bool tail_only) {
  if (sampler.steps <= 0 || sampler.per_branch_count <= 0 || sampler.tail_steps <= 0 || sampler.tail_steps > sampler.steps)
    throw ParameterError("escape sampler: steps, tail_steps and per_branch_count must be positive, tail <= steps");
  if (!(sampler.factor > 1.0) || !(sampler.start > 0.0)) throw ParameterError("escape sampler: schedule must grow");
  const int first = tail_only ? sampler.steps - sampler.tail_steps : 0;
  std::vector<EscapePoint> out;
  out.reserve(sampler.branch_ids.size() * static_cast<std::size_t>(sampler.per_branch_count) *
              static_cast<std::size_t>(sampler.steps - first));
  for (int b : sampler.branch_ids) {
    if (b < 0 || b >= static_cast<int>(map.forms.size())) throw ParameterError("escape sampler: unknown branch");
    for (int i = 0; i < sampler.per_branch_count; ++i) {
      for (int j = first; j < sampler.steps; ++j) {
        const double s = sampler.parameter(j, i);
        Point y = map.at(b, s);
        if (!y.is_finite()) throw MapError(map.name + ": forward evaluation failed along the escape schedule");
        out.push_back({b, j, i, s, std::move(y)});
      }
    }
  }
  return out;
}

}  // namespace lusin
