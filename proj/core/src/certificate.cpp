#include "lusin/certificate.hpp"

#include <cmath>
#include <random>

#include "lusin/errors.hpp"

namespace lusin {

std::vector<LabeledSequence> lollipop_test_sequences(std::size_t count_each, std::uint64_t seed, std::size_t length) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); };
  auto make = [&](const std::string& family, bool convergent, auto&& term) {
    LabeledSequence s;
    s.family = family;
    s.convergent = convergent;
    s.points.reserve(length);
    for (std::size_t m = 1; m <= length; ++m) s.points.push_back(Point{term(static_cast<double>(m))});
    return s;
  };

  std::vector<LabeledSequence> out;
  for (std::size_t i = 0; i < count_each; ++i) {
    switch (i % 3) {
      case 0: {
        const double a = uniform(0.5, 10.0), c = uniform(-0.5, 0.5);
        out.push_back(make("a+c/m", true, [=](double m) { return a + c / m; }));
        break;
      }
      case 1: {
        const double c = uniform(0.5, 2.0);
        out.push_back(make("c*m", true, [=](double m) { return c * m; }));
        break;
      }
      default: {
        const double c = uniform(0.5, 2.0);
        out.push_back(make("c*m|1/m", true, [=](double m) {
          return static_cast<long>(m) % 2 ? c * m : 1.0 / m;
        }));
      }
    }
  }
  for (std::size_t i = 0; i < count_each; ++i) {
    switch (i % 3) {
      case 0: {
        const double a = uniform(0.0, 9.5);
        const double b = uniform(a + 0.5, 10.0);
        out.push_back(make("a|b", false, [=](double m) { return static_cast<long>(m) % 2 ? a : b; }));
        break;
      }
      case 1: {
        const double a = uniform(1.0, 5.0);
        out.push_back(make("a+sin(m)", false, [=](double m) { return a + std::sin(m); }));
        break;
      }
      default: {
        const double a = uniform(0.5, 10.0);
        out.push_back(make("m|a", false, [=](double m) { return static_cast<long>(m) % 2 ? m : a; }));
      }
    }
  }
  return out;
}

CertificateReport homeo_certificate(const MapInstance& map, const CompactifiedSpace& cspace,
                                    const std::vector<LabeledSequence>& sequences, std::size_t window,
                                    double tolerance) {
  if (!map.known_x1 || map.known_x1->size() != 1)
    throw ScopeError(map.name + ": the certificate needs X_1 to be a single known point");
  if (!same_point(map.known_x1->front(), cspace.x0()))
    throw ScopeError(map.name + ": x0 = " + to_string(cspace.x0()) + " is not the X_1 point " +
                     to_string(map.known_x1->front()));

  const DistanceOracle delta = cspace.cached_delta_oracle();
  const DistanceOracle ambient = [](const Point& a, const Point& b) { return euclidean(a, b); };

  CertificateReport rep;
  std::size_t agreed = 0;
  for (const LabeledSequence& seq : sequences) {
    SequenceVerdict v;
    v.family = seq.family;
    v.label = seq.convergent;
    std::vector<Point> images;
    images.reserve(seq.points.size());
    for (const Point& x : seq.points) images.push_back(map.forward(x));
    v.delta_verdict = cauchy_classify(seq.points, delta, window, tolerance);
    v.image_verdict = cauchy_classify(images, ambient, window, tolerance);
    v.delta_converges = v.delta_verdict == CauchyVerdict::cauchy;
    v.image_converges = v.image_verdict == CauchyVerdict::cauchy;
    v.agree = v.delta_verdict != CauchyVerdict::undetermined && v.delta_verdict == v.image_verdict;
    if (v.agree) ++agreed;
    if (v.delta_converges != seq.convergent) ++rep.label_mismatches;
    rep.per_sequence.push_back(std::move(v));
  }
  rep.agreement = sequences.empty() ? 1.0 : static_cast<double>(agreed) / static_cast<double>(sequences.size());
  return rep;
}

}  // namespace lusin
