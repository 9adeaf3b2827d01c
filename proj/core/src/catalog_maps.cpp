#include <numbers>

#include "lusin/lusin_map.hpp"
#include "lusin/spaces.hpp"

namespace lusin::maps {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

// f(t) = t on the line; a homeomorphism, so X_1 is empty.
MapInstance identity() {
  MapInstance m;
  m.name = "identity";
  m.domain = spaces::line();
  m.codomain_dimension = 1;
  m.forms = {AffineForm{{0.0}, {1.0}}, AffineForm{{0.0}, {-1.0}}};
  m.sampling = {{50.0, SamplingLaw::linear}, {50.0, SamplingLaw::linear}};
  m.known_x1 = std::vector<Point>{};
  m.lipschitz = 1.0;
  return m;
}

// [0, inf) wrapped once around the unit circle, theta(t) = 2 pi t / (1 + t).
// The end at infinity closes up on f(0) = (1, 0).
MapInstance lollipop() {
  MapInstance m;
  m.name = "lollipop";
  m.domain = spaces::half_line();
  m.codomain_dimension = 2;
  m.forms = {RationalCircleForm{0.0, 0.0, 1.0, 0.0, kTwoPi}};
  m.sampling = {{99.0, SamplingLaw::rational}};
  m.known_x1 = std::vector<Point>{Point{0.0}};
  m.lipschitz = kTwoPi;
  return m;
}

// The line onto the figure eight (sin u, sin u cos u), u = pi t / (1 + |t|);
// both ends escape into the crossing point f(0) = (0, 0).
MapInstance figure_eight() {
  MapInstance m;
  m.name = "figure-eight";
  m.domain = spaces::line();
  m.codomain_dimension = 2;
  m.forms = {FigureEightForm{1.0, 1}, FigureEightForm{1.0, -1}};
  m.sampling = {{99.0, SamplingLaw::rational}, {99.0, SamplingLaw::rational}};
  m.known_x1 = std::vector<Point>{Point{0.0}};
  m.lipschitz = std::numbers::pi * std::numbers::sqrt2;
  return m;
}

// Ray a spirals onto the unit circle (radius 1 + 1/(1+s), angle 2 pi s); ray b
// is the lollipop on that circle. X_1 is all of ray b, and inside it the
// lollipop contributes one further level {(1, 0)}.
MapInstance spiral_lollipop() {
  MapInstance m;
  m.name = "spiral-lollipop";
  m.domain = spaces::two_ray();
  m.codomain_dimension = 2;
  m.forms = {SpiralForm{0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0}, RationalCircleForm{0.0, 0.0, 1.0, 0.0, kTwoPi}};
  m.sampling = {{30.0, SamplingLaw::linear}, {99.0, SamplingLaw::rational}};
  m.lipschitz = 2.0 * kTwoPi + 1.0;
  return m;
}

std::optional<MapInstance> find(std::string_view name) {
  if (name == "identity") return identity();
  if (name == "lollipop") return lollipop();
  if (name == "figure-eight") return figure_eight();
  if (name == "spiral-lollipop") return spiral_lollipop();
  return std::nullopt;
}

std::vector<std::string> names() { return {"identity", "lollipop", "figure-eight", "spiral-lollipop"}; }

}  // namespace lusin::maps
