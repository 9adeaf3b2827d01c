#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lusin/compactification.hpp"
#include "lusin/lusin_map.hpp"
#include "lusin/metric.hpp"

namespace lusin {

struct LabeledSequence {
  std::vector<Point> points;
  bool convergent = false;  // analytic label: converges in (X, delta)
  std::string family;
};

/// Seeded half-line sequences for the lollipop, `count_each` convergent and
/// `count_each` non-convergent, labeled from their closed forms.
///   convergent:      a + c/m,  c*m,  c*m and 1/m interleaved
///   non-convergent:  a, b interleaved (|a - b| >= 0.5),  a + sin m,  m and a interleaved
std::vector<LabeledSequence> lollipop_test_sequences(std::size_t count_each = 25, std::uint64_t seed = 1,
                                                     std::size_t length = 4000);

struct SequenceVerdict {
  std::string family;
  bool label = false;
  CauchyVerdict delta_verdict = CauchyVerdict::undetermined;
  CauchyVerdict image_verdict = CauchyVerdict::undetermined;
  bool delta_converges = false;
  bool image_converges = false;
  bool agree = false;  // both classifiers decided and gave the same answer
};

struct CertificateReport {
  std::vector<SequenceVerdict> per_sequence;
  double agreement = 0.0;
  std::size_t label_mismatches = 0;  // delta verdict disagrees with the analytic label
};

/// Compares convergence under delta in the domain with convergence of the
/// image sequence in the codomain. Throws ScopeError unless the map's X_1 is
/// known to be the single point cspace.x0().
CertificateReport homeo_certificate(const MapInstance& map, const CompactifiedSpace& cspace,
                                    const std::vector<LabeledSequence>& sequences, std::size_t window = 400,
                                    double tolerance = 1e-2);

}  // namespace lusin
