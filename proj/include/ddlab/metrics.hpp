// Distance histograms, distinct-distance counts, quadruple counts and the
// Cauchy-Schwarz lower bound. Counting is always over squared distances.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ddlab/geom.hpp"
#include "ddlab/rational.hpp"

namespace ddlab {

struct CountMode {
  bool exact = true;
  double epsilon = 1e-9;  // relative bucket width for float mode

  static CountMode Exact() { return {true, 0.0}; }
  static CountMode Float(double eps = 1e-9) { return {false, eps}; }
};

// Multiset of squared distances with multiplicities. In float mode the keys
// are bucket representatives (the smallest member of each bucket); buckets
// are cut where the relative gap between sorted values exceeds epsilon, and
// the ambiguous flag is raised when a cut lands in [epsilon, 10*epsilon].
struct DistanceHistogram {
  bool exact_mode = true;
  double epsilon = 0.0;
  std::map<Rational, std::uint64_t> exact_entries;
  std::vector<std::pair<double, std::uint64_t>> float_buckets;
  bool ambiguous = false;
  std::uint64_t total_pairs = 0;

  std::size_t distinct() const {
    return exact_mode ? exact_entries.size() : float_buckets.size();
  }
  std::vector<std::uint64_t> multiplicities() const;
};

// Histogram over all |p1| * |p2| ordered pairs; throws on empty input.
DistanceHistogram bipartite_histogram(std::span<const Point3> p1,
                                      std::span<const Point3> p2, CountMode mode);

// Convenience: all unordered pairs within one set, zero distances excluded.
DistanceHistogram within_set_histogram(std::span<const Point3> pts, CountMode mode);

// Builds a histogram directly from precomputed squared distances (one entry
// per pair), e.g. the closed-form table of a construction.
DistanceHistogram histogram_from_values(std::span<const Rational> values,
                                        CountMode mode);
DistanceHistogram histogram_from_doubles(std::span<const double> values,
                                         CountMode mode);

// |Q| = sum of m_delta^2: ordered quadruples (a,a',b,b') with |ab| = |a'b'|.
std::uint64_t quadruple_count(const DistanceHistogram& h);

// (sum m_delta)^2 / D; quadruple_count(h) >= this value always.
Rational cauchy_schwarz_bound(const DistanceHistogram& h);

// For p1 in the plane z=0 and p2 in a common plane z=c: the distinct count is
// unchanged when p2 is projected down to z=0. Exists as a self-test; throws
// std::invalid_argument when the precondition on the planes fails.
bool check_projection_invariance(std::span<const Point3> p1,
                                 std::span<const Point3> p2);

}  // namespace ddlab
