#include "ddlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddlab {

std::vector<std::uint64_t> DistanceHistogram::multiplicities() const {
  std::vector<std::uint64_t> out;
  if (exact_mode) {
    out.reserve(exact_entries.size());
    for (const auto& [key, mult] : exact_entries) out.push_back(mult);
  } else {
    out.reserve(float_buckets.size());
    for (const auto& [rep, mult] : float_buckets) out.push_back(mult);
  }
  return out;
}

DistanceHistogram histogram_from_values(std::span<const Rational> values,
                                        CountMode mode) {
  if (mode.exact) {
    DistanceHistogram h;
    h.exact_mode = true;
    for (const Rational& v : values) ++h.exact_entries[v];
    h.total_pairs = values.size();
    return h;
  }
  std::vector<double> d;
  d.reserve(values.size());
  for (const Rational& v : values) d.push_back(v.to_double());
  return histogram_from_doubles(d, mode);
}

DistanceHistogram histogram_from_doubles(std::span<const double> values,
                                         CountMode mode) {
  if (mode.exact)
    throw std::invalid_argument("histogram_from_doubles: exact mode needs rational input");
  if (mode.epsilon <= 0.0)
    throw std::invalid_argument("histogram: epsilon must be positive");
  DistanceHistogram h;
  h.exact_mode = false;
  h.epsilon = mode.epsilon;
  h.total_pairs = values.size();
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double prev = 0.0;
  for (double v : sorted) {
    if (h.float_buckets.empty()) {
      h.float_buckets.emplace_back(v, 1);
      prev = v;
      continue;
    }
    // chain on the gap to the previous sorted value; the representative
    // stays the smallest member of the bucket
    const double scale = std::max({std::fabs(prev), std::fabs(v), 1e-300});
    const double gap = (v - prev) / scale;
    if (gap >= mode.epsilon && gap <= 10.0 * mode.epsilon) h.ambiguous = true;
    if (gap > mode.epsilon) {
      h.float_buckets.emplace_back(v, 1);
    } else {
      ++h.float_buckets.back().second;
    }
    prev = v;
  }
  return h;
}

DistanceHistogram bipartite_histogram(std::span<const Point3> p1,
                                      std::span<const Point3> p2, CountMode mode) {
  if (p1.empty() || p2.empty())
    throw std::invalid_argument("bipartite_histogram: empty point set");
  std::vector<Rational> values;
  values.reserve(p1.size() * p2.size());
  for (const Point3& a : p1)
    for (const Point3& b : p2) values.push_back(dist_sq(a, b));
  return histogram_from_values(values, mode);
}

DistanceHistogram within_set_histogram(std::span<const Point3> pts, CountMode mode) {
  if (pts.empty()) throw std::invalid_argument("within_set_histogram: empty point set");
  std::vector<Rational> values;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Rational d = dist_sq(pts[i], pts[j]);
      if (!d.is_zero()) values.push_back(std::move(d));
    }
  return histogram_from_values(values, mode);
}

std::uint64_t quadruple_count(const DistanceHistogram& h) {
  std::uint64_t q = 0;
  for (std::uint64_t m : h.multiplicities()) q += m * m;
  return q;
}

Rational cauchy_schwarz_bound(const DistanceHistogram& h) {
  const auto mults = h.multiplicities();
  if (mults.empty()) throw std::invalid_argument("cauchy_schwarz_bound: empty histogram");
  std::uint64_t sum = 0;
  for (std::uint64_t m : mults) sum += m;
  Rational s(static_cast<long long>(sum));
  return s * s / Rational(static_cast<long long>(mults.size()));
}

bool check_projection_invariance(std::span<const Point3> p1,
                                 std::span<const Point3> p2) {
  if (p1.empty() || p2.empty())
    throw std::invalid_argument("check_projection_invariance: empty point set");
  for (const Point3& a : p1)
    if (!a.z.is_zero())
      throw std::invalid_argument("check_projection_invariance: first set must lie in z=0");
  for (const Point3& b : p2)
    if (!(b.z == p2.front().z))
      throw std::invalid_argument("check_projection_invariance: second set must share one z");

  std::vector<Point3> projected;
  projected.reserve(p2.size());
  for (const Point3& b : p2) projected.push_back(project_drop_z(b));

  const auto before = bipartite_histogram(p1, p2, CountMode::Exact());
  const auto after = bipartite_histogram(p1, projected, CountMode::Exact());
  return before.distinct() == after.distinct();
}

}  // namespace ddlab
