#include "sigmkt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigmkt {

namespace {

constexpr std::size_t max_variation_nodes = 10000;

double euclidean(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

// Shared variation dynamic program: best[j] = max_i best[i] + d(i,j)^p over
// i < j, partitions forced through the first and last node.
template <class Dist>
double variation_dp(std::size_t count, double p, Dist&& dist) {
  std::vector<double> best(count, 0.0);
  for (std::size_t j = 1; j < count; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < j; ++i)
      m = std::max(m, best[i] + std::pow(dist(i, j), p));
    best[j] = m;
  }
  return std::pow(best[count - 1], 1.0 / p);
}

}  // namespace

double p_variation(const CadlagSamplePath& path, double p) {
  if (p < 1.0) throw std::invalid_argument("p_variation needs p >= 1");
  if (path.node_count() > max_variation_nodes)
    throw std::invalid_argument("p_variation limited to 10^4 nodes");
  if (path.node_count() < 2) return 0.0;
  return variation_dp(path.node_count(), p, [&](std::size_t i, std::size_t j) {
    return euclidean(path.value(i), path.value(j));
  });
}

double rough_p_variation(const std::vector<TensorElement>& points, double p) {
  if (p < 1.0) throw std::invalid_argument("rough_p_variation needs p >= 1");
  if (points.size() > max_variation_nodes)
    throw std::invalid_argument("rough_p_variation limited to 10^4 nodes");
  for (const TensorElement& g : points) {
    if (!g.group_like())
      throw std::invalid_argument("rough_p_variation needs group-like points");
    if (g.level() < static_cast<int>(p))
      throw std::invalid_argument("rough_p_variation needs level >= floor(p)");
    if (!g.same_shape(points.front()))
      throw std::invalid_argument("rough_p_variation: alphabet/level mismatch");
  }
  if (points.size() < 2) return 0.0;
  // Cache the inverses once; each pair then costs one product and one norm.
  std::vector<TensorElement> inverses;
  inverses.reserve(points.size());
  for (const TensorElement& g : points) inverses.push_back(group_inverse(g));
  return variation_dp(points.size(), p, [&](std::size_t i, std::size_t j) {
    return homogeneous_norm(tensor_product(inverses[i], points[j]));
  });
}

namespace {

// Jump-collapsed view of a path: one event per distinct time with left and
// right values; linear motion between events.
struct EventPath {
  std::vector<double> times;
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> post;

  static EventPath from(const CadlagSamplePath& p) {
    EventPath e;
    for (std::size_t k = 0; k < p.node_count(); ++k) {
      if (p.is_jump(k)) {
        e.post.back() = p.value(k);
      } else {
        e.times.push_back(p.time(k));
        e.pre.push_back(p.value(k));
        e.post.push_back(p.value(k));
      }
    }
    return e;
  }

  std::size_t size() const { return times.size(); }

  // Value approached from the left at times[k] is pre[k]; the value carried
  // forward is post[k]. Between events the path is linear.
  std::vector<double> at(double t, bool left_limit) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = it - times.begin();
    if (hi == 0) return pre.front();
    std::size_t lo = hi - 1;
    if (times[lo] == t) {
      if (left_limit) return pre[lo];
      return post[lo];
    }
    if (hi == times.size()) return post.back();
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    std::vector<double> out(post[lo]);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += w * (pre[hi][i] - out[i]);
    return out;
  }
};

// sup over sigma in [s0, s1] of |a(lambda(sigma)) - b(sigma)| for the linear
// warp lambda(s0) = u0, lambda(s1) = u1. Both composites are piecewise linear
// in sigma, so the supremum sits at a breakpoint (or its left limit).
double warp_segment_gap(const EventPath& a, const EventPath& b, double s0,
                        double u0, double s1, double u1) {
  std::vector<double> breaks{s0, s1};
  for (double t : b.times)
    if (t > s0 && t < s1) breaks.push_back(t);
  const double slope = (u1 - u0) / (s1 - s0);
  for (double u : a.times)
    if (u > u0 && u < u1) breaks.push_back(s0 + (u - u0) / slope);
  std::sort(breaks.begin(), breaks.end());
  double gap = 0.0;
  for (double s : breaks) {
    const double u = (s <= s0) ? u0 : (s >= s1 ? u1 : u0 + (s - s0) * slope);
    // Compare matching one-sided limits; the endpoint rows of the segment
    // compare post-with-post at s0 and pre-with-pre at s1.
    if (s > s0) gap = std::max(gap, euclidean(a.at(u, true), b.at(s, true)));
    if (s < s1) gap = std::max(gap, euclidean(a.at(u, false), b.at(s, false)));
  }
  return gap;
}

struct WarpChain {
  std::vector<std::size_t> a_idx;
  std::vector<std::size_t> b_idx;
};

double warp_cost(const EventPath& a, const EventPath& b,
                 const std::vector<double>& a_times,
                 const std::vector<double>& b_times) {
  double cost = euclidean(a.post.front(), b.post.front());
  for (std::size_t k = 0; k + 1 < a_times.size(); ++k) {
    cost = std::max(cost, std::abs(a_times[k] - b_times[k]));
    cost = std::max(cost, warp_segment_gap(a, b, b_times[k], a_times[k],
                                           b_times[k + 1], a_times[k + 1]));
  }
  cost = std::max(cost, std::abs(a_times.back() - b_times.back()));
  return cost;
}

}  // namespace

double j1_distance(const CadlagSamplePath& pa, const CadlagSamplePath& pb) {
  if (pa.alphabet() != pb.alphabet())
    throw std::invalid_argument("j1_distance needs a common alphabet");
  if (pa.time(0) != pb.time(0) || pa.horizon() != pb.horizon())
    throw std::invalid_argument("j1_distance needs a common time interval");
  const EventPath a = EventPath::from(pa);
  const EventPath b = EventPath::from(pb);
  const std::size_t M = a.size(), N = b.size();
  if (M > 100 || N > 100)
    throw std::invalid_argument("j1_distance limited to 100 events per path");

  // cost[i][j]: best max-cost over warps that anchor a-event i to b-event j.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cost(M, std::vector<double>(N, inf));
  std::vector<std::vector<std::pair<int, int>>> parent(
      M, std::vector<std::pair<int, int>>(N, {-1, -1}));
  cost[0][0] = std::max(euclidean(a.pre[0], b.pre[0]),
                        euclidean(a.post[0], b.post[0]));
  for (std::size_t i = 1; i < M; ++i)
    for (std::size_t j = 1; j < N; ++j) {
      double anchor = std::max(std::abs(a.times[i] - b.times[j]),
                               std::max(euclidean(a.pre[i], b.pre[j]),
                                        euclidean(a.post[i], b.post[j])));
      for (std::size_t pi = 0; pi < i; ++pi)
        for (std::size_t pj = 0; pj < j; ++pj) {
          if (cost[pi][pj] >= inf) continue;
          const double lower = std::max(cost[pi][pj], anchor);
          if (lower >= cost[i][j]) continue;
          const double seg = warp_segment_gap(a, b, b.times[pj], a.times[pi],
                                              b.times[j], a.times[i]);
          const double total = std::max(lower, seg);
          if (total < cost[i][j]) {
            cost[i][j] = total;
            parent[i][j] = {int(pi), int(pj)};
          }
        }
    }
  double best = cost[M - 1][N - 1];

  // Recover the anchor chain and run one bisection pass per interior anchor,
  // shifting its warp target time to shrink the local maximum.
  WarpChain chain;
  {
    int i = int(M) - 1, j = int(N) - 1;
    while (i >= 0 && j >= 0) {
      chain.a_idx.push_back(i);
      chain.b_idx.push_back(j);
      auto [pi, pj] = parent[i][j];
      i = pi;
      j = pj;
    }
    std::reverse(chain.a_idx.begin(), chain.a_idx.end());
    std::reverse(chain.b_idx.begin(), chain.b_idx.end());
  }
  if (chain.a_idx.size() >= 3) {
    std::vector<double> ua, sb;
    for (std::size_t k = 0; k < chain.a_idx.size(); ++k) {
      ua.push_back(a.times[chain.a_idx[k]]);
      sb.push_back(b.times[chain.b_idx[k]]);
    }
    for (std::size_t k = 1; k + 1 < ua.size(); ++k) {
      double lo = ua[k - 1], hi = ua[k + 1];
      for (int iter = 0; iter < 40; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        std::vector<double> t1 = ua, t2 = ua;
        t1[k] = m1;
        t2[k] = m2;
        if (warp_cost(a, b, t1, sb) < warp_cost(a, b, t2, sb))
          hi = m2;
        else
          lo = m1;
      }
      std::vector<double> trial = ua;
      trial[k] = 0.5 * (lo + hi);
      if (warp_cost(a, b, trial, sb) < warp_cost(a, b, ua, sb)) ua = trial;
    }
    best = std::min(best, warp_cost(a, b, ua, sb));
  }
  return best;
}

}  // namespace sigmkt
