#include "mft/metrics.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace mft {
namespace {

struct Box {
  std::int64_t id;
  ObjectState state;
};

// Minimum-cost assignment of rows to columns (rows <= cols). Returns, per
// row, the assigned column.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const std::size_t m = n == 0 ? 0 : cost[0].size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

std::vector<Link> link_frame(const std::vector<Box>& gt, const std::vector<Box>& out,
                             double threshold, AssociationMethod method) {
  std::vector<Link> links;
  if (gt.empty() || out.empty()) return links;

  std::vector<std::vector<double>> overlap(gt.size(), std::vector<double>(out.size()));
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t t = 0; t < out.size(); ++t) {
      overlap[g][t] = iou(gt[g].state, out[t].state);
    }
  }

  if (method == AssociationMethod::greedy) {
    struct Pair {
      double iou;
      std::size_t g, t;
    };
    std::vector<Pair> pairs;
    for (std::size_t g = 0; g < gt.size(); ++g) {
      for (std::size_t t = 0; t < out.size(); ++t) {
        if (overlap[g][t] >= threshold) pairs.push_back({overlap[g][t], g, t});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.iou != b.iou) return a.iou > b.iou;
      if (gt[a.g].id != gt[b.g].id) return gt[a.g].id < gt[b.g].id;
      return out[a.t].id < out[b.t].id;
    });
    std::vector<bool> g_used(gt.size(), false), t_used(out.size(), false);
    for (const Pair& p : pairs) {
      if (g_used[p.g] || t_used[p.t]) continue;
      g_used[p.g] = t_used[p.t] = true;
      links.push_back({gt[p.g].id, out[p.t].id, p.iou});
    }
  } else {
    // Pairs below threshold carry no weight, so the optimum never prefers them.
    const bool transpose = gt.size() > out.size();
    const std::size_t rows = transpose ? out.size() : gt.size();
    const std::size_t cols = transpose ? gt.size() : out.size();
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const double o = transpose ? overlap[c][r] : overlap[r][c];
        cost[r][c] = o >= threshold ? -o : 0.0;
      }
    }
    const std::vector<std::size_t> assignment = hungarian(cost);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t g = transpose ? assignment[r] : r;
      const std::size_t t = transpose ? r : assignment[r];
      if (overlap[g][t] >= threshold) links.push_back({gt[g].id, out[t].id, overlap[g][t]});
    }
  }

  std::sort(links.begin(), links.end(),
            [](const Link& a, const Link& b) { return a.gt_id < b.gt_id; });
  return links;
}

}  // namespace

double iou(const ObjectState& a, const ObjectState& b) {
  const double ix = std::min(a.x + a.l / 2, b.x + b.l / 2) - std::max(a.x - a.l / 2, b.x - b.l / 2);
  const double iy = std::min(a.y + a.h / 2, b.y + b.h / 2) - std::max(a.y - a.h / 2, b.y - b.h / 2);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

Correspondence associate(std::span<const GroundTruthObject> gt,
                         std::span<const Trajectory> tracks, double iou_threshold,
                         AssociationMethod method) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw Error(ErrorKind::config, "IoU threshold must be in (0, 1]");
  }
  std::map<FrameId, std::vector<Box>> gt_frames, out_frames;
  for (const GroundTruthObject& obj : gt) {
    for (const auto& [frame, state] : obj.states) gt_frames[frame].push_back({obj.id, state});
  }
  for (const Trajectory& traj : tracks) {
    for (const TrackSample& s : traj.samples) out_frames[s.frame].push_back({traj.id, s.state});
  }

  Correspondence corr;
  for (const auto& [frame, gt_boxes] : gt_frames) {
    auto it = out_frames.find(frame);
    if (it == out_frames.end()) continue;
    std::vector<Link> links = link_frame(gt_boxes, it->second, iou_threshold, method);
    if (!links.empty()) corr.emplace(frame, std::move(links));
  }
  return corr;
}

namespace {

struct Tally {
  std::int64_t matched_frames = 0;
  std::set<std::int64_t> partners;
};

std::map<std::int64_t, Tally> tally_by_gt(const Correspondence& corr) {
  std::map<std::int64_t, Tally> out;
  for (const auto& [frame, links] : corr) {
    for (const Link& l : links) {
      Tally& t = out[l.gt_id];
      ++t.matched_frames;
      t.partners.insert(l.track_id);
    }
  }
  return out;
}

std::map<TrackId, Tally> tally_by_track(const Correspondence& corr) {
  std::map<TrackId, Tally> out;
  for (const auto& [frame, links] : corr) {
    for (const Link& l : links) {
      Tally& t = out[l.track_id];
      ++t.matched_frames;
      t.partners.insert(l.gt_id);
    }
  }
  return out;
}

double mean_reciprocal(const auto& tallies) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& [id, t] : tallies) {
    if (t.partners.empty()) continue;
    sum += 1.0 / static_cast<double>(t.partners.size());
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

double m1(const Correspondence& corr, std::span<const GroundTruthObject> gt) {
  if (gt.empty()) throw Error(ErrorKind::metric, "tracking time is undefined without ground truth");
  const auto tallies = tally_by_gt(corr);
  double sum = 0.0;
  for (const GroundTruthObject& obj : gt) {
    if (obj.states.empty()) {
      throw Error(ErrorKind::metric, "ground-truth object " + std::to_string(obj.id) +
                                         " has no frames");
    }
    auto it = tallies.find(obj.id);
    const double matched = it == tallies.end() ? 0.0 : static_cast<double>(it->second.matched_frames);
    sum += matched / static_cast<double>(obj.states.size());
  }
  return sum / static_cast<double>(gt.size());
}

double m2(const Correspondence& corr, std::span<const GroundTruthObject> /*gt*/) {
  return mean_reciprocal(tally_by_gt(corr));
}

double m3(const Correspondence& corr, std::span<const Trajectory> /*tracks*/) {
  return mean_reciprocal(tally_by_track(corr));
}

EvalReport evaluate(std::span<const GroundTruthObject> gt, std::span<const Trajectory> tracks,
                    double iou_threshold, AssociationMethod method) {
  const Correspondence corr = associate(gt, tracks, iou_threshold, method);
  EvalReport report;
  report.m1 = m1(corr, gt);
  report.m2 = m2(corr, gt);
  report.m3 = m3(corr, tracks);
  report.m_bar = (report.m1 + report.m2 + report.m3) / 3.0;

  const auto by_gt = tally_by_gt(corr);
  for (const GroundTruthObject& obj : gt) {
    GtBreakdown b{obj.id, static_cast<std::int64_t>(obj.states.size()), 0, 0};
    if (auto it = by_gt.find(obj.id); it != by_gt.end()) {
      b.matched_frames = it->second.matched_frames;
      b.distinct_tracks = static_cast<std::int64_t>(it->second.partners.size());
    }
    report.gt_objects.push_back(b);
  }
  const auto by_track = tally_by_track(corr);
  for (const Trajectory& traj : tracks) {
    TrackBreakdown b{traj.id, static_cast<std::int64_t>(traj.samples.size()), 0, 0};
    if (auto it = by_track.find(traj.id); it != by_track.end()) {
      b.matched_frames = it->second.matched_frames;
      b.distinct_gt = static_cast<std::int64_t>(it->second.partners.size());
    }
    report.tracks.push_back(b);
  }
  return report;
}

double throughput(std::int64_t frames, std::chrono::duration<double> elapsed) {
  if (!(elapsed.count() > 0.0)) {
    throw Error(ErrorKind::metric, "throughput needs a positive elapsed time");
  }
  return static_cast<double>(frames) / elapsed.count();
}

}  // namespace mft
