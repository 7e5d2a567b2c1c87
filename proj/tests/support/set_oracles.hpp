#pragma once

// Brute-force reference implementations used to check the exact set algebra.
// They rely only on box corner data and point membership, not on the
// library's normal-form or overlay machinery.

#include <optional>
#include <vector>

#include "specfold/band_set.hpp"

namespace oracles {

using specfold::BandSet;
using specfold::Rational;
using specfold::RationalBox;

// Per-axis probe coordinates that hit every elementary cell spanned by the
// given sets' box edges: all edges, midpoints between consecutive edges, and
// sentinels outside the hull.  Testing membership at the cross product of
// these decides indicator equality exactly for finite box unions.
inline std::vector<std::vector<Rational>> probe_coordinates(
    const std::vector<const BandSet*>& sets) {
  int dim = sets.front()->dim();
  std::vector<std::vector<Rational>> probes(static_cast<size_t>(dim));
  for (int ax = 0; ax < dim; ++ax) {
    std::vector<Rational>& cuts = probes[static_cast<size_t>(ax)];
    for (const BandSet* s : sets)
      for (const RationalBox& b : s->boxes()) {
        cuts.push_back(b.lo(ax));
        cuts.push_back(b.hi(ax));
      }
    if (cuts.empty()) cuts.push_back(Rational(0));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> pts;
    pts.push_back(cuts.front() - 1);
    for (size_t i = 0; i < cuts.size(); ++i) {
      pts.push_back(cuts[i]);
      if (i + 1 < cuts.size()) pts.push_back((cuts[i] + cuts[i + 1]) / 2);
    }
    pts.push_back(cuts.back() + 1);
    probes[static_cast<size_t>(ax)] = std::move(pts);
  }
  return probes;
}

template <typename Pred>
std::optional<std::vector<Rational>> find_point(
    const std::vector<std::vector<Rational>>& probes, Pred&& bad) {
  std::vector<size_t> idx(probes.size(), 0);
  std::vector<Rational> point(probes.size());
  while (true) {
    for (size_t ax = 0; ax < probes.size(); ++ax) point[ax] = probes[ax][idx[ax]];
    if (bad(point)) return point;
    size_t ax = probes.size();
    while (ax > 0) {
      --ax;
      if (++idx[ax] < probes[ax].size()) break;
      idx[ax] = 0;
      if (ax == 0) return std::nullopt;
    }
  }
}

// First probe point where the two sets' indicators differ, if any.
inline std::optional<std::vector<Rational>> indicator_mismatch(const BandSet& a,
                                                               const BandSet& b) {
  auto probes = probe_coordinates({&a, &b});
  return find_point(probes, [&](const std::vector<Rational>& p) {
    return a.contains(p) != b.contains(p);
  });
}

// First probe point where `result` disagrees with the pointwise boolean
// combination of a and b.
template <typename Combine>
std::optional<std::vector<Rational>> boolean_mismatch(const BandSet& a, const BandSet& b,
                                                      const BandSet& result,
                                                      Combine&& combine) {
  auto probes = probe_coordinates({&a, &b, &result});
  return find_point(probes, [&](const std::vector<Rational>& p) {
    return combine(a.contains(p), b.contains(p)) != result.contains(p);
  });
}

// Independent measure computation: decompose the union's bounding region
// into the elementary cells cut by all box edges and sum cell volumes whose
// midpoint lies inside.
inline Rational grid_measure(const BandSet& s) {
  if (s.is_empty()) return Rational(0);
  int dim = s.dim();
  std::vector<std::vector<Rational>> cuts(static_cast<size_t>(dim));
  for (const RationalBox& b : s.boxes())
    for (int ax = 0; ax < dim; ++ax) {
      cuts[static_cast<size_t>(ax)].push_back(b.lo(ax));
      cuts[static_cast<size_t>(ax)].push_back(b.hi(ax));
    }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  Rational total(0);
  std::vector<size_t> idx(static_cast<size_t>(dim), 0);
  while (true) {
    std::vector<Rational> mid(static_cast<size_t>(dim));
    Rational vol(1);
    for (size_t ax = 0; ax < static_cast<size_t>(dim); ++ax) {
      const Rational& lo = cuts[ax][idx[ax]];
      const Rational& hi = cuts[ax][idx[ax] + 1];
      mid[ax] = (lo + hi) / 2;
      vol *= hi - lo;
    }
    if (s.contains(mid)) total += vol;
    size_t ax = static_cast<size_t>(dim);
    bool done = true;
    while (ax > 0) {
      --ax;
      if (++idx[ax] + 1 < cuts[ax].size()) {
        done = false;
        break;
      }
      idx[ax] = 0;
    }
    if (done) break;
  }
  return total;
}

}  // namespace oracles
