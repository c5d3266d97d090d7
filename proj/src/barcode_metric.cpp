#include "topstat/barcode_metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "topstat/assignment.hpp"

namespace topstat {

namespace {

enum class EndpointClass { finite, infinite_death, infinite_birth, doubly_infinite };

EndpointClass classify(const PersistenceInterval& j) {
  bool ib = j.birth().is_neg_infinity();
  bool id = j.death().is_pos_infinity();
  if (ib && id) return EndpointClass::doubly_infinite;
  if (id) return EndpointClass::infinite_death;
  if (ib) return EndpointClass::infinite_birth;
  return EndpointClass::finite;
}

struct Indexed {
  int index;  // position in the canonical interval list
  PersistenceInterval interval;
};

/// Pair two equally sized lists of single-infinite-endpoint intervals by
/// their sorted finite endpoints (optimal for costs |e - e'|); appends the
/// pairing. Count mismatch makes the distance infinite: the surplus
/// intervals stay unmatched at infinite length.
void match_infinite_class(std::vector<Indexed> left, std::vector<Indexed> right,
                          bool by_birth, BarcodeMatching& out) {
  auto key = [by_birth](const Indexed& x) {
    return by_birth ? x.interval.birth().value() : x.interval.death().value();
  };
  auto cmp = [&](const Indexed& p, const Indexed& q) { return key(p) < key(q); };
  std::sort(left.begin(), left.end(), cmp);
  std::sort(right.begin(), right.end(), cmp);

  std::size_t paired = std::min(left.size(), right.size());
  for (std::size_t i = 0; i < paired; ++i)
    out.matched.emplace_back(left[i].index, right[i].index);
  for (std::size_t i = paired; i < left.size(); ++i)
    out.unmatched_left.push_back(left[i].index);
  for (std::size_t i = paired; i < right.size(); ++i)
    out.unmatched_right.push_back(right[i].index);
}

void match_finite_class(const std::vector<Indexed>& left,
                        const std::vector<Indexed>& right,
                        BarcodeMatching& out) {
  int m = static_cast<int>(left.size());
  int k = static_cast<int>(right.size());
  if (m == 0 && k == 0) return;

  // Pad to an (m+k) square: extra columns delete a left interval at the
  // price of its length, extra rows delete a right one; the corner is free.
  int n = m + k;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < m; ++i) {
    double len = left[i].interval.length().value();
    for (int j = 0; j < k; ++j)
      cost[i][j] =
          symmetric_difference(left[i].interval, right[j].interval).value();
    for (int j = k; j < n; ++j) cost[i][j] = len;
  }
  for (int i = m; i < n; ++i)
    for (int j = 0; j < k; ++j) cost[i][j] = right[j].interval.length().value();

  AssignmentResult res = solve_assignment(cost);
  for (int i = 0; i < m; ++i) {
    int j = res.row_to_col[i];
    if (j < k)
      out.matched.emplace_back(left[i].index, right[j].index);
    else
      out.unmatched_left.push_back(left[i].index);
  }
  for (int i = m; i < n; ++i) {
    int j = res.row_to_col[i];
    if (j < k) out.unmatched_right.push_back(right[j].index);
  }
}

/// Error-free running sum: terms are folded into a list of non-overlapping
/// components whose exact sum equals the exact sum of the inputs, then the
/// components are collapsed smallest first. Exact cancellation therefore
/// yields exactly zero, and the result is a deterministic function of the
/// sorted term sequence.
double exact_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  std::vector<double> parts;
  std::vector<double> next;
  for (double x : terms) {
    next.clear();
    for (double c : parts) {
      double s = x + c;
      double shifted = s - x;
      double err = (x - (s - shifted)) + (c - shifted);
      if (err != 0.0) next.push_back(err);
      x = s;
    }
    next.push_back(x);
    parts.swap(next);
  }
  double total = 0.0;
  for (double c : parts) total += c;
  return total;
}

/// Total cost of a matching, reported canonically. The finite part uses the
/// identity |A δ B| = |A| + |B| - 2 |A ∩ B|, which makes the total a function
/// of three value multisets: every finite interval length on both sides,
/// the matched overlaps, and the endpoint shifts of matched essential pairs.
/// Mathematically tied optimal matchings (say, a short interval nested inside
/// two longer partners, where either pairing costs the same) share those
/// multisets even when they disagree on the pairing, so the optimizer and the
/// exhaustive oracle report bit-for-bit equal costs. Terms are totalled with
/// error-free accumulation, so a barcode sits at distance exactly zero from
/// itself.
ExtendedReal matching_total(const Barcode& a, const Barcode& b,
                            const BarcodeMatching& m) {
  std::vector<double> terms;
  bool infinite = false;

  for (const Barcode* bc : {&a, &b})
    for (const auto& iv : bc->intervals())
      if (classify(iv) == EndpointClass::finite)
        terms.push_back(iv.death().value() - iv.birth().value());

  for (auto [l, r] : m.matched) {
    const PersistenceInterval& x = a.intervals()[l];
    const PersistenceInterval& y = b.intervals()[r];
    EndpointClass cx = classify(x);
    if (cx != classify(y)) {
      infinite = true;  // classes never mix at finite cost
    } else if (cx == EndpointClass::finite) {
      double overlap = std::min(x.death().value(), y.death().value()) -
                       std::max(x.birth().value(), y.birth().value());
      if (overlap > 0.0) terms.push_back(-2.0 * overlap);
    } else if (cx == EndpointClass::infinite_death) {
      terms.push_back(std::fabs(x.birth().value() - y.birth().value()));
    } else if (cx == EndpointClass::infinite_birth) {
      terms.push_back(std::fabs(x.death().value() - y.death().value()));
    }  // doubly infinite pairs coincide and cost nothing
  }

  for (int l : m.unmatched_left)
    if (classify(a.intervals()[l]) != EndpointClass::finite) infinite = true;
  for (int r : m.unmatched_right)
    if (classify(b.intervals()[r]) != EndpointClass::finite) infinite = true;

  if (infinite) return ExtendedReal::infinity();
  return ExtendedReal(exact_sum(std::move(terms)));
}

}  // namespace

BarcodeMatching barcode_distance(const Barcode& a, const Barcode& b) {
  BarcodeMatching out;

  std::vector<int> dims = a.dimensions();
  for (int d : b.dimensions())
    if (std::find(dims.begin(), dims.end(), d) == dims.end())
      dims.push_back(d);
  std::sort(dims.begin(), dims.end());

  for (int d : dims) {
    std::vector<Indexed> left[4], right[4];
    for (int i = 0; i < static_cast<int>(a.intervals().size()); ++i) {
      const auto& j = a.intervals()[i];
      if (j.dim() == d) left[static_cast<int>(classify(j))].push_back({i, j});
    }
    for (int i = 0; i < static_cast<int>(b.intervals().size()); ++i) {
      const auto& j = b.intervals()[i];
      if (j.dim() == d) right[static_cast<int>(classify(j))].push_back({i, j});
    }

    match_finite_class(left[static_cast<int>(EndpointClass::finite)],
                       right[static_cast<int>(EndpointClass::finite)], out);
    match_infinite_class(
        left[static_cast<int>(EndpointClass::infinite_death)],
        right[static_cast<int>(EndpointClass::infinite_death)],
        /*by_birth=*/true, out);
    match_infinite_class(
        left[static_cast<int>(EndpointClass::infinite_birth)],
        right[static_cast<int>(EndpointClass::infinite_birth)],
        /*by_birth=*/false, out);

    // Doubly infinite intervals cost nothing when paired, everything when not.
    auto& dl = left[static_cast<int>(EndpointClass::doubly_infinite)];
    auto& dr = right[static_cast<int>(EndpointClass::doubly_infinite)];
    std::size_t paired = std::min(dl.size(), dr.size());
    for (std::size_t i = 0; i < paired; ++i)
      out.matched.emplace_back(dl[i].index, dr[i].index);
    for (std::size_t i = paired; i < dl.size(); ++i)
      out.unmatched_left.push_back(dl[i].index);
    for (std::size_t i = paired; i < dr.size(); ++i)
      out.unmatched_right.push_back(dr[i].index);
  }

  std::sort(out.matched.begin(), out.matched.end());
  std::sort(out.unmatched_left.begin(), out.unmatched_left.end());
  std::sort(out.unmatched_right.begin(), out.unmatched_right.end());
  out.cost = matching_total(a, b, out);
  return out;
}

namespace {

/// Cost of one complete per-dimension assignment (-1 marks an unmatched left
/// interval). Only used to pick the argmin; the chosen matching is reported
/// through matching_total like everything else.
ExtendedReal candidate_cost(const std::vector<Indexed>& left,
                            const std::vector<Indexed>& right,
                            const std::vector<int>& assign) {
  ExtendedReal total = 0.0;
  std::vector<bool> used(right.size(), false);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (assign[i] < 0) continue;
    used[assign[i]] = true;
    total = total +
            symmetric_difference(left[i].interval, right[assign[i]].interval);
  }
  for (std::size_t i = 0; i < left.size(); ++i)
    if (assign[i] < 0) total = total + left[i].interval.length();
  for (std::size_t j = 0; j < right.size(); ++j)
    if (!used[j]) total = total + right[j].interval.length();
  return total;
}

void enumerate_assignments(const std::vector<Indexed>& left,
                           const std::vector<Indexed>& right, std::size_t i,
                           unsigned used, std::vector<int>& assign,
                           ExtendedReal& best, std::vector<int>& best_assign) {
  if (i == left.size()) {
    ExtendedReal c = candidate_cost(left, right, assign);
    if (c < best) {
      best = c;
      best_assign = assign;
    }
    return;
  }
  assign[i] = -1;
  enumerate_assignments(left, right, i + 1, used, assign, best, best_assign);
  for (std::size_t j = 0; j < right.size(); ++j) {
    if (used & (1u << j)) continue;
    assign[i] = static_cast<int>(j);
    enumerate_assignments(left, right, i + 1, used | (1u << j), assign, best,
                          best_assign);
  }
  assign[i] = -1;
}

}  // namespace

ExtendedReal brute_force_barcode_distance(const Barcode& a, const Barcode& b) {
  std::vector<int> dims = a.dimensions();
  for (int d : b.dimensions())
    if (std::find(dims.begin(), dims.end(), d) == dims.end())
      dims.push_back(d);
  std::sort(dims.begin(), dims.end());

  BarcodeMatching m;
  for (int d : dims) {
    std::vector<Indexed> left, right;
    for (int i = 0; i < static_cast<int>(a.intervals().size()); ++i)
      if (a.intervals()[i].dim() == d) left.push_back({i, a.intervals()[i]});
    for (int i = 0; i < static_cast<int>(b.intervals().size()); ++i)
      if (b.intervals()[i].dim() == d) right.push_back({i, b.intervals()[i]});
    if (left.size() > 6 || right.size() > 6)
      throw std::invalid_argument(
          "brute_force_barcode_distance: more than 6 intervals in a dimension");

    // Seed with the all-unmatched assignment so infinite-cost optima still
    // leave a well-defined matching behind.
    std::vector<int> assign(left.size(), -1);
    std::vector<int> best_assign = assign;
    ExtendedReal best = candidate_cost(left, right, assign);
    enumerate_assignments(left, right, 0, 0u, assign, best, best_assign);

    std::vector<bool> used(right.size(), false);
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (best_assign[i] >= 0) {
        used[best_assign[i]] = true;
        m.matched.emplace_back(left[i].index, right[best_assign[i]].index);
      } else {
        m.unmatched_left.push_back(left[i].index);
      }
    }
    for (std::size_t j = 0; j < right.size(); ++j)
      if (!used[j]) m.unmatched_right.push_back(right[j].index);
  }

  std::sort(m.matched.begin(), m.matched.end());
  std::sort(m.unmatched_left.begin(), m.unmatched_left.end());
  std::sort(m.unmatched_right.begin(), m.unmatched_right.end());
  return matching_total(a, b, m);
}

}  // namespace topstat
