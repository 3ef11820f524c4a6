#include "codec/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace codec {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

ContingencyCounts count_pairs(const LabelVector& x, const LabelVector& y) {
  require(x.size() == y.size(), "labelings must have equal length");
  ContingencyCounts counts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool same_x = x[i] == x[j];
      const bool same_y = y[i] == y[j];
      if (same_x && same_y) ++counts.a;
      if (!same_x && !same_y) ++counts.b;
    }
  }
  counts.total_pairs = static_cast<std::uint64_t>(x.size()) * (x.size() - 1) / 2;
  return counts;
}

double l2_dist(const Graph& a, const Graph& b) {
  require(a.order() == b.order(), "graphs must have equal order");
  const auto& wa = a.data();
  const auto& wb = b.data();
  double sum = 0.0;
  for (std::size_t p = 0; p < wa.size(); ++p) {
    const double d = wa[p] - wb[p];
    sum += d * d;
  }
  return std::sqrt(sum) / static_cast<double>(a.order());
}

double l1_dist(const Graph& a, const Graph& b) {
  require(a.order() == b.order(), "graphs must have equal order");
  const auto& wa = a.data();
  const auto& wb = b.data();
  double sum = 0.0;
  for (std::size_t p = 0; p < wa.size(); ++p) sum += std::abs(wa[p] - wb[p]);
  return sum / (static_cast<double>(a.order()) * static_cast<double>(a.order()));
}

LabelVector kvs_predict(const Graph& m, const LabelVector& labels, std::uint32_t k) {
  const std::size_t n = m.order();
  require(labels.size() == n, "label vector must match the graph order");
  require(k % 2 == 1, "k must be odd");
  require(k + 1 <= n, "k must be at most n - 1");

  LabelVector predicted(n, 0);
  std::vector<Vertex> columns(n - 1);
  for (Vertex i = 0; i < n; ++i) {
    const auto row = m.row(i);
    std::size_t w = 0;
    for (Vertex j = 0; j < n; ++j) {
      if (j != i) columns[w++] = j;
    }
    // Top-k by value, smaller column index on ties.
    std::partial_sort(columns.begin(), columns.begin() + k, columns.end(),
                      [&](Vertex lhs, Vertex rhs) {
                        if (row[lhs] != row[rhs]) return row[lhs] > row[rhs];
                        return lhs < rhs;
                      });

    std::map<std::uint32_t, std::uint32_t> votes;
    for (std::uint32_t p = 0; p < k; ++p) ++votes[labels[columns[p]]];
    std::uint32_t best_count = 0;
    for (const auto& [label, count] : votes) best_count = std::max(best_count, count);
    // A vote tie goes to the label of the highest-valued neighbour.
    for (std::uint32_t p = 0; p < k; ++p) {
      const std::uint32_t label = labels[columns[p]];
      if (votes[label] == best_count) {
        predicted[i] = label;
        break;
      }
    }
  }
  return predicted;
}

double ari(const LabelVector& truth, const LabelVector& predicted) {
  require(truth.size() == predicted.size(), "labelings must have equal length");
  require(truth.size() >= 2, "ARI needs at least two elements");

  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  std::uint32_t max_truth = 0, max_pred = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    max_truth = std::max(max_truth, truth[i]);
    max_pred = std::max(max_pred, predicted[i]);
  }

  if (max_truth <= 128 && max_pred <= 128) {
    // Dense contingency table on reusable scratch; the map fallback below is
    // only needed for arbitrary label values.
    thread_local std::vector<std::uint64_t> rows, cols, cells;
    const std::size_t rt = max_truth + 1, rp = max_pred + 1;
    rows.assign(rt, 0);
    cols.assign(rp, 0);
    cells.assign(rt * rp, 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      ++rows[truth[i]];
      ++cols[predicted[i]];
      ++cells[std::size_t(truth[i]) * rp + predicted[i]];
    }
    for (std::uint64_t count : cells) sum_cells += choose2(static_cast<double>(count));
    for (std::uint64_t count : rows) sum_rows += choose2(static_cast<double>(count));
    for (std::uint64_t count : cols) sum_cols += choose2(static_cast<double>(count));
  } else {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> cells;
    std::map<std::uint32_t, std::uint64_t> rows, cols;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      ++cells[{truth[i], predicted[i]}];
      ++rows[truth[i]];
      ++cols[predicted[i]];
    }
    for (const auto& [key, count] : cells) sum_cells += choose2(static_cast<double>(count));
    for (const auto& [label, count] : rows) sum_rows += choose2(static_cast<double>(count));
    for (const auto& [label, count] : cols) sum_cols += choose2(static_cast<double>(count));
  }

  const double all_pairs = choose2(static_cast<double>(truth.size()));
  const double expected = sum_rows * sum_cols / all_pairs;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected) return 1.0;  // both labelings trivial
  return (sum_cells - expected) / (maximum - expected);
}

KvsResult kvs_best_ari(const Graph& m, const LabelVector& labels) {
  require(m.order() > 9, "KVS selection needs more than 9 vertices");
  KvsResult best{-2.0, 0};
  for (std::uint32_t k : {5u, 7u, 9u}) {
    const double score = ari(labels, kvs_predict(m, labels, k));
    if (score > best.ari) best = {score, k};
  }
  return best;
}

}  // namespace codec
