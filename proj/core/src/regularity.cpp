#include "codec/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace codec {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Bipartite degrees of the members of `side` towards `other`.
std::vector<double> bipartite_degrees(const Graph& g, const VertexClass& side,
                                      const VertexClass& other) {
  std::vector<double> degrees(side.size(), 0.0);
  for (std::size_t i = 0; i < side.size(); ++i) {
    const auto row = g.row(side[i]);
    double sum = 0.0;
    for (Vertex v : other) sum += row[v];
    degrees[i] = sum;
  }
  return degrees;
}

// Sorts positions so that the keyed score is descending, vertex id ascending
// on ties, and returns the vertices in that order.
VertexClass by_descending_score(const VertexClass& members, const std::vector<double>& score,
                                const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> order(positions);
  std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    if (score[lhs] != score[rhs]) return score[lhs] > score[rhs];
    return members[lhs] < members[rhs];
  });
  VertexClass out;
  out.reserve(order.size());
  for (std::size_t p : order) out.push_back(members[p]);
  return out;
}

VertexClass complement_of(const VertexClass& whole, const VertexClass& part) {
  std::vector<std::uint8_t> taken(whole.size(), 0);
  VertexClass out;
  out.reserve(whole.size() - part.size());
  for (Vertex v : whole) {
    if (std::find(part.begin(), part.end(), v) == part.end()) out.push_back(v);
  }
  return out;
}

struct CertPair {
  VertexClass cert_i, cert_j;
};

// Condition 2 certificates: the deviating vertices of the dominant direction
// on the B side, paired with the union of their neighbourhoods in A. The A
// side is kept at least ceil(eps^4/16 * m) strong, padding with the most
// connected remaining vertices when the neighbourhood union falls short.
CertPair condition2_certificates(const Graph& g, const VertexClass& ci, const VertexClass& cj,
                                 const std::vector<double>& deg_j, double avg_degree,
                                 double deviation_cutoff, double eps) {
  const std::size_t m = ci.size();
  std::vector<std::size_t> above, below;
  for (std::size_t p = 0; p < cj.size(); ++p) {
    if (deg_j[p] - avg_degree >= deviation_cutoff) above.push_back(p);
    else if (avg_degree - deg_j[p] >= deviation_cutoff) below.push_back(p);
  }
  const auto& chosen = above.size() >= below.size() ? above : below;

  std::vector<double> magnitude(cj.size(), 0.0);
  for (std::size_t p : chosen) magnitude[p] = std::abs(deg_j[p] - avg_degree);
  VertexClass cert_j = by_descending_score(cj, magnitude, chosen);
  if (cert_j.size() > m - 1) cert_j.resize(m - 1);

  std::vector<double> connection(ci.size(), 0.0);
  for (std::size_t p = 0; p < ci.size(); ++p) {
    const auto row = g.row(ci[p]);
    for (Vertex y : cert_j) connection[p] += row[y];
  }
  std::vector<std::size_t> connected, all_positions(ci.size());
  for (std::size_t p = 0; p < ci.size(); ++p) {
    all_positions[p] = p;
    if (connection[p] > 0.0) connected.push_back(p);
  }
  VertexClass ordered = by_descending_score(ci, connection, all_positions);
  const auto min_size = static_cast<std::size_t>(
      std::max(1.0, std::ceil(std::pow(eps, 4) / 16.0 * static_cast<double>(m))));
  std::size_t take = std::clamp(connected.size(), min_size, m - 1);
  VertexClass cert_i(ordered.begin(), ordered.begin() + take);
  return {std::move(cert_i), std::move(cert_j)};
}

}  // namespace

double average_degree(const Graph& g, const VertexClass& a, const VertexClass& b) {
  require(a.size() == b.size(), "classes must have equal cardinality");
  require(!a.empty(), "classes must be non-empty");
  double cross = 0.0;
  for (Vertex u : a) {
    const auto row = g.row(u);
    for (Vertex v : b) cross += row[v];
  }
  return cross / static_cast<double>(a.size());
}

double neighborhood_deviation(const Graph& g, Vertex y1, Vertex y2, const VertexClass& a,
                              const PairStats& stats) {
  require(y1 != y2, "neighbourhood deviation needs two distinct vertices");
  require(stats.class_size > 0, "class size must be positive");
  double shared = 0.0;
  const auto row1 = g.row(y1);
  const auto row2 = g.row(y2);
  for (Vertex x : a) shared += row1[x] * row2[x];
  return shared - stats.avg_degree * stats.avg_degree / static_cast<double>(stats.class_size);
}

double set_deviation(const Graph& g, const VertexClass& y_set, const VertexClass& a,
                     const PairStats& stats) {
  require(y_set.size() >= 2, "set deviation needs at least two vertices");
  double total = 0.0;
  for (std::size_t p = 0; p < y_set.size(); ++p) {
    for (std::size_t q = p + 1; q < y_set.size(); ++q) {
      total += 2.0 * neighborhood_deviation(g, y_set[p], y_set[q], a, stats);
    }
  }
  return total / (static_cast<double>(y_set.size()) * static_cast<double>(y_set.size()));
}

PairVerdict check_pair(const Graph& g, const VertexClass& ci, const VertexClass& cj, double eps,
                       const RegularityOptions& opts) {
  require(ci.size() == cj.size(), "classes must have equal cardinality");
  require(ci.size() >= 2, "classes must contain at least two vertices");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");

  const std::size_t m = ci.size();
  PairVerdict verdict;
  verdict.density = pair_density(g, ci, cj);
  const double avg_degree = static_cast<double>(m) * verdict.density;
  const double eps4 = std::pow(eps, 4);
  const double scale = opts.scale == DeviationScale::kGraphOrder
                           ? static_cast<double>(g.order())
                           : static_cast<double>(m);

  // Condition 1: the pair is too sparse to carry deviating structure.
  if (avg_degree < std::pow(eps, 3) * static_cast<double>(m)) {
    verdict.is_regular = true;
    verdict.condition = RegularityCondition::kCondition1;
    return verdict;
  }

  const std::vector<double> deg_j = bipartite_degrees(g, cj, ci);
  const double deviation_cutoff = eps4 * scale;

  // Condition 2: more than eps^4/8 * scale vertices deviate from the average
  // degree by at least eps^4 * scale.
  auto degree_census = [&]() {
    std::size_t deviating = 0;
    for (double d : deg_j) {
      if (std::abs(d - avg_degree) >= deviation_cutoff) ++deviating;
    }
    if (static_cast<double>(deviating) <= eps4 / 8.0 * scale) return false;
    verdict.is_regular = false;
    verdict.condition = RegularityCondition::kCondition2;
    auto certs = condition2_certificates(g, ci, cj, deg_j, avg_degree, deviation_cutoff, eps);
    verdict.cert_i = std::move(certs.cert_i);
    verdict.cert_j = std::move(certs.cert_j);
    return true;
  };

  // Condition 3: pivot scan. Among vertices whose degree sits close to the
  // average, look for one whose neighbourhood deviation against enough other
  // vertices exceeds 2 * eps^4 * scale. First qualifying pivot in ascending
  // vertex order wins, which keeps the verdict deterministic.
  auto pivot_scan = [&]() {
    const PairStats stats{avg_degree, m};
    std::vector<std::size_t> scan_order(cj.size());
    for (std::size_t p = 0; p < cj.size(); ++p) scan_order[p] = p;
    std::sort(scan_order.begin(), scan_order.end(),
              [&](std::size_t lhs, std::size_t rhs) { return cj[lhs] < cj[rhs]; });

    const double sigma_cutoff = 2.0 * eps4 * scale;
    const double b_min = eps4 / 4.0 * scale;
    for (std::size_t p : scan_order) {
      if (std::abs(deg_j[p] - avg_degree) >= deviation_cutoff) continue;
      const Vertex y0 = cj[p];

      std::vector<std::size_t> b_pivot;
      std::vector<double> sigma(cj.size(), 0.0);
      for (std::size_t q = 0; q < cj.size(); ++q) {
        if (q == p) continue;
        sigma[q] = neighborhood_deviation(g, y0, cj[q], ci, stats);
        if (sigma[q] >= sigma_cutoff) b_pivot.push_back(q);
      }
      if (static_cast<double>(b_pivot.size()) < b_min) continue;

      // A-side certificate: the neighbourhood of the pivot.
      std::vector<double> weight_to_pivot(ci.size(), 0.0);
      std::vector<std::size_t> neighbours;
      const auto row0 = g.row(y0);
      for (std::size_t q = 0; q < ci.size(); ++q) {
        weight_to_pivot[q] = row0[ci[q]];
        if (weight_to_pivot[q] > 0.0) neighbours.push_back(q);
      }
      if (neighbours.empty()) continue;

      verdict.is_regular = false;
      verdict.condition = RegularityCondition::kCondition3;
      verdict.cert_j = by_descending_score(cj, sigma, b_pivot);
      if (verdict.cert_j.size() > m - 1) verdict.cert_j.resize(m - 1);
      verdict.cert_i = by_descending_score(ci, weight_to_pivot, neighbours);
      if (verdict.cert_i.size() > m - 1) verdict.cert_i.resize(m - 1);
      return true;
    }
    return false;
  };

  const bool irregular = opts.order == ConditionOrder::kPivotFirst
                             ? (pivot_scan() || degree_census())
                             : (degree_census() || pivot_scan());
  if (irregular) {
    verdict.compl_i = complement_of(ci, verdict.cert_i);
    verdict.compl_j = complement_of(cj, verdict.cert_j);
  } else {
    verdict.is_regular = true;
    verdict.condition = RegularityCondition::kNone;
  }
  return verdict;
}

double sze_index(const Graph& g, const Partition& p) {
  require(p.k() >= 2, "partition index needs at least two classes");
  double sum = 0.0;
  for (std::size_t s = 0; s < p.k(); ++s) {
    for (std::size_t t = s + 1; t < p.k(); ++t) {
      const double d = pair_density(g, p.classes[s], p.classes[t]);
      sum += d * d;
    }
  }
  const double k = static_cast<double>(p.k());
  return sum / (k * k);
}

std::size_t PairVerdicts::index(std::uint32_t s, std::uint32_t t) const {
  if (s > t) std::swap(s, t);
  if (s < 1 || t > k_ || s == t) throw std::invalid_argument("class pair out of range");
  // Row-major upper triangle over 1-based ids.
  const std::size_t row = s - 1, col = t - 1;
  return row * k_ - row * (row + 1) / 2 + (col - row - 1);
}

IrregularityReport count_irregular(const Graph& g, const Partition& p, double eps,
                                   const RegularityOptions& opts) {
  IrregularityReport report{0, PairVerdicts(p.k())};
  for (std::uint32_t s = 1; s <= p.k(); ++s) {
    for (std::uint32_t t = s + 1; t <= p.k(); ++t) {
      PairVerdict verdict = check_pair(g, p.classes[s - 1], p.classes[t - 1], eps, opts);
      if (!verdict.is_regular) ++report.count;
      report.verdicts.at(s, t) = std::move(verdict);
    }
  }
  return report;
}

}  // namespace codec
