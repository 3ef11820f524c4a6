#include "codec/refinement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace codec {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Greedily moves pool vertices into the two seed classes, alternating c1, c2,
// until both reach `target` or the pool runs dry. `maximize` selects the most
// connected vertex (densification) or the least connected one
// (sparsification); connection is measured against the current contents of
// the receiving class. Ties break on the smaller vertex id. Consumed
// vertices are erased from the pool.
void fill_alternating(const Graph& g, VertexClass& c1, VertexClass& c2, VertexClass& pool,
                      std::size_t target, bool maximize) {
  std::sort(pool.begin(), pool.end());
  std::vector<std::uint8_t> consumed(pool.size(), 0);

  auto connection_to = [&](const VertexClass& members) {
    std::vector<double> conn(pool.size(), 0.0);
    for (std::size_t p = 0; p < pool.size(); ++p) {
      const auto row = g.row(pool[p]);
      for (Vertex v : members) conn[p] += row[v];
    }
    return conn;
  };
  std::vector<double> conn1 = connection_to(c1);
  std::vector<double> conn2 = connection_to(c2);

  auto take_best = [&](VertexClass& cls, std::vector<double>& conn) {
    std::size_t best = pool.size();
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (consumed[p]) continue;
      if (best == pool.size() || (maximize ? conn[p] > conn[best] : conn[p] < conn[best])) best = p;
    }
    if (best == pool.size()) return false;
    consumed[best] = 1;
    const Vertex v = pool[best];
    cls.push_back(v);
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (!consumed[p]) conn[p] += g.weight(pool[p], v);
    }
    return true;
  };

  while (c1.size() < target && take_best(c1, conn1)) {
  }
  while (c2.size() < target && take_best(c2, conn2)) {
  }

  VertexClass remaining;
  remaining.reserve(pool.size());
  for (std::size_t p = 0; p < pool.size(); ++p) {
    if (!consumed[p]) remaining.push_back(pool[p]);
  }
  pool = std::move(remaining);
}

}  // namespace

Partition initial_partition(const Graph& g, std::uint64_t seed) {
  require(g.order() >= 8, "initial partition needs at least 8 vertices");
  VertexClass vertices(g.order());
  std::iota(vertices.begin(), vertices.end(), Vertex{0});
  Rng rng(seed);
  rng.shuffle(vertices);

  Partition p;
  const std::size_t m = g.order() / 4;
  p.classes.assign(4, VertexClass{});
  auto it = vertices.begin();
  for (auto& cls : p.classes) {
    cls.assign(it, it + m);
    it += m;
  }
  p.c0.assign(it, vertices.end());
  return p;
}

double pair_score(const Graph& g, const VertexClass& ci, const VertexClass& cj) {
  const double cross = pair_density(g, ci, cj);
  const double din_i = internal_density(g, ci);
  const double din_j = internal_density(g, cj);
  return cross + (1.0 - std::abs(din_i - din_j));
}

UnzipResult unzip_by_indegree(const Graph& g, const VertexClass& c) {
  require(c.size() >= 2, "unzip needs at least two vertices");
  std::vector<std::pair<double, Vertex>> ranked;
  ranked.reserve(c.size());
  for (Vertex v : c) ranked.emplace_back(indegree_within(g, v, c), v);
  std::sort(ranked.begin(), ranked.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.first != rhs.first) return lhs.first > rhs.first;
    return lhs.second < rhs.second;
  });

  UnzipResult out;
  const std::size_t even = c.size() - c.size() % 2;
  for (std::size_t p = 0; p < even; ++p) {
    (p % 2 == 0 ? out.c1 : out.c2).push_back(ranked[p].second);
  }
  if (even < c.size()) out.leftover = ranked.back().second;
  return out;
}

SplitResult densification_split(const Graph& g, const VertexClass& cert, VertexClass& pool,
                                std::size_t target) {
  SplitResult out;
  if (cert.size() >= 2) {
    UnzipResult seeds = unzip_by_indegree(g, cert);
    out.c1 = std::move(seeds.c1);
    out.c2 = std::move(seeds.c2);
    if (seeds.leftover) pool.push_back(*seeds.leftover);
    // A certificate wider than the class half (e.g. a fused pair) keeps its
    // strongest hubs; the weakest flow back into the pool.
    for (auto* side : {&out.c1, &out.c2}) {
      if (side->size() > target) {
        pool.insert(pool.end(), side->begin() + target, side->end());
        side->resize(target);
      }
    }
  } else if (!cert.empty()) {
    out.c1 = cert;
  }
  fill_alternating(g, out.c1, out.c2, pool, target, /*maximize=*/true);
  return out;
}

namespace {

SplitResult sparsify(const Graph& g, const VertexClass& cert, VertexClass& pool,
                     std::size_t target, Rng& rng, bool fill_most_connected) {
  VertexClass sample = cert;
  rng.shuffle(sample);

  SplitResult out;
  const std::size_t first = (sample.size() + 1) / 2;
  for (std::size_t p = 0; p < sample.size(); ++p) {
    VertexClass& side = p < first ? out.c1 : out.c2;
    if (side.size() < target) {
      side.push_back(sample[p]);
    } else {
      pool.push_back(sample[p]);  // certificate larger than the class half
    }
  }
  fill_alternating(g, out.c1, out.c2, pool, target, fill_most_connected);
  return out;
}

}  // namespace

SplitResult sparsification_split(const Graph& g, const VertexClass& cert, VertexClass& pool,
                                 std::size_t target, Rng& rng) {
  return sparsify(g, cert, pool, target, rng, /*fill_most_connected=*/false);
}

RefineOutcome refine(const Graph& g, const Partition& p, const PairVerdicts& verdicts,
                     std::uint64_t seed, const RefineOptions& opts) {
  require(verdicts.class_count() == p.k(), "verdicts do not match the partition");
  const std::size_t k = p.k();
  const std::size_t m = p.class_size();
  const std::size_t target = m / 2;
  if (target < 2) return {p, RefineStatus::kExhausted};

  Rng rng(seed);
  std::vector<std::uint32_t> order(k);
  std::iota(order.begin(), order.end(), 1u);
  rng.shuffle(order);

  std::vector<std::uint8_t> processed(k + 1, 0);
  std::vector<VertexClass> raw;
  raw.reserve(2 * k);
  VertexClass c0_next = p.c0;

  auto unzip_into_raw = [&](const VertexClass& cls) {
    UnzipResult u = unzip_by_indegree(g, cls);
    if (u.leftover) c0_next.push_back(*u.leftover);
    raw.push_back(std::move(u.c1));
    raw.push_back(std::move(u.c2));
  };

  for (std::uint32_t id : order) {
    if (processed[id]) continue;
    processed[id] = 1;
    const VertexClass& cls = p.classes[id - 1];

    // Best-scoring unprocessed irregular partner, if any.
    std::uint32_t partner = 0;
    double best_score = -1.0;
    for (std::uint32_t j = 1; j <= k; ++j) {
      if (j == id || processed[j] || verdicts.at(id, j).is_regular) continue;
      const double score = pair_score(g, cls, p.classes[j - 1]);
      if (score > best_score) {
        best_score = score;
        partner = j;
      }
    }

    if (partner == 0) {
      unzip_into_raw(cls);
      continue;
    }
    processed[partner] = 1;

    const std::uint32_t lo = std::min(id, partner), hi = std::max(id, partner);
    const PairVerdict& verdict = verdicts.at(lo, hi);
    const VertexClass& cert_lo = verdict.cert_i;
    const VertexClass& cert_hi = verdict.cert_j;
    const bool degen_lo = cert_lo.size() <= 1;
    const bool degen_hi = cert_hi.size() <= 1;

    // Degenerate certificates fall back to the plain unzip of their class,
    // which keeps that class out of the shared complement pool.
    VertexClass pool;
    if (!degen_lo) pool.insert(pool.end(), verdict.compl_i.begin(), verdict.compl_i.end());
    if (!degen_hi) pool.insert(pool.end(), verdict.compl_j.begin(), verdict.compl_j.end());

    auto split_side = [&](const VertexClass& cert) {
      SplitResult split =
          internal_density(g, cert) >= 0.5
              ? densification_split(g, cert, pool, target)
              : sparsify(g, cert, pool, target, rng, opts.sparse_fill_most_connected);
      raw.push_back(std::move(split.c1));
      raw.push_back(std::move(split.c2));
    };

    // When the two certificates are densely connected to each other they are
    // two halves of one structure. Splitting each in place would hand every
    // child the same diluted share, so instead the fused certificate seeds
    // the picked class's children and the partner resamples from the pool.
    const bool facing = opts.pack_facing_certificates && !degen_lo && !degen_hi &&
                        pair_density(g, cert_lo, cert_hi) >= 0.5;
    if (facing) {
      VertexClass fused = cert_lo;
      fused.insert(fused.end(), cert_hi.begin(), cert_hi.end());
      SplitResult packed = densification_split(g, fused, pool, target);
      raw.push_back(std::move(packed.c1));
      raw.push_back(std::move(packed.c2));

      // The leftover vertices become the other two children, sliced as
      // consecutive blocks of the indegree order so that whatever residual
      // structure they share separates instead of being dealt back evenly.
      VertexClass rest;
      std::swap(rest, pool);
      std::vector<std::pair<double, Vertex>> ranked;
      ranked.reserve(rest.size());
      for (Vertex v : rest) ranked.emplace_back(indegree_within(g, v, rest), v);
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      VertexClass r1, r2;
      for (const auto& [degree, v] : ranked) {
        if (r1.size() < target) r1.push_back(v);
        else if (r2.size() < target) r2.push_back(v);
        else pool.push_back(v);
      }
      raw.push_back(std::move(r1));
      raw.push_back(std::move(r2));
    } else {
      // The picked class is processed first, its partner second.
      for (std::uint32_t side : {id, partner}) {
        const bool degen = side == lo ? degen_lo : degen_hi;
        const VertexClass& cert = side == lo ? cert_lo : cert_hi;
        if (degen) {
          unzip_into_raw(p.classes[side - 1]);
        } else {
          split_side(cert);
        }
      }
    }
    c0_next.insert(c0_next.end(), pool.begin(), pool.end());
  }

  // Uniform cardinality: trim every class to the common size, excess joins C0.
  std::size_t assigned = 0;
  std::size_t smallest = raw.empty() ? 0 : raw.front().size();
  for (const auto& cls : raw) {
    assigned += cls.size();
    smallest = std::min(smallest, cls.size());
  }
  const std::size_t uniform = std::min(assigned / raw.size(), smallest);
  if (uniform < 2) return {p, RefineStatus::kExhausted};
  for (auto& cls : raw) {
    c0_next.insert(c0_next.end(), cls.begin() + uniform, cls.end());
    cls.resize(uniform);
  }

  RefineOutcome out;
  out.next.classes = std::move(raw);
  out.next.c0 = std::move(c0_next);
  out.next.eps = p.eps;
  out.next.generation = p.generation + 1;
  out.status = RefineStatus::kRegular;

  const double c0_bound = p.eps * static_cast<double>(g.order());
  VertexClass& c0 = out.next.c0;
  if (static_cast<double>(c0.size()) > c0_bound) {
    const std::size_t k2 = out.next.k();
    if (opts.c0_policy == C0OverflowPolicy::kRedistributeWhenAble && c0.size() >= k2) {
      rng.shuffle(c0);
      const std::size_t share = c0.size() / k2;
      std::size_t next_vertex = 0;
      for (auto& cls : out.next.classes) {
        for (std::size_t q = 0; q < share; ++q) cls.push_back(c0[next_vertex++]);
      }
      c0.erase(c0.begin(), c0.begin() + next_vertex);
    } else {
      out.status = RefineStatus::kIrregular;
    }
  }
  return out;
}

}  // namespace codec
