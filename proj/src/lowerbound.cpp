#include "mmlp/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "mmlp/error.hpp"
#include "mmlp/evaluation.hpp"
#include "mmlp/hypergraph.hpp"
#include "mmlp/rng.hpp"
#include "mmlp/view.hpp"

namespace mmlp {

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b) {
  std::size_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw CapacityExceeded("size overflow");
  return out;
}

std::size_t checked_add(std::size_t a, std::size_t b) {
  std::size_t out;
  if (__builtin_add_overflow(a, b, &out)) throw CapacityExceeded("size overflow");
  return out;
}

std::size_t checked_pow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

void require_positive(int value, const char* name) {
  if (value < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
}

}  // namespace

// ---------------------------------------------------------------- hypertree

std::size_t hypertree_level_size(int d, int D, int level) {
  require_positive(d, "d");
  require_positive(D, "D");
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  const auto dD = checked_mul(static_cast<std::size_t>(d), static_cast<std::size_t>(D));
  if (level % 2 == 0) return checked_pow(dD, level / 2);
  return checked_mul(checked_pow(dD, (level - 1) / 2), static_cast<std::size_t>(d));
}

std::vector<std::size_t> Hypertree::level_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(height) + 1, 0);
  for (int l : level) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

std::vector<std::size_t> Hypertree::nodes_at(int l) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < level.size(); ++v) {
    if (level[v] == l) out.push_back(v);
  }
  return out;
}

Hypertree build_hypertree(int d, int D, int height, std::size_t node_cap) {
  require_positive(d, "d");
  require_positive(D, "D");
  if (height < 0) throw std::invalid_argument("height must be >= 0");
  std::size_t total = 0;
  for (int l = 0; l <= height; ++l) total = checked_add(total, hypertree_level_size(d, D, l));
  if (total > node_cap) {
    throw CapacityExceeded("hypertree has " + std::to_string(total) + " nodes, cap is " +
                           std::to_string(node_cap));
  }

  Hypertree tree;
  tree.d = d;
  tree.D = D;
  tree.height = height;
  tree.level.reserve(total);
  tree.level.push_back(0);
  std::size_t level_begin = 0;
  for (int h = 1; h <= height; ++h) {
    const std::size_t level_end = tree.level.size();
    const bool even_parent = (h - 1) % 2 == 0;
    const int fanout = even_parent ? d : D;
    for (std::size_t v = level_begin; v < level_end; ++v) {
      Hypertree::Edge edge{even_parent ? Hypertree::EdgeType::I : Hypertree::EdgeType::II, v, {}};
      for (int c = 0; c < fanout; ++c) {
        edge.children.push_back(tree.level.size());
        tree.level.push_back(h);
      }
      tree.edges.push_back(std::move(edge));
    }
    level_begin = level_end;
  }
  return tree;
}

// ---------------------------------------------------------------- template

std::vector<std::vector<std::size_t>> BipartiteTemplate::incident_edges() const {
  std::vector<std::vector<std::size_t>> out(num_vertices());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[edges[e].first].push_back(e);
    out[edges[e].second].push_back(e);
  }
  return out;
}

std::optional<std::size_t> girth(std::size_t num_vertices,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(num_vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].push_back({e, edges[e].second});
    adj[edges[e].second].push_back({e, edges[e].first});
  }
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::size_t best = kNone;
  std::vector<std::size_t> dist(num_vertices), via(num_vertices);
  for (std::size_t s = 0; s < num_vertices; ++s) {
    std::fill(dist.begin(), dist.end(), kNone);
    dist[s] = 0;
    via[s] = kNone;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      if (best != kNone && 2 * dist[v] + 1 >= best) break;
      for (const auto& [e, w] : adj[v]) {
        if (e == via[v]) continue;
        if (dist[w] == kNone) {
          dist[w] = dist[v] + 1;
          via[w] = e;
          queue.push_back(w);
        } else {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kNone) return std::nullopt;
  return best;
}

std::size_t bipartite_moore_bound(std::size_t degree, std::size_t min_girth) {
  std::size_t total = 0, term = 1;
  for (std::size_t t = 0; t < min_girth / 2; ++t) {
    if (__builtin_add_overflow(total, term, &total)) return std::numeric_limits<std::size_t>::max();
    if (__builtin_mul_overflow(term, degree > 0 ? degree - 1 : 0, &term)) {
      return std::numeric_limits<std::size_t>::max();
    }
  }
  return total;
}

namespace {

/// One attempt: `degree` greedy matchings, each retried a bounded number of
/// times. Returns false when some matching cannot be completed.
bool try_superpose_matchings(std::size_t degree, std::size_t min_girth, std::size_t n, Rng& rng,
                             std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  constexpr int kMatchingRetries = 64;
  const std::size_t depth = std::max<std::size_t>(min_girth, 4) - 2;
  std::vector<std::vector<std::size_t>> adj(2 * n);
  std::vector<std::size_t> dist(2 * n);
  constexpr auto kFar = std::numeric_limits<std::size_t>::max();

  for (std::size_t round = 0; round < degree; ++round) {
    bool matched = false;
    for (int attempt = 0; attempt < kMatchingRetries && !matched; ++attempt) {
      std::vector<std::size_t> lefts(n);
      for (std::size_t a = 0; a < n; ++a) lefts[a] = a;
      rng.shuffle(lefts);
      std::vector<bool> taken(n, false);
      std::vector<std::pair<std::size_t, std::size_t>> added;
      matched = true;
      for (auto a : lefts) {
        // Right vertices within `depth` hops would close a cycle shorter than min_girth.
        std::fill(dist.begin(), dist.end(), kFar);
        dist[a] = 0;
        std::deque<std::size_t> queue{a};
        while (!queue.empty()) {
          const auto v = queue.front();
          queue.pop_front();
          if (dist[v] >= depth) continue;
          for (auto w : adj[v]) {
            if (dist[w] == kFar) {
              dist[w] = dist[v] + 1;
              queue.push_back(w);
            }
          }
        }
        std::vector<std::size_t> candidates;
        for (std::size_t b = 0; b < n; ++b) {
          if (!taken[b] && dist[n + b] == kFar) candidates.push_back(b);
        }
        if (candidates.empty()) {
          matched = false;
          break;
        }
        const auto b = candidates[rng.below(candidates.size())];
        taken[b] = true;
        adj[a].push_back(n + b);
        adj[n + b].push_back(a);
        added.push_back({a, n + b});
      }
      if (matched) {
        edges.insert(edges.end(), added.begin(), added.end());
      } else {
        for (const auto& [a, b] : added) {
          adj[a].pop_back();
          adj[b].pop_back();
        }
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

BipartiteTemplate build_regular_bipartite(std::size_t degree, std::size_t min_girth,
                                          std::size_t n_per_side, std::uint64_t seed,
                                          std::size_t max_attempts) {
  if (degree < 1) throw std::invalid_argument("template degree must be >= 1");
  if (n_per_side < degree) throw std::invalid_argument("n_per_side must be >= degree");
  if (min_girth % 2 != 0) throw std::invalid_argument("min_girth must be even");

  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    BipartiteTemplate t;
    t.n_per_side = n_per_side;
    t.degree = degree;
    if (!try_superpose_matchings(degree, min_girth, n_per_side, rng, t.edges)) continue;
    t.girth = girth(t.num_vertices(), t.edges);
    if (!t.girth || *t.girth >= min_girth) return t;
  }
  throw GenerationFailure("no " + std::to_string(degree) + "-regular bipartite graph with girth >= " +
                          std::to_string(min_girth) + " found on " + std::to_string(n_per_side) +
                          " vertices per side after " + std::to_string(max_attempts) +
                          " attempts; try a larger n_per_side");
}

// ---------------------------------------------------------------- instance S

std::size_t lowerbound_template_degree(int d, int D, int R) {
  require_positive(d, "d");
  require_positive(D, "D");
  require_positive(R, "R");
  return checked_mul(checked_pow(static_cast<std::size_t>(d), R),
                     checked_pow(static_cast<std::size_t>(D), R - 1));
}

std::vector<AgentId> LowerBoundMeta::tree_agents(std::size_t tree) const {
  std::vector<AgentId> out(tree_size);
  for (std::size_t t = 0; t < tree_size; ++t) out[t] = agent(tree, t);
  return out;
}

std::vector<AgentId> LowerBoundMeta::level_agents(std::size_t tree, int l) const {
  std::vector<AgentId> out;
  for (std::size_t t = 0; t < tree_size; ++t) {
    if (tree_levels[t] == l) out.push_back(agent(tree, t));
  }
  return out;
}

AgentId LowerBoundMeta::partner(AgentId leaf) const {
  for (const auto& [a, b] : type3) {
    if (a == leaf) return b;
    if (b == leaf) return a;
  }
  throw std::invalid_argument("agent " + std::to_string(leaf) + " is not a paired leaf");
}

std::pair<Instance, LowerBoundMeta> build_instance_S(const LowerBoundParams& params) {
  require_positive(params.r, "r");
  if (params.R <= params.r) throw std::invalid_argument("need R > r");

  LowerBoundMeta meta;
  meta.params = params;
  meta.template_degree = lowerbound_template_degree(params.d, params.D, params.R);
  meta.min_girth = 4 * static_cast<std::size_t>(params.r) + 2;
  const auto tree = build_hypertree(params.d, params.D, 2 * params.R - 1, params.node_cap);
  meta.tree_size = tree.num_nodes();
  meta.tree_height = tree.height;
  meta.tree_levels = tree.level;

  std::size_t side = params.n_per_side;
  if (side == 0) {
    const auto moore = bipartite_moore_bound(meta.template_degree, meta.min_girth);
    side = std::max(meta.template_degree,
                    moore > params.node_cap ? moore : checked_mul(4, moore));
  }
  const auto agents_total = checked_mul(checked_mul(2, side), meta.tree_size);
  if (agents_total > params.node_cap) {
    throw CapacityExceeded("instance S would have " + std::to_string(agents_total) +
                           " agents, cap is " + std::to_string(params.node_cap));
  }
  meta.params.n_per_side = side;
  meta.templ = build_regular_bipartite(meta.template_degree, meta.min_girth, side, params.seed);

  std::vector<AgentId> agents(agents_total);
  for (std::size_t a = 0; a < agents_total; ++a) agents[a] = static_cast<AgentId>(a);

  std::vector<SparseRow> resources, beneficiaries;
  const double c_type2 = 1.0 / static_cast<double>(params.D);
  for (std::size_t q = 0; q < meta.num_trees(); ++q) {
    for (const auto& edge : tree.edges) {
      const bool type1 = edge.type == Hypertree::EdgeType::I;
      auto& rows = type1 ? resources : beneficiaries;
      const double value = type1 ? 1.0 : c_type2;
      SparseRow row{static_cast<std::int64_t>(rows.size()), {{meta.agent(q, edge.parent), value}}};
      for (auto c : edge.children) row.entries.push_back({meta.agent(q, c), value});
      rows.push_back(std::move(row));
    }
  }

  // The l-th leaf of T_q is attached to the l-th template edge at q.
  const auto leaves = tree.leaves();
  const auto incident = meta.templ.incident_edges();
  auto leaf_for = [&](std::size_t q, std::size_t e) {
    const auto& list = incident[q];
    const auto pos = static_cast<std::size_t>(std::find(list.begin(), list.end(), e) - list.begin());
    return meta.agent(q, leaves.at(pos));
  };
  for (std::size_t e = 0; e < meta.templ.edges.size(); ++e) {
    const auto [a, b] = meta.templ.edges[e];
    const AgentId u = leaf_for(a, e), v = leaf_for(b, e);
    meta.type3.push_back({u, v});
    beneficiaries.push_back({static_cast<std::int64_t>(beneficiaries.size()), {{u, 1.0}, {v, 1.0}}});
  }
  return {Instance(std::move(agents), std::move(resources), std::move(beneficiaries)),
          std::move(meta)};
}

// ---------------------------------------------------------------- instance S'

std::vector<double> leaf_imbalance(const LowerBoundMeta& meta, const Assignment& x) {
  std::vector<double> delta(meta.num_trees(), 0.0);
  for (const auto& [u, v] : meta.type3) {
    const double diff = x[u] - x[v];
    delta[meta.tree_of(u)] += diff;
    delta[meta.tree_of(v)] -= diff;
  }
  return delta;
}

std::pair<Instance, LowerBoundMeta> select_p_and_build_Sprime(const Instance& S,
                                                              const LowerBoundMeta& meta,
                                                              const Assignment& x) {
  if (!x.covers(S)) throw std::invalid_argument("assignment does not cover S");
  LowerBoundMeta out = meta;
  out.delta = leaf_imbalance(meta, x);
  double total = 0.0;
  for (double d : out.delta) total += d;
  if (std::abs(total) > 1e-9) {
    throw std::runtime_error("delta(Q) = " + std::to_string(total) + ", expected 0");
  }
  std::size_t p = 0;
  for (std::size_t q = 1; q < out.delta.size(); ++q) {
    if (out.delta[q] > out.delta[p]) p = q;
  }
  if (out.delta.empty() || out.delta[p] < 0.0) {
    throw std::runtime_error("no template vertex with delta >= 0");
  }
  out.p = p;
  out.root = meta.agent(p, 0);

  const Hypergraph graph(S);
  std::vector<AgentId> kept = meta.tree_agents(p);
  for (AgentId leaf : meta.leaves(p)) {
    const auto ball = graph.ball(leaf, 2 * meta.params.r);
    kept.insert(kept.end(), ball.begin(), ball.end());
  }
  return {restrict(S, kept, RestrictMode::Strict), std::move(out)};
}

Assignment parity_solution(const Instance& Sprime, const LowerBoundMeta& meta) {
  if (!meta.root) throw std::invalid_argument("parity_solution: meta has no root");
  const Hypergraph graph(Sprime);
  const auto dist = graph.distances(graph.index_of(*meta.root),
                                    static_cast<int>(Sprime.num_agents()));
  Eigen::VectorXd values(static_cast<Eigen::Index>(dist.size()));
  for (std::size_t v = 0; v < dist.size(); ++v) {
    values(static_cast<Eigen::Index>(v)) = dist[v] >= 0 && dist[v] % 2 == 0 ? 1.0 : 0.0;
  }
  return Assignment({Sprime.agents().begin(), Sprime.agents().end()}, std::move(values));
}

// ---------------------------------------------------------------- adversary

double inapproximability_floor(int d, int D) {
  const double vi = d + 1.0, vk = D + 1.0;
  return vi / 2.0 + 0.5 - 1.0 / (2.0 * vk - 2.0);
}

AdversaryReport adversarial_lower_bound(const LocalAlgorithm& algorithm,
                                        const LowerBoundParams& params) {
  if (algorithm.horizon() > params.r) {
    throw std::invalid_argument("algorithm horizon " + std::to_string(algorithm.horizon()) +
                                " exceeds r = " + std::to_string(params.r) +
                                "; the template girth only covers radius r");
  }
  const auto [S, meta] = build_instance_S(params);
  const auto xS = run_local(S, algorithm);
  const auto [Sp, metaP] = select_p_and_build_Sprime(S, meta, xS);
  const auto xSp = run_local(Sp, algorithm);

  AdversaryReport rep;
  rep.params = meta.params;
  rep.algorithm = algorithm.name();
  rep.algorithm_horizon = algorithm.horizon();
  rep.template_degree = meta.template_degree;
  rep.min_girth = meta.min_girth;
  rep.template_girth = meta.templ.girth;
  rep.agents_S = S.num_agents();
  rep.agents_Sprime = Sp.num_agents();

  rep.delta_min = *std::min_element(metaP.delta.begin(), metaP.delta.end());
  rep.delta_max = *std::max_element(metaP.delta.begin(), metaP.delta.end());
  for (double d : metaP.delta) rep.delta_sum += d;
  rep.p = *metaP.p;
  rep.root = *metaP.root;

  rep.omega_S = objective(S, xS);
  rep.omega_Sprime = objective(Sp, xSp);
  rep.feasible_S = feasibility(S, xS).feasible;
  rep.feasible_Sprime = feasibility(Sp, xSp).feasible;
  if (rep.omega_Sprime > 0.0) rep.certified_ratio = 1.0 / rep.omega_Sprime;

  const Hypergraph gS(S), gSp(Sp);
  rep.identical_views = true;
  rep.identical_choices = true;
  for (AgentId v : meta.tree_agents(rep.p)) {
    if (extract_view(S, gS, v, params.r) != extract_view(Sp, gSp, v, params.r)) {
      rep.identical_views = false;
    }
    if (xS[v] != xSp[v]) rep.identical_choices = false;
  }

  rep.sprime_acyclic = acyclic(Sp);
  rep.sprime_valid = validate(Sp).valid();
  const auto parity = parity_solution(Sp, metaP);
  rep.parity_feasible = feasibility(Sp, parity).feasible;
  rep.parity_omega = objective(Sp, parity);
  const double row_tol = params.D == 1 ? 0.0 : 1e-12;
  auto all_one = [row_tol](const std::vector<double>& rows) {
    return std::all_of(rows.begin(), rows.end(),
                       [row_tol](double s) { return std::abs(s - 1.0) <= row_tol; });
  };
  rep.parity_rows_exact = all_one(resource_loads(Sp, parity)) && all_one(benefits(Sp, parity));

  rep.level_sums = level_sums(metaP, xSp);
  rep.level_pair_bounds = level_pair_bounds(params.d, params.D, rep.level_sums);
  rep.level_bounds_hold = std::all_of(rep.level_pair_bounds.begin(), rep.level_pair_bounds.end(),
                                      [](bool b) { return b; });
  rep.theoretical_floor = inapproximability_floor(params.d, params.D);
  return rep;
}

// ---------------------------------------------------------------- JSON

Json to_json(const LowerBoundParams& p) {
  return Json{{"d", p.d},         {"D", p.D},
              {"r", p.r},         {"R", p.R},
              {"seed", p.seed},   {"n_per_side", p.n_per_side},
              {"node_cap", p.node_cap}};
}

namespace {

Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const LowerBoundMeta& meta) {
  Json doc{{"params", to_json(meta.params)},
           {"template_degree", meta.template_degree},
           {"min_girth", meta.min_girth},
           {"template_girth", optional_json(meta.templ.girth)},
           {"tree_size", meta.tree_size},
           {"tree_height", meta.tree_height},
           {"tree_levels", meta.tree_levels}};
  Json tedges = Json::array();
  for (const auto& [a, b] : meta.templ.edges) tedges.push_back({a, b});
  doc["template_edges"] = std::move(tedges);
  Json pairs = Json::array();
  for (const auto& [u, v] : meta.type3) pairs.push_back({u, v});
  doc["leaf_pairs"] = std::move(pairs);
  if (meta.p) {
    doc["p"] = *meta.p;
    doc["root"] = *meta.root;
    doc["delta"] = meta.delta;
  }
  return doc;
}

Json to_json(const AdversaryReport& r) {
  Json doc{{"params", to_json(r.params)},
           {"algorithm", r.algorithm},
           {"algorithm_horizon", r.algorithm_horizon},
           {"template_degree", r.template_degree},
           {"min_girth", r.min_girth},
           {"template_girth", optional_json(r.template_girth)},
           {"agents_S", r.agents_S},
           {"agents_Sprime", r.agents_Sprime},
           {"delta", {{"count", r.params.n_per_side * 2},
                      {"sum", r.delta_sum},
                      {"min", r.delta_min},
                      {"max", r.delta_max}}},
           {"p", r.p},
           {"root", r.root},
           {"omega_alg_S", r.omega_S},
           {"omega_alg_Sprime", r.omega_Sprime},
           {"feasible_S", r.feasible_S},
           {"feasible_Sprime", r.feasible_Sprime}};
  if (r.certified_ratio) {
    doc["certified_ratio"] = *r.certified_ratio;
    doc["unbounded_ratio"] = false;
  } else {
    doc["certified_ratio"] = nullptr;
    doc["unbounded_ratio"] = true;
  }
  doc["checks"] = Json{{"identical_views", r.identical_views},
                       {"identical_choices", r.identical_choices},
                       {"sprime_acyclic", r.sprime_acyclic},
                       {"sprime_valid", r.sprime_valid},
                       {"parity_feasible", r.parity_feasible},
                       {"parity_rows_exact", r.parity_rows_exact},
                       {"level_bounds_hold", r.level_bounds_hold}};
  doc["parity_omega"] = r.parity_omega;
  doc["level_sums"] = r.level_sums;
  doc["level_pair_bounds"] = r.level_pair_bounds;
  doc["theoretical_floor"] = r.theoretical_floor;
  return doc;
}

}  // namespace mmlp
