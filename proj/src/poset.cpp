#include "posetab/poset.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "posetab/error.hpp"

namespace posetab {

std::string to_string(Direction d) { return d == Direction::Increasing ? "increasing" : "decreasing"; }

Direction opposite(Direction d) {
  return d == Direction::Increasing ? Direction::Decreasing : Direction::Increasing;
}

GradedPoset GradedPoset::validate(std::vector<PosetObject> objects, const std::vector<IdPair>& covers,
                                  Direction direction) {
  GradedPoset p;
  p.direction_ = direction;
  p.objects_ = std::move(objects);
  for (std::size_t i = 0; i < p.objects_.size(); ++i) {
    if (!p.index_.emplace(p.objects_[i].id, i).second)
      throw Error(ErrorKind::DuplicateId, "duplicate object id '" + p.objects_[i].id + "'");
  }
  const std::size_t n = p.objects_.size();
  p.lower_.assign(n, {});
  p.upper_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [a, b] : covers) {
    auto ia = p.index_.find(a);
    auto ib = p.index_.find(b);
    if (ia == p.index_.end()) throw Error(ErrorKind::UnknownId, "cover references unknown id '" + a + "'");
    if (ib == p.index_.end()) throw Error(ErrorKind::UnknownId, "cover references unknown id '" + b + "'");
    if (!seen.emplace(ia->second, ib->second).second)
      throw Error(ErrorKind::Validation, "cover (" + a + ", " + b + ") listed twice");
    p.covers_.emplace_back(ia->second, ib->second);
    p.upper_[ia->second].push_back(ib->second);
    p.lower_[ib->second].push_back(ia->second);
  }

  // Kahn's algorithm: a leftover vertex lies on a cycle.
  std::vector<std::size_t> indegree(n);
  for (const auto& c : p.covers_) ++indegree[c.second];
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::vector<std::size_t> topo;
  while (!ready.empty()) {
    std::size_t v = ready.front();
    ready.pop_front();
    topo.push_back(v);
    for (std::size_t w : p.upper_[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  if (topo.size() != n) {
    std::string where;
    for (std::size_t i = 0; i < n; ++i)
      if (indegree[i] > 0) {
        where = p.objects_[i].id;
        break;
      }
    throw Error(ErrorKind::Cycle, "cover relation has a cycle through '" + where + "'");
  }

  for (const auto& [a, b] : p.covers_) {
    if (p.degree(b) != p.degree(a) + 1)
      throw Error(ErrorKind::Degree, "cover (" + p.objects_[a].id + ", " + p.objects_[b].id + ") has degrees " +
                                         std::to_string(p.objects_[a].degree) + " -> " +
                                         std::to_string(p.objects_[b].degree) + ", violating the " +
                                         to_string(direction) + " degree rule");
  }

  p.closure_.assign(n * n, 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const std::size_t v = *it;
    p.closure_[v * n + v] = 1;
    for (std::size_t w : p.upper_[v])
      for (std::size_t u = 0; u < n; ++u)
        if (p.closure_[w * n + u]) p.closure_[v * n + u] = 1;
  }

  p.id_order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.id_order_[i] = i;
  std::sort(p.id_order_.begin(), p.id_order_.end(),
            [&](std::size_t a, std::size_t b) { return p.objects_[a].id < p.objects_[b].id; });
  p.degree_order_ = p.id_order_;
  std::stable_sort(p.degree_order_.begin(), p.degree_order_.end(),
                   [&](std::size_t a, std::size_t b) { return p.degree(a) < p.degree(b); });

  if (n > 0) {
    p.min_degree_ = p.max_degree_ = p.degree(0);
    for (std::size_t i = 0; i < n; ++i) {
      p.min_degree_ = std::min(p.min_degree_, p.degree(i));
      p.max_degree_ = std::max(p.max_degree_, p.degree(i));
    }
  }
  // Chains strictly increase the degree, so the longest one is the largest
  // degree gap between comparable objects.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (p.closure_[a * n + b])
        p.longest_chain_ = std::max<std::size_t>(p.longest_chain_, p.degree(b) - p.degree(a));
  return p;
}

std::size_t GradedPoset::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorKind::UnknownId, "unknown object id '" + id + "'");
  return it->second;
}

bool GradedPoset::is_cover(std::size_t p, std::size_t q) const {
  const auto& up = upper_[p];
  return std::find(up.begin(), up.end(), q) != up.end();
}

GradedPoset GradedPoset::redeclared(Direction d) const {
  if (d == direction_) return *this;
  auto objs = objects_;
  for (auto& o : objs) o.degree = -o.degree;
  std::vector<IdPair> cov;
  for (const auto& [a, b] : covers_) cov.emplace_back(objects_[a].id, objects_[b].id);
  return validate(std::move(objs), cov, d);
}

bool operator==(const GradedPoset& a, const GradedPoset& b) {
  if (a.direction_ != b.direction_ || a.objects_ != b.objects_) return false;
  std::set<std::pair<std::size_t, std::size_t>> ca(a.covers_.begin(), a.covers_.end());
  std::set<std::pair<std::size_t, std::size_t>> cb(b.covers_.begin(), b.covers_.end());
  return ca == cb;
}

bool precedes(const GradedPoset& poset, const std::string& p, const std::string& q) {
  return poset.is_cover(poset.index(p), poset.index(q));
}

int hom_degree(const GradedPoset& poset, std::size_t p, std::size_t q) {
  if (!poset.leq(p, q))
    throw Error(ErrorKind::NoArrow, "no arrow " + poset.id(p) + " -> " + poset.id(q));
  return poset.degree(q) - poset.degree(p);
}

int hom_degree(const GradedPoset& poset, const std::string& p, const std::string& q) {
  return hom_degree(poset, poset.index(p), poset.index(q));
}

namespace {

std::vector<Chain> enumerate(const GradedPoset& poset, std::size_t n, bool degenerate) {
  std::vector<Chain> out;
  if (poset.empty()) return out;
  if (!degenerate && n > poset.longest_chain()) return out;
  const auto& order = poset.id_order();
  Chain current;
  std::function<void()> extend = [&] {
    if (current.vertices.size() == n + 1) {
      out.push_back(current);
      return;
    }
    for (std::size_t v : order) {
      if (!current.vertices.empty()) {
        const std::size_t last = current.last();
        if (degenerate ? !poset.leq(last, v) : !poset.less(last, v)) continue;
      }
      current.vertices.push_back(v);
      extend();
      current.vertices.pop_back();
    }
  };
  extend();
  return out;
}

}  // namespace

std::vector<Chain> enumerate_chains(const GradedPoset& poset, std::size_t n) {
  return enumerate(poset, n, false);
}

std::vector<Chain> enumerate_all_simplices(const GradedPoset& poset, std::size_t n) {
  return enumerate(poset, n, true);
}

GradedPoset opposite(const GradedPoset& poset) {
  std::vector<IdPair> cov;
  for (const auto& [a, b] : poset.covers()) cov.emplace_back(poset.id(b), poset.id(a));
  return GradedPoset::validate(poset.objects(), cov, opposite(poset.direction()));
}

DegreeBounds bounds(const GradedPoset& poset) {
  if (poset.empty()) throw Error(ErrorKind::EmptyPoset, "poset has no objects");
  DegreeBounds b;
  b.min_degree = b.max_degree = poset.declared_degree(0);
  for (std::size_t i = 0; i < poset.size(); ++i) {
    b.min_degree = std::min(b.min_degree, poset.declared_degree(i));
    b.max_degree = std::max(b.max_degree, poset.declared_degree(i));
  }
  b.dimension = b.max_degree - b.min_degree;
  return b;
}

GradedPoset infer_grading(const std::vector<std::string>& ids, const std::vector<IdPair>& covers) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!index.emplace(ids[i], i).second) throw Error(ErrorKind::DuplicateId, "duplicate object id '" + ids[i] + "'");
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(ids.size());
  for (const auto& [a, b] : covers) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw Error(ErrorKind::UnknownId, "cover references unknown id '" + a + "'");
    if (ib == index.end()) throw Error(ErrorKind::UnknownId, "cover references unknown id '" + b + "'");
    adj[ia->second].emplace_back(ib->second, 1);
    adj[ib->second].emplace_back(ia->second, -1);
  }
  std::vector<int> deg(ids.size());
  std::vector<char> seen(ids.size(), 0);
  for (std::size_t root = 0; root < ids.size(); ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> component{root};
    seen[root] = 1;
    deg[root] = 0;
    for (std::size_t k = 0; k < component.size(); ++k) {
      const std::size_t v = component[k];
      for (auto [w, step] : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          deg[w] = deg[v] + step;
          component.push_back(w);
        } else if (deg[w] != deg[v] + step) {
          throw Error(ErrorKind::Degree, "no grading exists: conflicting degrees at '" + ids[w] + "'");
        }
      }
    }
    int lo = 0;
    for (std::size_t v : component) lo = std::min(lo, deg[v]);
    for (std::size_t v : component) deg[v] -= lo;
  }
  std::vector<PosetObject> objs;
  for (std::size_t i = 0; i < ids.size(); ++i) objs.push_back({ids[i], deg[i]});
  return GradedPoset::validate(std::move(objs), covers, Direction::Increasing);
}

std::vector<std::string> chain_ids(const GradedPoset& poset, const Chain& chain) {
  std::vector<std::string> out;
  for (std::size_t v : chain.vertices) out.push_back(poset.id(v));
  return out;
}

bool is_hasse_forest(const GradedPoset& poset) {
  // Rooted downward: at most one lower cover everywhere, so down-sets are chains.
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (poset.lower_covers(i).size() > 1) return false;
  return true;
}

}  // namespace posetab
