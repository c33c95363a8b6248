#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <unordered_map>

#include "specm/error.hpp"
#include "specm/spectrum.hpp"

namespace specm {

int default_search_depth() {
  if (const char* env = std::getenv("SPECM_SEARCH_DEPTH")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 3;
}

namespace {

using Values = std::vector<int8_t>;

struct Node {
  enum Op : int8_t { Leaf, Add, Mul } op = Leaf;
  int a = -1, b = -1;  // leaf index for Leaf, node indices otherwise
};

/// Every separator in the search is piecewise constant with breakpoints on a
/// common finite set, so it is determined exactly by its values on the cells
/// of that set: the open gaps and the breakpoints themselves.
struct Cells {
  std::vector<Rational> samples;
  std::vector<Rational> cuts;  // cell 2i+1 is cuts[i]

  /// Index of the cell holding x, or of the open cell next to x on `side`.
  size_t point_cell(const Rational& x) const {
    auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
    return 2 * static_cast<size_t>(it - cuts.begin()) + 1;
  }
};

Cells make_cells(const Domain& d, std::vector<Rational> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Cells c;
  c.cuts = cuts;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    std::optional<Rational> lo = i == 0 ? d.lo : std::optional<Rational>(cuts[i - 1]);
    std::optional<Rational> hi = i == cuts.size() ? d.hi : std::optional<Rational>(cuts[i]);
    c.samples.push_back(Span{lo, hi}.interior_point());
    if (i < cuts.size()) c.samples.push_back(cuts[i]);
  }
  return c;
}

/// A cell on which every function outside p must be nonzero.
size_t key_cell(const Domain& d, const Cells& cells, const MaxIdealDescriptor& p) {
  size_t last = cells.samples.size() - 1;
  switch (p.kind) {
    case MaxIdealDescriptor::Kind::JMinus: return 0;
    case MaxIdealDescriptor::Kind::JPlus: return last;
    case MaxIdealDescriptor::Kind::M:
      if (d.lo && p.x == *d.lo) return 0;
      if (d.hi && p.x == *d.hi) return last;
      return cells.point_cell(p.x);
    case MaxIdealDescriptor::Kind::PBlockMember:
      if (p.side == Side::Left) return (d.hi && p.x == *d.hi) ? last : cells.point_cell(p.x) - 1;
      return (d.lo && p.x == *d.lo) ? 0 : cells.point_cell(p.x) + 1;
  }
  return 0;
}

int8_t apply(Node::Op op, int8_t x, int8_t y) { return op == Node::Add ? int8_t(x + y) : int8_t(x * y); }

}  // namespace

SearchReport witness_search(const Domain& d, const MaxIdealDescriptor& p, const MaxIdealDescriptor& q,
                            std::optional<int> depth) {
  SearchReport rep;
  rep.depth = depth.value_or(default_search_depth());
  if (rep.depth < 1) fail(ErrorCode::InvalidArgument, "search depth must be at least 1");

  // Parameter grid: the anchors of p and q plus evenly spaced points, 8 in all.
  Rational width = d.bounded() ? Rational(*d.hi - *d.lo) : Rational(1);
  auto finite = [](const MaxIdealDescriptor& m) {
    return m.kind == MaxIdealDescriptor::Kind::M || m.kind == MaxIdealDescriptor::Kind::PBlockMember;
  };
  std::vector<Rational> anchors;
  for (const auto* m : {&p, &q})
    if (finite(*m) && std::find(anchors.begin(), anchors.end(), m->x) == anchors.end()) anchors.push_back(m->x);
  Rational base = d.lo ? *d.lo : (anchors.empty() ? Rational(-2) : Rational(anchors[0] - 2));
  for (int i = 1; anchors.size() < 8 && i < 64; ++i) {
    Rational a = d.bounded() ? Rational(base + width * make_rational(i, 8)) : Rational(base + make_rational(i, 2));
    if (d.hi && a >= *d.hi) break;
    if (std::find(anchors.begin(), anchors.end(), a) == anchors.end()) anchors.push_back(a);
  }
  std::sort(anchors.begin(), anchors.end());
  rep.anchors = anchors;
  rep.epsilons = {width / 4, width / 16, width / 64};

  std::vector<PiecewiseFn> leaves;
  for (const auto& a : anchors) {
    auto add_leaf = [&](SeparatorKind k, const Rational& e) {
      try {
        leaves.push_back(make_separator(d, k, a, e));
      } catch (const Error&) {
      }
    };
    for (const auto& e : rep.epsilons) {
      add_leaf(SeparatorKind::BumpLeft, e);
      add_leaf(SeparatorKind::BumpRight, e);
      add_leaf(SeparatorKind::Window, e);
    }
    add_leaf(SeparatorKind::PointKiller, 0);
    add_leaf(SeparatorKind::StepUp, 0);
    add_leaf(SeparatorKind::StepDown, 0);
  }
  rep.leaves = leaves.size();

  std::vector<Rational> cuts;
  for (const auto& f : leaves) cuts.insert(cuts.end(), f.breakpoints().begin(), f.breakpoints().end());
  for (const auto& a : anchors)
    if ((!d.lo || *d.lo < a) && (!d.hi || a < *d.hi)) cuts.push_back(a);
  Cells cells = make_cells(d, cuts);
  size_t kp = key_cell(d, cells, p), kq = key_cell(d, cells, q);

  // Stored nodes (all depths below the last) with their cell values.
  std::vector<Node> nodes;
  std::vector<Values> vals;
  std::unordered_map<std::string, int> seen;
  std::vector<std::vector<int>> level(rep.depth + 1);
  auto store = [&](Node n, Values v, int lv) {
    std::string key(v.begin(), v.end());
    if (!seen.emplace(key, static_cast<int>(nodes.size())).second) return;
    level[lv].push_back(static_cast<int>(nodes.size()));
    nodes.push_back(n);
    vals.push_back(std::move(v));
  };
  for (size_t i = 0; i < leaves.size(); ++i) {
    Values v;
    for (const auto& s : cells.samples) {
      EvalResult r = eval(leaves[i], s);
      v.push_back(static_cast<int8_t>(r.value.get_num().get_si()));
    }
    store(Node{Node::Leaf, static_cast<int>(i), -1}, std::move(v), 1);
  }
  // Candidates: (op, a, b) with op Leaf meaning the stored node a itself.
  std::vector<Node> cand_p, cand_q;
  auto consider = [&](const Node& ref, int8_t at_kp, int8_t at_kq) {
    if (at_kp != 0) cand_p.push_back(ref);
    if (at_kq != 0) cand_q.push_back(ref);
  };
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) consider(Node{Node::Leaf, i, -1}, vals[i][kp], vals[i][kq]);
  rep.expressions = nodes.size();
  for (int lv = 2; lv <= rep.depth; ++lv) {
    bool last = lv == rep.depth;
    for (int i = 1; i <= lv / 2; ++i)
      for (size_t ia = 0; ia < level[i].size(); ++ia) {
        int a = level[i][ia];
        const auto& right = level[lv - i];
        for (size_t ib = (i == lv - i ? ia : 0); ib < right.size(); ++ib) {
          int b = right[ib];
          for (Node::Op op : {Node::Add, Node::Mul}) {
            ++rep.expressions;
            if (last) {
              consider(Node{op, a, b}, apply(op, vals[a][kp], vals[b][kp]), apply(op, vals[a][kq], vals[b][kq]));
              continue;
            }
            Values v(vals[a].size());
            for (size_t c = 0; c < v.size(); ++c) v[c] = apply(op, vals[a][c], vals[b][c]);
            int before = static_cast<int>(nodes.size());
            store(Node{op, a, b}, std::move(v), lv);
            if (static_cast<int>(nodes.size()) > before) consider(Node{Node::Leaf, before, -1}, vals[before][kp], vals[before][kq]);
          }
        }
      }
  }
  rep.distinct_functions = nodes.size();

  auto values_of = [&](const Node& ref) {
    if (ref.op == Node::Leaf) return vals[ref.a];
    Values v(vals[ref.a].size());
    for (size_t c = 0; c < v.size(); ++c) v[c] = apply(ref.op, vals[ref.a][c], vals[ref.b][c]);
    return v;
  };
  std::function<PiecewiseFn(int)> build_node = [&](int i) -> PiecewiseFn {
    const Node& n = nodes[i];
    if (n.op == Node::Leaf) return leaves[n.a];
    return n.op == Node::Add ? add(build_node(n.a), build_node(n.b)) : mul(build_node(n.a), build_node(n.b));
  };
  auto build_ref = [&](const Node& ref) -> PiecewiseFn {
    if (ref.op == Node::Leaf) return build_node(ref.a);
    return ref.op == Node::Add ? add(build_node(ref.a), build_node(ref.b)) : mul(build_node(ref.a), build_node(ref.b));
  };

  // A pair needs c * d = 0 on every cell. Every d outside q is nonzero on kq,
  // so any c nonzero there is ruled out against all of them at once.
  for (const auto& c : cand_p) {
    int8_t c_at_kq = c.op == Node::Leaf ? vals[c.a][kq] : apply(c.op, vals[c.a][kq], vals[c.b][kq]);
    if (c_at_kq != 0) {
      rep.pairs_pruned += cand_q.size();
      continue;
    }
    Values cv = values_of(c);
    for (const auto& dd : cand_q) {
      ++rep.pairs_checked;
      Values dv = values_of(dd);
      bool zero = true;
      for (size_t k = 0; k < cv.size() && zero; ++k) zero = cv[k] * dv[k] == 0;
      if (!zero) continue;
      SeparationWitness w{build_ref(c), build_ref(dd)};
      if (witness_valid(d, w, p, q)) {
        rep.found = true;
        rep.witness = w;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace specm
