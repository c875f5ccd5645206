#include <cassert>
#include <functional>

#include "senscheck/club.hpp"

namespace senscheck {

ClubExpr ClubExpr::wrap(ClubNode n) {
  ClubExpr q;
  q.p_ = std::make_shared<const ClubNode>(std::move(n));
  return q;
}

ClubExpr ClubExpr::leaf(Sens s) {
  ClubNode n;
  n.tag = Tag::Leaf;
  n.leaf = std::move(s);
  return wrap(std::move(n));
}

ClubExpr ClubExpr::plus(ClubExpr l, ClubExpr r) {
  ClubNode n;
  n.tag = Tag::Plus;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

ClubExpr ClubExpr::times(ClubExpr l, ClubExpr r) {
  ClubNode n;
  n.tag = Tag::Times;
  n.a = std::move(l);
  n.b = std::move(r);
  return wrap(std::move(n));
}

ClubExpr ClubExpr::club(std::vector<ClubEntry> entries) {
  ClubNode n;
  n.tag = Tag::Club;
  n.entries = std::move(entries);
  return wrap(std::move(n));
}

int count_club_nodes(const ClubExpr& q) {
  switch (q.tag()) {
    case ClubExpr::Tag::Leaf:
      return 0;
    case ClubExpr::Tag::Plus:
    case ClubExpr::Tag::Times:
      return count_club_nodes(q.node().a) + count_club_nodes(q.node().b);
    case ClubExpr::Tag::Club: {
      int n = 1;
      for (const auto& e : q.node().entries) n += count_club_nodes(e.body);
      return n;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

namespace {

void all_names(const Sens& s, std::set<std::string>& out) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
      return;
    case Sens::Tag::Var:
      out.insert(n.name);
      return;
    case Sens::Tag::Plus:
    case Sens::Tag::Times:
    case Sens::Tag::Max:
      all_names(n.a, out);
      all_names(n.b, out);
      return;
    case Sens::Tag::Sup:
      out.insert(n.name);
      all_names(n.a, out);
      return;
    case Sens::Tag::Case:
      out.insert(n.name);
      all_names(n.a, out);
      all_names(n.b, out);
      all_names(n.c, out);
      return;
  }
}

/// Entry binders must stay disjoint from everything in scope: a shadowed
/// source binder is renamed, an unshadowed one keeps its name.
ClubExpr to_club_rec(const Sens& s, std::set<std::string>& scope,
                     std::set<std::string>& used) {
  if (s.is_standard()) return ClubExpr::leaf(s);
  const SensNode& n = s.node();
  auto enter = [&](const std::string& binder, const Sens& body,
                   std::pair<std::string, Sens>* out) {
    if (scope.count(binder)) {
      std::string fresh = fresh_name(binder, used);
      out->first = fresh;
      out->second = subst(body, binder, Sens::var(fresh));
    } else {
      used.insert(binder);
      out->first = binder;
      out->second = body;
    }
  };
  switch (s.tag()) {
    case Sens::Tag::Plus:
      return ClubExpr::plus(to_club_rec(n.a, scope, used),
                            to_club_rec(n.b, scope, used));
    case Sens::Tag::Times:
      return ClubExpr::times(to_club_rec(n.a, scope, used),
                             to_club_rec(n.b, scope, used));
    case Sens::Tag::Max:
      return ClubExpr::club({{{}, {}, to_club_rec(n.a, scope, used)},
                             {{}, {}, to_club_rec(n.b, scope, used)}});
    case Sens::Tag::Sup: {
      std::pair<std::string, Sens> renamed;
      enter(n.name, n.a, &renamed);
      scope.insert(renamed.first);
      ClubExpr body = to_club_rec(renamed.second, scope, used);
      scope.erase(renamed.first);
      return ClubExpr::club({{{{renamed.first, n.binder_kind}}, {}, body}});
    }
    case Sens::Tag::Case: {
      ClubEntry zero{{}, {Refinement::is_zero(n.a)},
                     to_club_rec(n.b, scope, used)};
      std::pair<std::string, Sens> renamed;
      enter(n.name, n.c, &renamed);
      scope.insert(renamed.first);
      ClubExpr succ_body = to_club_rec(renamed.second, scope, used);
      scope.erase(renamed.first);
      ClubEntry succ{{{renamed.first, Kind::Size}},
                     {Refinement::is_succ(n.a, renamed.first)},
                     std::move(succ_body)};
      return ClubExpr::club({std::move(zero), std::move(succ)});
    }
    default:
      return ClubExpr::leaf(s);  // unreachable: standard cases returned above
  }
}

}  // namespace

ClubExpr to_club(const Sens& s) {
  std::set<std::string> used;
  all_names(s, used);
  std::set<std::string> scope = free_vars(s);
  return to_club_rec(s, scope, used);
}

// ---------------------------------------------------------------------------
// Renaming helpers
// ---------------------------------------------------------------------------

static void collect_names(const Sens& s, std::set<std::string>& out) {
  const SensNode& n = s.node();
  switch (s.tag()) {
    case Sens::Tag::Const:
      return;
    case Sens::Tag::Var:
      out.insert(n.name);
      return;
    case Sens::Tag::Plus:
    case Sens::Tag::Times:
    case Sens::Tag::Max:
      collect_names(n.a, out);
      collect_names(n.b, out);
      return;
    case Sens::Tag::Sup:
      out.insert(n.name);
      collect_names(n.a, out);
      return;
    case Sens::Tag::Case:
      out.insert(n.name);
      collect_names(n.a, out);
      collect_names(n.b, out);
      collect_names(n.c, out);
      return;
  }
}

static void collect_names(const ClubExpr& q, std::set<std::string>& out) {
  switch (q.tag()) {
    case ClubExpr::Tag::Leaf:
      collect_names(q.node().leaf, out);
      return;
    case ClubExpr::Tag::Plus:
    case ClubExpr::Tag::Times:
      collect_names(q.node().a, out);
      collect_names(q.node().b, out);
      return;
    case ClubExpr::Tag::Club:
      for (const auto& e : q.node().entries) {
        for (const auto& [n, k] : e.locals) out.insert(n);
        for (const auto& r : e.refs) {
          collect_names(r.scrutinee, out);
          if (!r.binder.empty()) out.insert(r.binder);
        }
        collect_names(e.body, out);
      }
      return;
  }
}

/// Substitutes a variable in every leaf and refinement of a club expression,
/// stopping at entries whose locals shadow it.
static ClubExpr club_subst(const ClubExpr& q, const std::string& var,
                           const Sens& repl) {
  switch (q.tag()) {
    case ClubExpr::Tag::Leaf:
      return ClubExpr::leaf(subst(q.node().leaf, var, repl));
    case ClubExpr::Tag::Plus:
      return ClubExpr::plus(club_subst(q.node().a, var, repl),
                            club_subst(q.node().b, var, repl));
    case ClubExpr::Tag::Times:
      return ClubExpr::times(club_subst(q.node().a, var, repl),
                             club_subst(q.node().b, var, repl));
    case ClubExpr::Tag::Club: {
      std::vector<ClubEntry> entries;
      for (const auto& e : q.node().entries) {
        bool shadowed = false;
        for (const auto& [n, k] : e.locals)
          if (n == var) shadowed = true;
        if (shadowed) {
          entries.push_back(e);
          continue;
        }
        ClubEntry ne;
        ne.locals = e.locals;
        for (const auto& r : e.refs) {
          Refinement nr = r;
          nr.scrutinee = subst(r.scrutinee, var, repl);
          ne.refs.push_back(std::move(nr));
        }
        ne.body = club_subst(e.body, var, repl);
        entries.push_back(std::move(ne));
      }
      return ClubExpr::club(std::move(entries));
    }
  }
  return q;
}

/// Renames the entry's local binders away from `avoid`; extends `avoid` with
/// the final names.
static ClubEntry freshen_entry(const ClubEntry& e, std::set<std::string>& avoid) {
  ClubEntry out = e;
  for (auto& [name, kind] : out.locals) {
    if (!avoid.count(name)) {
      avoid.insert(name);
      continue;
    }
    std::string nn = fresh_name(name, avoid);
    // Rename in refinements (scrutinees and succ binders) and in the body.
    for (auto& r : out.refs) {
      r.scrutinee = subst(r.scrutinee, name, Sens::var(nn));
      if (r.binder == name) r.binder = nn;
    }
    out.body = club_subst(out.body, name, Sens::var(nn));
    name = nn;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Leaf pushing
// ---------------------------------------------------------------------------

namespace {

enum class OpKind { Add, Mul };

ClubExpr apply_op(OpKind op, ClubExpr l, ClubExpr r) {
  return op == OpKind::Add ? ClubExpr::plus(std::move(l), std::move(r))
                           : ClubExpr::times(std::move(l), std::move(r));
}

Sens apply_op(OpKind op, const Sens& l, const Sens& r) {
  return op == OpKind::Add ? Sens::plus(l, r) : Sens::times(l, r);
}

ClubExpr push(const ClubExpr& q);

/// entry_i.body := body `op` leaf (or leaf `op` body), recursively pushed.
ClubExpr push_into(const ClubExpr& clubq, OpKind op, const Sens& l,
                   bool leaf_on_left) {
  std::set<std::string> avoid = free_vars(l);
  std::vector<ClubEntry> entries;
  for (const auto& e : clubq.node().entries) {
    std::set<std::string> av = avoid;
    ClubEntry ne = freshen_entry(e, av);
    ClubExpr lhs = ClubExpr::leaf(l);
    ClubExpr combined = leaf_on_left ? apply_op(op, lhs, ne.body)
                                     : apply_op(op, ne.body, lhs);
    ne.body = push(combined);
    entries.push_back(std::move(ne));
  }
  return ClubExpr::club(std::move(entries));
}

ClubExpr push_binary(OpKind op, const ClubExpr& a, const ClubExpr& b) {
  if (a.tag() == ClubExpr::Tag::Leaf && b.tag() == ClubExpr::Tag::Leaf)
    return ClubExpr::leaf(apply_op(op, a.node().leaf, b.node().leaf));
  if (a.tag() == ClubExpr::Tag::Club && b.tag() == ClubExpr::Tag::Leaf)
    return push_into(a, op, b.node().leaf, /*leaf_on_left=*/false);
  if (a.tag() == ClubExpr::Tag::Leaf && b.tag() == ClubExpr::Tag::Club)
    return push_into(b, op, a.node().leaf, /*leaf_on_left=*/true);
  return apply_op(op, a, b);
}

ClubExpr push(const ClubExpr& q) {
  switch (q.tag()) {
    case ClubExpr::Tag::Leaf:
      return q;
    case ClubExpr::Tag::Plus:
      return push_binary(OpKind::Add, push(q.node().a), push(q.node().b));
    case ClubExpr::Tag::Times:
      return push_binary(OpKind::Mul, push(q.node().a), push(q.node().b));
    case ClubExpr::Tag::Club: {
      std::vector<ClubEntry> entries;
      for (const auto& e : q.node().entries) {
        ClubEntry ne = e;
        ne.body = push(ne.body);
        entries.push_back(std::move(ne));
      }
      return ClubExpr::club(std::move(entries));
    }
  }
  return q;
}

}  // namespace

ClubExpr push_leaves(const ClubExpr& q) { return push(q); }

// ---------------------------------------------------------------------------
// Normalization: single-step leftmost-innermost rewriting
// ---------------------------------------------------------------------------

namespace {

bool is_flat_club(const ClubExpr& q) {
  if (q.tag() != ClubExpr::Tag::Club) return false;
  for (const auto& e : q.node().entries)
    if (e.body.tag() != ClubExpr::Tag::Leaf) return false;
  return true;
}

ClubExpr as_flat_club(const ClubExpr& q) {
  // A bare leaf denotes the singleton club over it.
  if (q.tag() == ClubExpr::Tag::Leaf)
    return ClubExpr::club({{{}, {}, q}});
  return q;
}

bool flat_or_leaf(const ClubExpr& q) {
  return q.tag() == ClubExpr::Tag::Leaf || is_flat_club(q);
}

/// CPlus / CMult: cross-merge two flat clubs, freshening the right entry's
/// locals against the left's.
ClubExpr cross_merge(OpKind op, const ClubExpr& lq, const ClubExpr& rq) {
  const ClubExpr fl = as_flat_club(lq);
  const ClubExpr fr = as_flat_club(rq);
  std::vector<ClubEntry> out;
  for (const auto& le : fl.node().entries) {
    for (const auto& re : fr.node().entries) {
      std::set<std::string> avoid;
      collect_names(ClubExpr::club({le}), avoid);
      ClubEntry r2 = freshen_entry(re, avoid);
      ClubEntry merged;
      merged.locals = le.locals;
      for (const auto& lv : r2.locals) merged.locals.push_back(lv);
      merged.refs = le.refs;
      for (const auto& r : r2.refs) merged.refs.push_back(r);
      merged.body = ClubExpr::leaf(
          apply_op(op, le.body.node().leaf, r2.body.node().leaf));
      out.push_back(std::move(merged));
    }
  }
  return ClubExpr::club(std::move(out));
}

/// Flat: absorb the inner club of one entry into the outer club.
ClubExpr flatten_entry(const ClubExpr& q, size_t which) {
  std::vector<ClubEntry> out;
  for (size_t i = 0; i < q.node().entries.size(); ++i) {
    const ClubEntry& e = q.node().entries[i];
    if (i != which) {
      out.push_back(e);
      continue;
    }
    for (const auto& inner : e.body.node().entries) {
      std::set<std::string> avoid;
      for (const auto& [n, k] : e.locals) avoid.insert(n);
      for (const auto& r : e.refs) collect_names(r.scrutinee, avoid);
      ClubEntry in2 = freshen_entry(inner, avoid);
      ClubEntry merged;
      merged.locals = e.locals;
      for (const auto& lv : in2.locals) merged.locals.push_back(lv);
      merged.refs = e.refs;
      for (const auto& r : in2.refs) merged.refs.push_back(r);
      merged.body = in2.body;
      out.push_back(std::move(merged));
    }
  }
  return ClubExpr::club(std::move(out));
}

std::optional<ClubExpr> step(const ClubExpr& q) {
  switch (q.tag()) {
    case ClubExpr::Tag::Leaf:
      return std::nullopt;
    case ClubExpr::Tag::Plus:
    case ClubExpr::Tag::Times: {
      OpKind op = q.tag() == ClubExpr::Tag::Plus ? OpKind::Add : OpKind::Mul;
      if (auto s = step(q.node().a)) return apply_op(op, *s, q.node().b);
      if (auto s = step(q.node().b)) return apply_op(op, q.node().a, *s);
      if (q.node().a.tag() == ClubExpr::Tag::Leaf &&
          q.node().b.tag() == ClubExpr::Tag::Leaf)
        return ClubExpr::leaf(
            apply_op(op, q.node().a.node().leaf, q.node().b.node().leaf));
      if (flat_or_leaf(q.node().a) && flat_or_leaf(q.node().b))
        return cross_merge(op, q.node().a, q.node().b);
      return std::nullopt;
    }
    case ClubExpr::Tag::Club: {
      for (size_t i = 0; i < q.node().entries.size(); ++i) {
        const ClubEntry& e = q.node().entries[i];
        if (auto s = step(e.body)) {
          std::vector<ClubEntry> entries = q.node().entries;
          entries[i].body = *s;
          return ClubExpr::club(std::move(entries));
        }
        if (is_flat_club(e.body)) return flatten_entry(q, i);
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

ClubExpr normalize_club(const ClubExpr& q, NormalizeStats* stats,
                        std::vector<ClubExpr>* trace) {
  int bound = count_club_nodes(q);
  int steps = 0;
  ClubExpr cur = q;
  if (trace) trace->push_back(cur);
  while (auto next = step(cur)) {
    cur = *next;
    ++steps;
    if (trace) trace->push_back(cur);
    if (steps > bound + 1)
      throw std::logic_error("normalize_club: step bound exceeded");
  }
  cur = as_flat_club(cur);
  if (!is_flat_club(cur))
    throw std::logic_error("normalize_club: not a flat club at fixpoint");
  if (stats) {
    stats->steps = steps;
    stats->input_clubs = bound;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Flattening into obligations
// ---------------------------------------------------------------------------

std::vector<Obligation> flatten(const Constraint& c, const ClubExpr& normal_rhs) {
  if (!c.lhs.is_standard())
    throw std::logic_error("flatten: constraint lhs is not standard");
  if (!is_flat_club(normal_rhs))
    throw std::logic_error("flatten: rhs is not a normal club");
  std::vector<Obligation> out;
  if (normal_rhs.node().entries.empty()) {
    out.push_back({c.idx, c.refs, {}, {}, c.lhs, Sens::konst(0), c.origin});
    return out;
  }
  std::set<std::string> ambient;
  for (const auto& [n, k] : c.idx) ambient.insert(n);
  for (const auto& v : free_vars(c.lhs)) ambient.insert(v);
  for (const auto& r : c.refs) {
    collect_names(r.scrutinee, ambient);
    if (!r.binder.empty()) ambient.insert(r.binder);
  }
  for (const auto& e : normal_rhs.node().entries) {
    std::set<std::string> avoid = ambient;
    ClubEntry fe = freshen_entry(e, avoid);
    out.push_back({c.idx, c.refs, fe.locals, fe.refs, c.lhs,
                   fe.body.node().leaf, c.origin});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probe interpretation
// ---------------------------------------------------------------------------

namespace {

ExtReal entry_eval(const ClubEntry& e, const Valuation& rho,
                   const ProbeConfig& probes, bool& any);

ExtReal club_eval_rec(const ClubExpr& q, const Valuation& rho,
                      const ProbeConfig& probes) {
  switch (q.tag()) {
    case ClubExpr::Tag::Leaf:
      return eval_sens(q.node().leaf, rho, probes);
    case ClubExpr::Tag::Plus:
      return club_eval_rec(q.node().a, rho, probes) +
             club_eval_rec(q.node().b, rho, probes);
    case ClubExpr::Tag::Times:
      return club_eval_rec(q.node().a, rho, probes) *
             club_eval_rec(q.node().b, rho, probes);
    case ClubExpr::Tag::Club: {
      ExtReal best = ExtReal::of(0);
      for (const auto& e : q.node().entries) {
        bool any = false;
        ExtReal v = entry_eval(e, rho, probes, any);
        if (any) best = ext_max(best, v);
      }
      return best;
    }
  }
  return ExtReal::of(0);
}

bool refs_hold(const ClubEntry& e, const Valuation& rho,
               const ProbeConfig& probes) {
  for (const auto& r : e.refs) {
    bool evaluable = true;
    for (const auto& v : free_vars(r.scrutinee))
      if (!rho.has(v)) evaluable = false;
    if (!evaluable) return false;
    ExtReal s = eval_sens(r.scrutinee, rho, probes);
    if (r.shape == Refinement::Shape::IsZero) {
      if (!s.is_zero()) return false;
    } else {
      if (!rho.has(r.binder)) return false;
      if (s != rho.get(r.binder) + ExtReal::of(1)) return false;
    }
  }
  return true;
}

void assign_locals(const ClubEntry& e, size_t next, const Valuation& rho,
                   const ProbeConfig& probes, ExtReal& best, bool& any) {
  if (next == e.locals.size()) {
    if (!refs_hold(e, rho, probes)) return;
    ExtReal v = club_eval_rec(e.body, rho, probes);
    if (!any || best < v) best = v;
    any = true;
    return;
  }
  const auto& [name, kind] = e.locals[next];
  // A refinement S = name + 1 with an evaluable scrutinee pins the value.
  for (const auto& r : e.refs) {
    if (r.shape != Refinement::Shape::IsSucc || r.binder != name) continue;
    bool evaluable = true;
    for (const auto& v : free_vars(r.scrutinee))
      if (!rho.has(v)) evaluable = false;
    if (!evaluable) continue;
    ExtReal s = eval_sens(r.scrutinee, rho, probes);
    if (s.is_infinite()) {
      assign_locals(e, next + 1, rho.with(name, ExtReal::infinity()), probes,
                    best, any);
      return;
    }
    if (s.value() >= 1) {
      assign_locals(e, next + 1, rho.with(name, ExtReal(s.value() - 1)), probes,
                    best, any);
      return;
    }
    return;  // no predecessor: the entry is vacuous along this branch
  }
  for (const ExtReal& p : probes.probes(kind))
    assign_locals(e, next + 1, rho.with(name, p), probes, best, any);
}

ExtReal entry_eval(const ClubEntry& e, const Valuation& rho,
                   const ProbeConfig& probes, bool& any) {
  ExtReal best = ExtReal::of(0);
  any = false;
  assign_locals(e, 0, rho, probes, best, any);
  return best;
}

}  // namespace

ExtReal club_eval(const ClubExpr& q, const Valuation& rho,
                  const ProbeConfig& probes) {
  return club_eval_rec(q, rho, probes);
}

}  // namespace senscheck
