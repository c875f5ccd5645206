#include <cstdlib>
#include <map>
#include <sstream>

#include "senscheck/smt.hpp"
#include "senscheck/subprocess.hpp"

namespace senscheck {

std::string Verdict::str() const {
  switch (kind) {
    case Kind::Valid:
      return "valid";
    case Kind::Invalid:
      return "invalid";
    case Kind::Unknown:
      switch (reason) {
        case UnknownReason::Timeout: return "unknown (timeout)";
        case UnknownReason::SolverUnknown: return "unknown (solver)";
        case UnknownReason::IncompleteInternalCheck:
          return "unknown (incomplete internal check)";
      }
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

bool arith_needs_real(const Arith& a,
                      const std::map<std::string, Sort>& scope) {
  switch (a.tag()) {
    case Arith::Tag::Var: {
      auto it = scope.find(a.node().name);
      return it == scope.end() || it->second == Sort::SensReal;
    }
    case Arith::Tag::Const:
      return !is_integer(a.node().value);
    case Arith::Tag::Plus:
    case Arith::Tag::Times:
      return arith_needs_real(a.node().a, scope) ||
             arith_needs_real(a.node().b, scope);
  }
  return false;
}

void emit_arith(std::ostream& os, const Arith& a,
                const std::map<std::string, Sort>& scope, bool as_real) {
  switch (a.tag()) {
    case Arith::Tag::Var: {
      auto it = scope.find(a.node().name);
      bool is_int = it != scope.end() && it->second == Sort::Nat;
      if (as_real && is_int)
        os << "(to_real " << a.node().name << ")";
      else
        os << a.node().name;
      return;
    }
    case Arith::Tag::Const: {
      const Rational& v = a.node().value;
      if (is_integer(v)) {
        os << v.get_num().get_str();
        if (as_real) os << ".0";
      } else {
        os << "(/ " << v.get_num().get_str() << ".0 " << v.get_den().get_str()
           << ".0)";
      }
      return;
    }
    case Arith::Tag::Plus:
    case Arith::Tag::Times:
      os << (a.tag() == Arith::Tag::Plus ? "(+ " : "(* ");
      emit_arith(os, a.node().a, scope, as_real);
      os << " ";
      emit_arith(os, a.node().b, scope, as_real);
      os << ")";
      return;
  }
}

const char* smt_cmp(CmpOp op) {
  switch (op) {
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
  }
  return ">=";
}

void emit_formula(std::ostream& os, const Formula& f,
                  std::map<std::string, Sort>& scope) {
  const FormulaNode& n = f.node();
  switch (f.tag()) {
    case Formula::Tag::True:
      os << "true";
      return;
    case Formula::Tag::False:
      os << "false";
      return;
    case Formula::Tag::Cmp: {
      bool real = arith_needs_real(n.l, scope) || arith_needs_real(n.r, scope);
      os << "(" << smt_cmp(n.op) << " ";
      emit_arith(os, n.l, scope, real);
      os << " ";
      emit_arith(os, n.r, scope, real);
      os << ")";
      return;
    }
    case Formula::Tag::And:
    case Formula::Tag::Or: {
      os << (f.tag() == Formula::Tag::And ? "(and" : "(or");
      for (const auto& p : n.parts) {
        os << " ";
        emit_formula(os, p, scope);
      }
      os << ")";
      return;
    }
    case Formula::Tag::Not:
      os << "(not ";
      emit_formula(os, n.a, scope);
      os << ")";
      return;
    case Formula::Tag::Implies:
      os << "(=> ";
      emit_formula(os, n.a, scope);
      os << " ";
      emit_formula(os, n.b, scope);
      os << ")";
      return;
    case Formula::Tag::ForAll:
    case Formula::Tag::Exists: {
      bool is_forall = f.tag() == Formula::Tag::ForAll;
      bool is_int = n.sort == Sort::Nat;
      os << (is_forall ? "(forall ((" : "(exists ((") << n.var << " "
         << (is_int ? "Int" : "Real") << ")) ";
      os << (is_forall ? "(=> " : "(and ");
      os << "(>= " << n.var << " " << (is_int ? "0" : "0.0") << ") ";
      auto saved = scope.find(n.var) != scope.end()
                       ? std::optional<Sort>(scope[n.var])
                       : std::nullopt;
      scope[n.var] = n.sort;
      emit_formula(os, n.a, scope);
      if (saved)
        scope[n.var] = *saved;
      else
        scope.erase(n.var);
      os << "))";
      return;
    }
  }
}

struct Stripped {
  std::vector<std::pair<std::string, Sort>> vars;
  Formula body;
};

Stripped strip_foralls(const Formula& f) {
  Stripped out;
  Formula cur = f;
  while (!cur.null() && cur.tag() == Formula::Tag::ForAll) {
    out.vars.emplace_back(cur.node().var, cur.node().sort);
    cur = cur.node().a;
  }
  out.body = cur;
  return out;
}

bool quantifier_free(const Formula& f) {
  const FormulaNode& n = f.node();
  switch (f.tag()) {
    case Formula::Tag::ForAll:
    case Formula::Tag::Exists:
      return false;
    case Formula::Tag::And:
    case Formula::Tag::Or: {
      for (const auto& p : n.parts)
        if (!quantifier_free(p)) return false;
      return true;
    }
    case Formula::Tag::Not:
      return quantifier_free(n.a);
    case Formula::Tag::Implies:
      return quantifier_free(n.a) && quantifier_free(n.b);
    default:
      return true;
  }
}

/// Negation with the outer universals turned into declared constants, so a
/// sat answer comes with extractable witness values.
std::string emit_skolemized(const Formula& f, SolveMode mode) {
  Stripped s = strip_foralls(f);
  std::ostringstream os;
  os << "(set-logic ALL)\n";
  std::map<std::string, Sort> scope;
  for (const auto& [name, sort] : s.vars) {
    bool is_int = mode == SolveMode::Mixed && sort == Sort::Nat;
    os << "(declare-const " << name << " " << (is_int ? "Int" : "Real") << ")\n";
    os << "(assert (>= " << name << " " << (is_int ? "0" : "0.0") << "))\n";
    scope[name] = is_int ? Sort::Nat : Sort::SensReal;
  }
  os << "(assert (not ";
  emit_formula(os, s.body, scope);
  os << "))\n(check-sat)\n(get-model)\n";
  return os.str();
}

}  // namespace

std::string emit_smtlib(const Formula& f, SolveMode mode) {
  (void)mode;  // the formula's sorts already reflect the mode
  std::ostringstream os;
  os << "(set-logic ALL)\n(assert (not ";
  std::map<std::string, Sort> scope;
  emit_formula(os, f, scope);
  os << "))\n(check-sat)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Model parsing
// ---------------------------------------------------------------------------

namespace {

struct SexpCursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (isspace((unsigned char)s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
};

std::optional<Rational> parse_value(SexpCursor& c);

std::optional<std::string> parse_atom(SexpCursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() && !isspace((unsigned char)c.s[c.i]) &&
         c.s[c.i] != '(' && c.s[c.i] != ')')
    ++c.i;
  if (c.i == start) return std::nullopt;
  return c.s.substr(start, c.i - start);
}

std::optional<Rational> atom_value(const std::string& a) {
  std::string t = a;
  if (!t.empty() && t.back() == '?') t.pop_back();
  bool neg = false;
  if (!t.empty() && t[0] == '-') {
    neg = true;
    t = t.substr(1);
  }
  auto q = parse_rational(t);
  if (!q) return std::nullopt;
  return neg ? Rational(-*q) : *q;
}

std::optional<Rational> parse_value(SexpCursor& c) {
  c.skip_ws();
  if (c.i >= c.s.size()) return std::nullopt;
  if (c.s[c.i] != '(') {
    auto a = parse_atom(c);
    if (!a) return std::nullopt;
    return atom_value(*a);
  }
  ++c.i;  // '('
  auto head = parse_atom(c);
  if (!head) return std::nullopt;
  std::optional<Rational> result;
  if (*head == "/") {
    auto num = parse_value(c);
    auto den = parse_value(c);
    if (num && den && *den != 0) result = *num / *den;
  } else if (*head == "-") {
    auto v = parse_value(c);
    c.skip_ws();
    if (c.i < c.s.size() && c.s[c.i] != ')') {
      auto w = parse_value(c);
      if (v && w) result = *v - *w;
    } else if (v) {
      result = -*v;
    }
  } else if (*head == "to_real" || *head == "to_int") {
    result = parse_value(c);
  }
  // Skip to the matching close paren.
  int depth = 1;
  while (c.i < c.s.size() && depth > 0) {
    if (c.s[c.i] == '(') ++depth;
    if (c.s[c.i] == ')') --depth;
    ++c.i;
  }
  return result;
}

}  // namespace

std::optional<Valuation> parse_model(const std::string& text, SolveMode mode) {
  Valuation val;
  val.mode = mode == SolveMode::Mixed ? ValMode::Standard : ValMode::Uniform;
  size_t pos = 0;
  bool any = false;
  const std::string key = "(define-fun ";
  while ((pos = text.find(key, pos)) != std::string::npos) {
    SexpCursor c{text, pos + key.size()};
    auto name = parse_atom(c);
    if (!name) return std::nullopt;
    c.skip_ws();
    // argument list: require "()" (zero-ary)
    if (c.i + 1 >= text.size() || text[c.i] != '(' || text[c.i + 1] != ')') {
      pos += key.size();
      continue;
    }
    c.i += 2;
    auto sort = parse_atom(c);
    if (!sort) return std::nullopt;
    auto value = parse_value(c);
    if (!value || *value < 0) return std::nullopt;
    val.values[*name] = ExtReal(*value);
    any = true;
    pos = c.i;
  }
  if (!any) return std::nullopt;
  return val;
}

// ---------------------------------------------------------------------------
// Solving
// ---------------------------------------------------------------------------

std::string effective_solver_command(const SolverConfig& cfg) {
  if (const char* env = std::getenv("SENSCHECK_SOLVER")) return env;
  return cfg.command;
}

namespace {

std::string first_token(const std::string& out) {
  size_t b = out.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = out.find_first_of(" \t\r\n", b);
  return out.substr(b, e == std::string::npos ? std::string::npos : e - b);
}

}  // namespace

Verdict solve(const Formula& f, const SolverConfig& cfg) {
  std::string cmd = effective_solver_command(cfg);
  if (cmd.empty() || cmd == "none")
    return Verdict::unknown(UnknownReason::SolverUnknown);

  std::string script = emit_smtlib(f, cfg.mode);
  ProcessResult res = run_process(cmd, script, cfg.timeout_seconds);
  if (res.timed_out) return Verdict::unknown(UnknownReason::Timeout);
  if (!res.started || res.exit_code != 0)
    return Verdict::unknown(UnknownReason::SolverUnknown);
  std::string answer = first_token(res.output);
  if (answer == "unsat") return Verdict::valid();
  if (answer != "sat") return Verdict::unknown(UnknownReason::SolverUnknown);

  // Counterexample: rerun with the universal prefix skolemized so the model
  // names our variables directly.
  Stripped s = strip_foralls(f);
  if (!quantifier_free(s.body))
    return Verdict::unknown(UnknownReason::SolverUnknown);
  ProcessResult wit =
      run_process(cmd, emit_skolemized(f, cfg.mode), cfg.timeout_seconds);
  if (wit.timed_out || !wit.started || first_token(wit.output) != "sat")
    return Verdict::unknown(UnknownReason::SolverUnknown);
  auto model = parse_model(wit.output, cfg.mode);
  if (!model) return Verdict::unknown(UnknownReason::SolverUnknown);
  // Unmentioned variables default to zero.
  for (const auto& [name, sort] : s.vars)
    if (!model->has(name)) model->values[name] = ExtReal::of(0);
  return Verdict::invalid(std::move(*model));
}

}  // namespace senscheck
