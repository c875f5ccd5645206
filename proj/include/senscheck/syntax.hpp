#ifndef SENSCHECK_SYNTAX_HPP
#define SENSCHECK_SYNTAX_HPP

#include <optional>
#include <string>
#include <vector>

#include "senscheck/ast.hpp"

namespace senscheck {

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class Tok {
  Ident, Number, Keyword,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Lt, Gt, Comma, Dot, Colon, Semi, Eq, Plus, Star, Amp, Bang, Pipe,
  Arrow,   // =>
  Lolli,   // -o
  Slash,
  Eof
};

struct Token {
  Tok kind;
  std::string text;
  SrcLoc loc;
};

/// Tokenizes the whole input. Throws Diag on lexical errors.
std::vector<Token> lex(const std::string& text);

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

struct SourceProgram {
  std::vector<std::pair<std::string, Type>> prelude;
  Term body;
  std::optional<Type> goal;  // present in check mode
};

struct ParseOptions {
  /// Allow max/sup/scase in annotation and type positions.
  bool allow_extended_annotations = false;
  /// Primitive names visible from externally loaded prelude files.
  std::vector<std::string> extern_prims;
};

SourceProgram parse_program(const std::string& text, const ParseOptions& opts = {});

/// A prelude file: primitive declarations only.
std::vector<std::pair<std::string, Type>> parse_prelude(
    const std::string& text, const ParseOptions& opts = {});

Sens parse_sens(const std::string& text);
Type parse_type(const std::string& text);

// ---------------------------------------------------------------------------
// Pretty printing
// ---------------------------------------------------------------------------

std::string pretty(const Sens& s);
std::string pretty(const Type& t);
std::string pretty(const Term& e);
std::string pretty(const Refinement& r);

struct Constraint;  // typing.hpp
std::string pretty(const Constraint& c);

}  // namespace senscheck

#endif
