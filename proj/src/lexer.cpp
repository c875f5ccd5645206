#include <cctype>

#include "senscheck/syntax.hpp"

namespace senscheck {

static const char* kKeywords[] = {
    "primitive", "check", "real", "nat", "forall", "size", "sens",
    "fun", "fix", "idxlam", "succ", "pi1", "pi2", "let", "in",
    "case", "return", "of", "max", "sup", "scase", "inf",
};

static bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords)
    if (s == k) return true;
  return false;
}

static bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

static bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto loc = [&]() { return SrcLoc{line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SrcLoc at = loc();
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word = text.substr(i, j - i);
      advance(j - i);
      out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Ident, word, at});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.' && j + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      } else if (j < text.size() && text[j] == '/' && j + 1 < text.size() &&
                 std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      std::string num = text.substr(i, j - i);
      advance(j - i);
      out.push_back({Tok::Number, num, at});
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == 'o') {
      advance(2);
      out.push_back({Tok::Lolli, "-o", at});
      continue;
    }
    if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
      advance(2);
      out.push_back({Tok::Arrow, "=>", at});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '<': kind = Tok::Lt; break;
      case '>': kind = Tok::Gt; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case ':': kind = Tok::Colon; break;
      case ';': kind = Tok::Semi; break;
      case '=': kind = Tok::Eq; break;
      case '+': kind = Tok::Plus; break;
      case '*': kind = Tok::Star; break;
      case '&': kind = Tok::Amp; break;
      case '!': kind = Tok::Bang; break;
      case '|': kind = Tok::Pipe; break;
      case '/': kind = Tok::Slash; break;
      default:
        throw Diag(at, std::string("unexpected character '") + c + "'");
    }
    advance(1);
    out.push_back({kind, std::string(1, c), at});
  }
  out.push_back({Tok::Eof, "<eof>", loc()});
  return out;
}

}  // namespace senscheck
