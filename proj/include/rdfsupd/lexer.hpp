#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdfsupd/errors.hpp"
#include "rdfsupd/model.hpp"

namespace rdfsupd::syntax {

enum class TokenKind {
  IriRef,   // <...>, text is the IRI without brackets
  PName,    // prefix:local, text is the whole name
  Var,      // ?name / $name, text is the name
  Word,     // bare keyword or `a`, `@prefix`
  Punct,    // single character
  Literal,  // quoted string or number
  BNode,    // _:label
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_punct(char c) const { return kind == TokenKind::Punct && text.size() == 1 && text[0] == c; }

  // Case-insensitive keyword match.
  bool is_word(std::string_view w) const {
    if (kind != TokenKind::Word || text.size() != w.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text[i])) !=
          std::toupper(static_cast<unsigned char>(w[i]))) {
        return false;
      }
    }
    return true;
  }
};

// Tokenizer shared by the Turtle and SPARQL-lite parsers. `#` starts a
// comment except inside IRIs and strings.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = std::move(current_);
    advance();
    return t;
  }

  // Character immediately after the current token (no whitespace skip).
  bool followed_by(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(current_, msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw SyntaxError(msg, t.line, t.column);
  }

  Token expect_punct(char c) {
    if (!current_.is_punct(c)) fail(std::string("expected '") + c + "', found " + describe(current_));
    return next();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::End: return "end of input";
      case TokenKind::IriRef: return "<" + t.text + ">";
      case TokenKind::Var: return "?" + t.text;
      default: return "'" + t.text + "'";
    }
  }

 private:
  static bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else {
        break;
      }
    }
  }

  // Local part of a prefixed name; a trailing '.' terminates the statement.
  std::string read_local() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == '.')) bump();
    while (pos_ > start && text_[pos_ - 1] == '.') {
      --pos_;
      --col_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void advance() {
    skip_space_and_comments();
    current_ = Token{};
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= text_.size()) {
      current_.kind = TokenKind::End;
      return;
    }
    char c = text_[pos_];
    std::size_t start = pos_;

    if (c == '<') {
      bump();
      while (pos_ < text_.size() && text_[pos_] != '>') {
        char d = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(d)) || d == '<' || d == '"' || d == '{' ||
            d == '}') {
          // Not an IRI: treat '<' as an operator (FILTER comparisons).
          pos_ = start + 1;
          col_ = current_.column + 1;
          current_.kind = TokenKind::Punct;
          current_.text = "<";
          return;
        }
        bump();
      }
      if (pos_ >= text_.size()) fail_at(current_, "unterminated IRI");
      current_.kind = TokenKind::IriRef;
      current_.text = std::string(text_.substr(start + 1, pos_ - start - 1));
      bump();
      return;
    }
    if ((c == '?' || c == '$') && is_name_char(at(pos_ + 1))) {
      bump();
      std::size_t s = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        bump();
      }
      if (pos_ == s) fail_at(current_, "empty variable name");
      if (at(pos_) == '#') fail_at(current_, "variable names may not use the reserved '#' namespace");
      current_.kind = TokenKind::Var;
      current_.text = std::string(text_.substr(s, pos_ - s));
      return;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      bump();
      while (pos_ < text_.size() && text_[pos_] != quote) {
        if (text_[pos_] == '\\') bump();
        if (pos_ < text_.size()) bump();
      }
      if (pos_ >= text_.size()) fail_at(current_, "unterminated string");
      bump();
      // Language tag or datatype suffix belongs to the literal.
      if (at(pos_) == '@') {
        bump();
        while (pos_ < text_.size() && (is_name_char(text_[pos_]))) bump();
      }
      current_.kind = TokenKind::Literal;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(at(pos_ + 1))))) {
      bump();
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '.' || text_[pos_] == 'e' ||
                                     text_[pos_] == 'E')) {
        if (text_[pos_] == '.' && !std::isdigit(static_cast<unsigned char>(at(pos_ + 1)))) break;
        bump();
      }
      current_.kind = TokenKind::Literal;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (c == '_' && at(pos_ + 1) == ':') {
      bump();
      bump();
      read_local();
      current_.kind = TokenKind::BNode;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (c == ':') {
      bump();
      current_.kind = TokenKind::PName;
      current_.text = ":" + read_local();
      return;
    }
    if (c == '@' || is_name_start(c)) {
      bump();
      while (pos_ < text_.size() && is_name_char(text_[pos_])) bump();
      // PN_PREFIX may contain inner dots.
      while (at(pos_) == '.' && is_name_char(at(pos_ + 1))) {
        bump();
        while (pos_ < text_.size() && is_name_char(text_[pos_])) bump();
      }
      if (c != '@' && at(pos_) == ':') {
        bump();
        std::string prefix(text_.substr(start, pos_ - start));
        current_.kind = TokenKind::PName;
        current_.text = prefix + read_local();
        return;
      }
      current_.kind = TokenKind::Word;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    bump();
    current_.kind = TokenKind::Punct;
    current_.text = std::string(1, c);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

// Prefix declarations in scope. The defaults are rdf:, rdfs: and an
// example-local `:`; user declarations override them.
class PrefixMap {
 public:
  PrefixMap() {
    map_["rdf"] = std::string(vocab::kRdfNs);
    map_["rdfs"] = std::string(vocab::kRdfsNs);
    map_[""] = std::string(vocab::kDefaultNs);
  }

  void declare(std::string prefix, std::string ns) { map_[std::move(prefix)] = std::move(ns); }

  std::optional<std::string> lookup(const std::string& prefix) const {
    auto it = map_.find(prefix);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  // Shortest prefixed form when the local part is a plain name, otherwise <iri>.
  std::string compact(const std::string& iri) const {
    const std::pair<const std::string, std::string>* best = nullptr;
    for (const auto& entry : map_) {
      const auto& ns = entry.second;
      if (ns.empty() || !iri.starts_with(ns)) continue;
      std::string_view local(iri);
      local.remove_prefix(ns.size());
      if (!plain_local(local)) continue;
      if (!best || ns.size() > best->second.size()) best = &entry;
    }
    if (!best) return "<" + iri + ">";
    return best->first + ":" + iri.substr(best->second.size());
  }

 private:
  static bool plain_local(std::string_view local) {
    if (local.empty()) return false;
    if (!std::isalnum(static_cast<unsigned char>(local.front())) && local.front() != '_') return false;
    for (char c : local) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
  }

  std::map<std::string, std::string> map_;
};

// Vocabulary IRIs are matched case-insensitively on the local name, so the
// common misspelling rdfs:subclassOf resolves to rdfs:subClassOf.
inline std::string canonical_vocabulary(std::string iri) {
  static const std::string* known[] = {&vocab::kType,  &vocab::kSubClassOf, &vocab::kSubPropertyOf,
                                       &vocab::kDomain, &vocab::kRange,     &vocab::kResource};
  for (const auto* k : known) {
    if (k->size() != iri.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < iri.size() && same; ++i) {
      same = std::tolower(static_cast<unsigned char>((*k)[i])) ==
             std::tolower(static_cast<unsigned char>(iri[i]));
    }
    if (same) return *k;
  }
  return iri;
}

inline bool is_absolute_iri(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = iri[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

// Resolves an IRI-valued token (IRIREF or prefixed name).
inline Iri resolve_iri(const Token& t, const PrefixMap& prefixes) {
  if (t.kind == TokenKind::IriRef) {
    if (!is_absolute_iri(t.text)) {
      throw UnsupportedFeature("relative IRI <" + t.text + "> (base IRIs are not supported)");
    }
    return Iri{canonical_vocabulary(t.text)};
  }
  auto colon = t.text.find(':');
  std::string prefix = t.text.substr(0, colon);
  auto ns = prefixes.lookup(prefix);
  if (!ns) Lexer::fail_at(t, "undeclared prefix '" + prefix + ":'");
  return Iri{canonical_vocabulary(*ns + t.text.substr(colon + 1))};
}

// `@prefix p: <ns> .` (Turtle) or `PREFIX p: <ns>` (SPARQL); the current
// token must be the keyword. Returns after consuming the declaration.
inline void parse_prefix_decl(Lexer& lex, PrefixMap& prefixes, bool turtle_style) {
  lex.next();
  const Token name = lex.next();
  if (name.kind != TokenKind::PName || name.text.back() != ':') {
    Lexer::fail_at(name, "expected prefix name ending in ':'");
  }
  const Token ns = lex.next();
  if (ns.kind != TokenKind::IriRef) Lexer::fail_at(ns, "expected namespace IRI");
  if (!is_absolute_iri(ns.text)) {
    throw UnsupportedFeature("relative namespace IRI <" + ns.text + ">");
  }
  prefixes.declare(name.text.substr(0, name.text.size() - 1), ns.text);
  if (turtle_style) lex.expect_punct('.');
}

}  // namespace rdfsupd::syntax
