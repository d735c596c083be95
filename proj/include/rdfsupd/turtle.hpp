#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rdfsupd/lexer.hpp"
#include "rdfsupd/model.hpp"

namespace rdfsupd {

namespace syntax::detail {

[[noreturn]] inline void reject_term(const Token& t) {
  switch (t.kind) {
    case TokenKind::Literal: throw UnsupportedFeature("literal " + t.text + " is outside the supported fragment");
    case TokenKind::BNode: throw UnsupportedFeature("blank node " + t.text + " is not supported");
    case TokenKind::Var: Lexer::fail_at(t, "variables are not allowed in Turtle data");
    default: break;
  }
  if (t.is_punct('[')) throw UnsupportedFeature("blank node property lists are not supported");
  if (t.is_punct('(')) throw UnsupportedFeature("RDF collections are not supported");
  if (t.is_word("true") || t.is_word("false")) throw UnsupportedFeature("literal " + t.text + " is outside the supported fragment");
  Lexer::fail_at(t, "expected an IRI, found " + Lexer::describe(t));
}

inline Iri turtle_term(Lexer& lex, const PrefixMap& prefixes) {
  const Token t = lex.next();
  if (t.kind == TokenKind::IriRef || t.kind == TokenKind::PName) return resolve_iri(t, prefixes);
  reject_term(t);
}

inline Iri turtle_verb(Lexer& lex, const PrefixMap& prefixes) {
  if (lex.peek().kind == TokenKind::Word && lex.peek().text == "a") {
    lex.next();
    return Iri{vocab::kType};
  }
  return turtle_term(lex, prefixes);
}

}  // namespace syntax::detail

// Parses the Turtle subset: @prefix/PREFIX, prefixed names, `a`, and the
// `;` / `,` abbreviations. The resulting store is Plain.
inline TripleStore parse_turtle(std::string_view text) {
  using namespace syntax;
  Lexer lex(text);
  PrefixMap prefixes;
  TripleStore store;

  while (lex.peek().kind != TokenKind::End) {
    const Token& t = lex.peek();
    if (t.is_word("@prefix")) {
      parse_prefix_decl(lex, prefixes, true);
      continue;
    }
    if (t.kind == TokenKind::Word && t.is_word("PREFIX")) {
      parse_prefix_decl(lex, prefixes, false);
      continue;
    }
    if (t.is_word("@base") || t.is_word("BASE")) throw UnsupportedFeature("base IRIs are not supported");

    Iri subject = syntax::detail::turtle_term(lex, prefixes);
    for (;;) {
      Iri predicate = syntax::detail::turtle_verb(lex, prefixes);
      for (;;) {
        Iri object = syntax::detail::turtle_term(lex, prefixes);
        store.insert(classify_triple({subject, predicate, object}));
        if (!lex.peek().is_punct(',')) break;
        lex.next();
      }
      if (!lex.peek().is_punct(';')) break;
      while (lex.peek().is_punct(';')) lex.next();
      if (lex.peek().is_punct('.')) break;
    }
    lex.expect_punct('.');
  }
  return store;
}

namespace syntax {

inline std::string render_triple(const Triple& t, const PrefixMap& prefixes) {
  std::string out = prefixes.compact(t.subject.value);
  out += ' ';
  out += t.predicate.value == vocab::kType ? std::string("a") : prefixes.compact(t.predicate.value);
  out += ' ';
  out += prefixes.compact(t.object.value);
  out += " .";
  return out;
}

}  // namespace syntax

// Deterministic serialization: prologue, then TBox axioms, then ABox
// assertions, each sorted by their full component IRIs.
inline std::string serialize_turtle(const TripleStore& store) {
  syntax::PrefixMap prefixes;
  std::ostringstream out;
  out << "@prefix rdf: <" << vocab::kRdfNs << "> .\n";
  out << "@prefix rdfs: <" << vocab::kRdfsNs << "> .\n";
  out << "@prefix : <" << vocab::kDefaultNs << "> .\n";

  auto emit = [&](std::vector<Triple> triples) {
    if (triples.empty()) return;
    std::sort(triples.begin(), triples.end());
    out << '\n';
    for (const auto& t : triples) out << syntax::render_triple(t, prefixes) << '\n';
  };

  std::vector<Triple> tbox;
  for (const auto& ax : store.tbox) tbox.push_back(to_triple(ax));
  emit(std::move(tbox));

  std::vector<Triple> abox;
  for (const auto& a : store.abox()) abox.push_back(to_triple(a));
  emit(std::move(abox));
  return out.str();
}

}  // namespace rdfsupd
