#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rdfsupd/lexer.hpp"
#include "rdfsupd/pattern.hpp"
#include "rdfsupd/turtle.hpp"

namespace rdfsupd {

namespace syntax {

// Where a triple block appears; decides which atom forms are admitted.
enum class BlockContext { Where, Template, Data };

class SparqlParser {
 public:
  SparqlParser(std::string_view text, bool general) : lex_(text), general_(general) {}

  Query parse_query() {
    parse_prologue();
    const Token& t = lex_.peek();
    if (t.is_word("ASK") || t.is_word("CONSTRUCT") || t.is_word("DESCRIBE")) {
      throw UnsupportedFeature(t.text + " queries are not supported");
    }
    if (!t.is_word("SELECT")) lex_.fail("expected SELECT, found " + Lexer::describe(t));
    lex_.next();
    if (lex_.peek().is_word("DISTINCT") || lex_.peek().is_word("REDUCED")) lex_.next();

    Query q;
    bool star = false;
    std::vector<Token> var_tokens;
    if (lex_.peek().is_punct('*')) {
      lex_.next();
      star = true;
    } else {
      while (lex_.peek().kind == TokenKind::Var) var_tokens.push_back(lex_.next());
      if (lex_.peek().is_punct('(')) throw UnsupportedFeature("SELECT expressions are not supported");
      if (var_tokens.empty()) lex_.fail("expected '*' or a variable list after SELECT");
    }
    if (lex_.peek().is_word("FROM")) throw UnsupportedFeature("FROM clauses (datasets) are not supported");
    if (lex_.peek().is_word("WHERE")) lex_.next();
    q.where = parse_group();
    reject_solution_modifiers();
    if (lex_.peek().kind != TokenKind::End) lex_.fail("unexpected " + Lexer::describe(lex_.peek()));

    auto where_vars = vars_of(q.where);
    if (star) {
      q.select = where_vars;
    } else {
      for (const auto& vt : var_tokens) {
        Var v{vt.text};
        if (std::find(where_vars.begin(), where_vars.end(), v) == where_vars.end()) {
          Lexer::fail_at(vt, "selected variable ?" + vt.text + " does not occur in WHERE");
        }
        if (std::find(q.select.begin(), q.select.end(), v) == q.select.end()) q.select.push_back(v);
      }
    }
    return q;
  }

  std::vector<UpdateOperation> parse_updates() {
    std::vector<UpdateOperation> ops;
    for (;;) {
      parse_prologue();
      if (lex_.peek().kind == TokenKind::End) break;
      ops.push_back(parse_operation());
      if (lex_.peek().is_punct(';')) {
        lex_.next();
        continue;
      }
      if (lex_.peek().kind != TokenKind::End) lex_.fail("expected ';' or end of update, found " + Lexer::describe(lex_.peek()));
    }
    if (ops.empty()) lex_.fail("empty update request");
    return ops;
  }

 private:
  void parse_prologue() {
    for (;;) {
      const Token& t = lex_.peek();
      if (t.is_word("PREFIX")) {
        parse_prefix_decl(lex_, prefixes_, false);
      } else if (t.is_word("@prefix")) {
        parse_prefix_decl(lex_, prefixes_, true);
      } else if (t.is_word("BASE")) {
        throw UnsupportedFeature("BASE declarations are not supported");
      } else {
        return;
      }
    }
  }

  void reject_solution_modifiers() {
    static constexpr std::string_view kModifiers[] = {"ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING", "VALUES"};
    for (auto m : kModifiers) {
      if (lex_.peek().is_word(m)) throw UnsupportedFeature(std::string(m) + " is not supported");
    }
  }

  UpdateOperation parse_operation() {
    static constexpr std::string_view kGraphOps[] = {"LOAD", "CLEAR", "CREATE", "DROP", "COPY", "MOVE", "ADD", "WITH", "USING"};
    for (auto w : kGraphOps) {
      if (lex_.peek().is_word(w)) throw UnsupportedFeature(std::string(w) + " is not supported");
    }
    UpdateOperation op;
    if (lex_.peek().is_word("INSERT") || lex_.peek().is_word("DELETE")) {
      const Token kw = lex_.next();
      const bool is_insert = kw.is_word("INSERT");
      if (lex_.peek().is_word("DATA")) {
        lex_.next();
        Bgp data = parse_template(BlockContext::Data);
        (is_insert ? op.insert_template : op.delete_template) = data;
        return op;
      }
      if (!is_insert && lex_.peek().is_word("WHERE")) {
        lex_.next();
        Bgp tmpl = parse_template(BlockContext::Template);
        op.delete_template = tmpl;
        op.where = UnionPattern{tmpl};
        return op;
      }
      if (is_insert) {
        op.insert_template = parse_template(BlockContext::Template);
      } else {
        op.delete_template = parse_template(BlockContext::Template);
        if (lex_.peek().is_word("INSERT")) {
          lex_.next();
          op.insert_template = parse_template(BlockContext::Template);
        }
      }
      if (lex_.peek().is_word("USING")) throw UnsupportedFeature("USING is not supported");
      if (lex_.peek().is_word("WHERE")) {
        lex_.next();
        op.where = parse_group();
      }
      return op;
    }
    lex_.fail("expected INSERT or DELETE, found " + Lexer::describe(lex_.peek()));
  }

  Bgp parse_template(BlockContext ctx) {
    lex_.expect_punct('{');
    Bgp out;
    while (!lex_.peek().is_punct('}')) {
      if (lex_.peek().is_punct('.')) {
        lex_.next();
        continue;
      }
      if (lex_.peek().is_punct('{')) throw UnsupportedFeature("nested groups are not allowed in update templates");
      if (lex_.peek().is_word("GRAPH")) throw UnsupportedFeature("GRAPH is not supported");
      if (lex_.peek().kind == TokenKind::End) lex_.fail("unterminated template");
      parse_triples_same_subject(ctx, out);
    }
    lex_.next();
    return out;
  }

  UnionPattern parse_group() {
    lex_.expect_punct('{');
    UnionPattern acc = UnionPattern::unit();
    Bgp block;
    auto flush = [&] {
      if (!block.empty()) acc = join(acc, UnionPattern{block});
      block = Bgp{};
    };
    for (;;) {
      const Token& t = lex_.peek();
      if (t.is_punct('}')) break;
      if (t.kind == TokenKind::End) lex_.fail("unterminated group pattern");
      if (t.is_punct('.')) {
        lex_.next();
        continue;
      }
      if (t.is_punct('{')) {
        flush();
        UnionPattern alt = parse_group();
        while (lex_.peek().is_word("UNION")) {
          lex_.next();
          const UnionPattern next = parse_group();
          for (const auto& d : next.disjuncts()) alt.add(d);
        }
        acc = join(acc, alt);
        continue;
      }
      static constexpr std::string_view kUnsupported[] = {"OPTIONAL", "FILTER", "MINUS", "BIND", "VALUES",
                                                          "GRAPH", "SERVICE", "NOT", "EXISTS"};
      for (auto w : kUnsupported) {
        if (t.is_word(w)) throw UnsupportedFeature(std::string(w) + " is not supported");
      }
      parse_triples_same_subject(BlockContext::Where, block);
    }
    lex_.next();
    flush();
    return acc;
  }

  Term parse_term(BlockContext ctx) {
    const Token t = lex_.next();
    if (t.kind == TokenKind::Var) {
      if (ctx == BlockContext::Data) Lexer::fail_at(t, "variables are not allowed in DATA blocks");
      return Var{t.text};
    }
    if (t.kind == TokenKind::IriRef || t.kind == TokenKind::PName) return resolve_iri(t, prefixes_);
    detail::reject_term(t);
  }

  void parse_triples_same_subject(BlockContext ctx, Bgp& out) {
    Term subject = parse_term(ctx);
    for (;;) {
      Term predicate;
      bool star = false;
      const Token& vt = lex_.peek();
      if (vt.is_punct('^') || vt.is_punct('!') || vt.is_punct('(')) {
        throw UnsupportedFeature("property path '" + vt.text + "' is not supported");
      }
      if (vt.kind == TokenKind::Word && vt.text == "a") {
        lex_.next();
        predicate = Iri{vocab::kType};
      } else {
        predicate = parse_term(ctx);
      }
      const Token& mod = lex_.peek();
      if (mod.is_punct('*')) {
        lex_.next();
        star = true;
      } else if (mod.is_punct('+') || mod.is_punct('?') || mod.is_punct('/') || mod.is_punct('|')) {
        throw UnsupportedFeature("property path '" + mod.text + "' is not supported");
      }
      for (;;) {
        Term object = parse_term(ctx);
        add_atom(ctx, out, subject, predicate, star, object);
        if (!lex_.peek().is_punct(',')) break;
        lex_.next();
      }
      if (!lex_.peek().is_punct(';')) break;
      while (lex_.peek().is_punct(';')) lex_.next();
      const Token& n = lex_.peek();
      if (n.is_punct('.') || n.is_punct('}')) break;
    }
  }

  void add_atom(BlockContext ctx, Bgp& out, const Term& s, const Term& p, bool star, const Term& o) {
    if (star) {
      if (ctx != BlockContext::Where) throw UnsupportedFeature("property paths are only allowed in WHERE");
      if (!general_) throw GeneralOnlyPattern("property paths require a general BGP");
      if (!is_iri(p) || (as_iri(p).value != vocab::kSubClassOf && as_iri(p).value != vocab::kSubPropertyOf)) {
        throw UnsupportedFeature("'*' paths are only supported over rdfs:subClassOf and rdfs:subPropertyOf");
      }
      detail_require(s);
      detail_require(o);
      out.add(PathPattern{s, as_iri(p), o});
      return;
    }
    if (is_iri(p) && as_iri(p).value == vocab::kType && is_iri(o) && as_iri(o).value == vocab::kResource) {
      if (ctx != BlockContext::Where) throw NonStandardUse("rdfs:Resource may only be used as a WHERE binder");
      if (!is_var(s)) throw UnsupportedFeature("rdfs:Resource binders need a variable subject");
      out.add(AnyTerm{as_var(s)});
      return;
    }
    TriplePattern tp{s, p, o};
    validate_pattern(tp, general_);
    out.add(tp);
  }

  static void detail_require(const Term& t) {
    if (is_iri(t)) rdfsupd::detail::require_standard(as_iri(t), "path endpoint");
  }

  Lexer lex_;
  PrefixMap prefixes_;
  bool general_;
};

}  // namespace syntax

// SELECT query with a BGP or a UNION of BGPs. With `general`, TBox atoms,
// variables in any position and `p*` paths over the two subsumption
// predicates are admitted.
inline Query parse_query(std::string_view text, bool general = false) {
  return syntax::SparqlParser(text, general).parse_query();
}

// A `;`-separated sequence of update operations.
inline std::vector<UpdateOperation> parse_update_sequence(std::string_view text, bool general = false) {
  return syntax::SparqlParser(text, general).parse_updates();
}

inline UpdateOperation parse_update(std::string_view text, bool general = false) {
  auto ops = parse_update_sequence(text, general);
  if (ops.size() != 1) {
    throw Error("expected a single update operation, got " + std::to_string(ops.size()));
  }
  return ops.front();
}

// ---------------------------------------------------------------------------
// Rendering (display only; fresh variables print as ?x#k).

namespace syntax {

inline std::string render_term(const Term& t, const PrefixMap& prefixes) {
  if (is_var(t)) return "?" + as_var(t).name;
  return prefixes.compact(as_iri(t).value);
}

inline std::string render_atom(const Atom& atom, const PrefixMap& prefixes) {
  return std::visit(
      [&](const auto& a) -> std::string {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, TriplePattern>) {
          std::string pred = is_iri(a.predicate) && as_iri(a.predicate).value == vocab::kType
                                 ? std::string("a")
                                 : render_term(a.predicate, prefixes);
          return render_term(a.subject, prefixes) + " " + pred + " " + render_term(a.object, prefixes) + " .";
        } else if constexpr (std::is_same_v<A, PathPattern>) {
          return render_term(a.subject, prefixes) + " " + prefixes.compact(a.predicate.value) + "* " +
                 render_term(a.object, prefixes) + " .";
        } else {
          return "?" + a.var.name + " a rdfs:Resource .";
        }
      },
      atom);
}

inline std::string render_bgp(const Bgp& b, const PrefixMap& prefixes) {
  std::string out = "{";
  for (const auto& a : b.atoms()) out += " " + render_atom(a, prefixes);
  out += b.empty() ? "}" : " }";
  return out;
}

inline std::string render_union(const UnionPattern& u, const PrefixMap& prefixes) {
  if (u.size() == 1) return render_bgp(u.disjuncts().front(), prefixes);
  std::string out = "{ ";
  bool first = true;
  for (const auto& d : u.disjuncts()) {
    if (!first) out += " UNION ";
    out += render_bgp(d, prefixes);
    first = false;
  }
  return out + " }";
}

}  // namespace syntax

inline std::string to_sparql(const UpdateOperation& op) {
  syntax::PrefixMap prefixes;
  return "DELETE " + syntax::render_bgp(op.delete_template, prefixes) + "\nINSERT " +
         syntax::render_bgp(op.insert_template, prefixes) + "\nWHERE " +
         syntax::render_union(op.where, prefixes);
}

inline std::string to_sparql(const Query& q) {
  syntax::PrefixMap prefixes;
  std::string out = "SELECT";
  for (const auto& v : q.select) out += " ?" + v.name;
  return out + " WHERE " + syntax::render_union(q.where, prefixes);
}

}  // namespace rdfsupd
