// Command-line front end: rdfsupd {query|update|mat|red|check|diff}.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rdfsupd/rdfsupd.hpp"

namespace {

using namespace rdfsupd;

enum Exit { kOk = 0, kFailure = 1, kSyntax = 2, kUnsupported = 3, kMode = 4 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TripleStore load(const std::vector<std::string>& paths) {
  TripleStore merged;
  for (const auto& p : paths) {
    try {
      TripleStore part = parse_turtle(read_file(p));
      for (const auto& t : part.triples()) merged.insert(classify_triple(t));
    } catch (const SyntaxError&) {
      std::cerr << p << ": ";
      throw;
    }
  }
  return merged;
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::string text_or_file(const std::string& text, const std::string& file, const char* what) {
  if (!text.empty() && !file.empty()) throw CLI::ValidationError(std::string("give either --") + what + " or --file");
  if (!file.empty()) return read_file(file);
  if (text.empty()) throw CLI::ValidationError(std::string("missing --") + what + " or --file");
  return text;
}

std::vector<std::string> diff_lines(const TripleStore& before, const TripleStore& after) {
  const syntax::PrefixMap prefixes;
  const StoreDiff d = store_diff(before, after);
  std::vector<std::string> lines;
  auto add = [&](char sign, const auto& items) {
    for (const auto& x : items) lines.push_back(std::string(1, sign) + " " + syntax::render_triple(to_triple(x), prefixes));
  };
  add('-', d.removed_tbox);
  add('-', d.removed_abox);
  add('+', d.added_tbox);
  add('+', d.added_abox);
  std::sort(lines.begin(), lines.end());
  return lines;
}

// Tags the loaded store with the mode the user declared, or the one its
// content already satisfies when the declaration is "auto".
TripleStore tag_mode(TripleStore store, const std::string& mode, Semantics sem) {
  if (mode == "plain") return store;
  if (mode == "materialised" || mode == "reduced") {
    store.mode = mode == "materialised" ? StoreMode::Materialised : StoreMode::Reduced;
    if (auto v = invariant_violation(store); !v.empty()) throw ModeError("input does not match --mode " + mode + ": " + v);
    return store;
  }
  const bool m = is_materialised(store);
  const bool r = is_reduced(store);
  if (requires_materialised(sem) && m) {
    store.mode = StoreMode::Materialised;
  } else if (requires_reduced(sem) && r) {
    store.mode = StoreMode::Reduced;
  } else if (m) {
    store.mode = StoreMode::Materialised;
  } else if (r) {
    store.mode = StoreMode::Reduced;
  }
  return store;
}

std::string render_answers(const AnswerSet& ans) {
  const syntax::PrefixMap prefixes;
  std::ostringstream out;
  for (std::size_t i = 0; i < ans.vars.size(); ++i) out << (i ? "\t" : "") << "?" << ans.vars[i].name;
  out << "\n";
  std::vector<std::string> rows;
  for (const auto& row : ans.rows) {
    std::string line;
    for (std::size_t i = 0; i < ans.vars.size(); ++i) {
      if (i) line += "\t";
      auto it = row.find(ans.vars[i]);
      if (it != row.end()) line += prefixes.compact(it->second.value);
    }
    rows.push_back(std::move(line));
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) out << r << "\n";
  return out.str();
}

int guarded(const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kSyntax;
  } catch (const ModeError& e) {
    std::cerr << "mode error: " << e.what() << "\n";
    return kMode;
  } catch (const UnsupportedFeature& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const NonStandardUse& e) {
    std::cerr << "non-standard use: " << e.what() << "\n";
    return kUnsupported;
  } catch (const CLI::Error&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RDFS triple store with SPARQL-lite queries and updates under selectable semantics"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string out;
  std::string text;
  std::string file;
  bool general = false;

  auto* query = app.add_subcommand("query", "answer a SELECT query");
  std::string regime = "rdfs";
  std::string via = "rewrite";
  query->add_option("inputs", inputs, "Turtle files, merged in order")->check(CLI::ExistingFile);
  query->add_option("-e,--query", text, "query text");
  query->add_option("-f,--file", file, "file holding the query")->check(CLI::ExistingFile);
  query->add_option("--regime", regime, "entailment regime")->check(CLI::IsMember({"simple", "rdfs"}));
  query->add_option("--via", via, "RDFS strategy")->check(CLI::IsMember({"rewrite", "mat"}));
  query->add_flag("--general", general, "admit TBox atoms, variables anywhere and sc*/sp* paths");

  auto* update = app.add_subcommand("update", "run an update request under a semantics");
  std::string semantics = "naive";
  std::string mode = "auto";
  std::string where_regime = "default";
  bool show_diff = false;
  update->add_option("inputs", inputs, "Turtle files, merged in order")->check(CLI::ExistingFile);
  update->add_option("-e,--update", text, "update text (operations separated by ';')");
  update->add_option("-f,--file", file, "file holding the update")->check(CLI::ExistingFile);
  update->add_option("-s,--semantics", semantics,
                     "naive, mat0, mat1a, mat1b, mat2, red0, red1, outcut or incut");
  update->add_option("--mode", mode, "declared input mode")
      ->check(CLI::IsMember({"auto", "plain", "materialised", "reduced"}));
  update->add_option("--where-regime", where_regime, "override how WHERE is answered")
      ->check(CLI::IsMember({"default", "simple", "rdfs"}));
  update->add_flag("--general", general, "admit TBox triples and variables anywhere");
  update->add_flag("--diff", show_diff, "print +/- lines instead of the store");
  update->add_option("-o,--out", out, "write the resulting store here");

  auto* mat_cmd = app.add_subcommand("mat", "materialise");
  mat_cmd->add_option("inputs", inputs, "Turtle files")->check(CLI::ExistingFile);
  mat_cmd->add_option("-o,--out", out, "output file");

  auto* red_cmd = app.add_subcommand("red", "reduce");
  red_cmd->add_option("inputs", inputs, "Turtle files")->check(CLI::ExistingFile);
  red_cmd->add_option("-o,--out", out, "output file");

  auto* check = app.add_subcommand("check", "report whether the store is materialised and reduced");
  check->add_option("inputs", inputs, "Turtle files")->check(CLI::ExistingFile);

  auto* diff = app.add_subcommand("diff", "compare two stores");
  std::string before_path;
  std::string after_path;
  diff->add_option("before", before_path, "Turtle file")->required()->check(CLI::ExistingFile);
  diff->add_option("after", after_path, "Turtle file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*query) {
      return guarded([&] {
        const TripleStore store = load(inputs);
        const Query q = parse_query(text_or_file(text, file, "query"), general);
        const AnswerSet ans = answer(q, store, regime == "simple" ? Regime::Simple : Regime::Rdfs,
                                     via == "mat" ? Strategy::Materialization : Strategy::Rewriting);
        std::cout << render_answers(ans);
      });
    }
    if (*update) {
      return guarded([&] {
        const Semantics sem = parse_semantics(semantics);
        const auto ops = parse_update_sequence(text_or_file(text, file, "update"), general);
        const TripleStore input = tag_mode(load(inputs), mode, sem);
        RunOptions opts;
        if (where_regime == "simple") opts.where = WhereRegime::Simple;
        if (where_regime == "rdfs") opts.where = WhereRegime::Rdfs;
        const TripleStore result = run_sequence(input, ops, sem, opts);
        if (show_diff) {
          for (const auto& line : diff_lines(input, result)) std::cout << line << "\n";
          if (!out.empty()) write_output(out, serialize_turtle(result));
        } else {
          write_output(out, serialize_turtle(result));
        }
      });
    }
    if (*mat_cmd) return guarded([&] { write_output(out, serialize_turtle(mat(load(inputs)))); });
    if (*red_cmd) return guarded([&] { write_output(out, serialize_turtle(red(load(inputs)))); });
    if (*check) {
      return guarded([&] {
        const TripleStore store = load(inputs);
        std::cout << "materialised: " << (is_materialised(store) ? "yes" : "no")
                  << ", reduced: " << (is_reduced(store) ? "yes" : "no") << "\n";
      });
    }
    if (*diff) {
      return guarded([&] {
        for (const auto& line : diff_lines(load({before_path}), load({after_path}))) std::cout << line << "\n";
      });
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return kOk;
}
