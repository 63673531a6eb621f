#include "gaspect/pipeline.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "gaspect/aspect.hpp"
#include "gaspect/highlight.hpp"
#include "gaspect/lexer.hpp"
#include "gaspect/prettyprint.hpp"
#include "gaspect/runtime_parser.hpp"
#include "gaspect/woven.hpp"

namespace gaspect {

namespace {

// Thrown inside a run to abandon it with a status and one diagnostic.
struct Abort {
  int status;
  std::string message;
};

std::string read_file(const std::string& path, std::string_view what) {
  if (path.empty()) throw Abort{kExitUsage, "no " + std::string(what) + " file given"};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Abort{kExitUsage, path + ": cannot read " + std::string(what) + " file"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string position(const std::string& name, const SourceLoc& loc) {
  return name + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
}

std::string conflict_diagnostic(const ConflictError& e) {
  return position(e.incoming.provenance.aspect, e.incoming.attribute.loc) + e.what();
}

struct Woven {
  GrammarTree grammar;
  AnnotationStore store;
};

// Parses and weaves; weave failures are reported into `result` and yield
// nullopt.
std::optional<Woven> weave_inputs(const Invocation& inv, RunResult& result) {
  if (inv.aspect_paths.empty()) throw Abort{kExitUsage, "at least one aspect file is required"};
  GrammarTree grammar = parse_grammar(read_file(inv.grammar_path, "grammar"), inv.grammar_path);
  std::vector<Aspect> aspects;
  for (const auto& path : inv.aspect_paths) {
    aspects.push_back(parse_aspect(read_file(path, "aspect"), path));
  }
  WeaveResult woven = weave(grammar, aspects);
  if (!woven.ok()) {
    for (const auto& e : woven.errors) result.diagnostics.push_back(e.message());
    for (const auto& c : woven.conflicts) result.diagnostics.push_back(conflict_diagnostic(c));
    result.status = kExitWeave;
    return std::nullopt;
  }
  return Woven{std::move(grammar), std::move(woven.store)};
}

struct Parsed {
  std::string input;
  ParseTree tree;
};

Parsed parse_file(const Invocation& inv, const GrammarTree& grammar) {
  if (inv.lexer_path.empty()) throw Abort{kExitUsage, "a lexer specification (--lexer) is required"};
  LexerSpec spec = parse_lexer_spec(read_file(inv.lexer_path, "lexer"), inv.lexer_path);
  std::string input = read_file(inv.input_path, "input");
  std::string start = inv.start;
  if (start.empty()) {
    if (grammar.rules().empty()) throw Abort{kExitUsage, inv.grammar_path + ": grammar has no rules"};
    start = grammar.node(grammar.rules().front()).text;
  } else if (!grammar.find_rule(start)) {
    throw Abort{kExitUsage, "start symbol '" + start + "' is not defined in " + inv.grammar_path};
  }
  try {
    ParseTree tree = parse_input(grammar, start, tokenize(spec, grammar, input, inv.input_path));
    return Parsed{std::move(input), std::move(tree)};
  } catch (const ParseError& e) {
    throw Abort{kExitInput, position(inv.input_path, locate(input, e.offset)) + e.what()};
  }
}

template <typename Body>
RunResult guarded(Body body) {
  RunResult result;
  try {
    body(result);
  } catch (const Abort& a) {
    result.status = a.status;
    result.diagnostics.push_back(a.message);
  } catch (const SyntaxError& e) {
    result.status = kExitUsage;
    result.diagnostics.push_back(e.what());
  } catch (const LexError& e) {
    result.status = kExitInput;
    result.diagnostics.push_back(e.what());
  } catch (const WhitespaceError& e) {
    result.status = kExitWeave;
    result.diagnostics.push_back(e.what());
  }
  if (result.status != kExitOk) result.output.clear();
  return result;
}

}  // namespace

RunResult run_check(const Invocation& inv) {
  return guarded([&](RunResult& r) { weave_inputs(inv, r); });
}

RunResult run_weave(const Invocation& inv) {
  return guarded([&](RunResult& r) {
    if (auto w = weave_inputs(inv, r)) r.output = serialize_woven(w->grammar, w->store);
  });
}

RunResult run_highlight(const Invocation& inv) {
  return guarded([&](RunResult& r) {
    auto w = weave_inputs(inv, r);
    if (!w) return;
    Palette palette = default_palette();
    if (!inv.palette_path.empty()) {
      palette = parse_palette(read_file(inv.palette_path, "palette"), inv.palette_path);
    }
    Parsed p = parse_file(inv, w->grammar);
    auto spans = assign_groups(p.tree, w->store);
    if (inv.format == RenderFormat::Html) {
      r.output = render_html_document(p.input, spans, palette, inv.input_path);
    } else {
      r.output = render_ansi(p.input, spans, inv.color ? palette : Palette{});
    }
  });
}

RunResult run_format(const Invocation& inv) {
  return guarded([&](RunResult& r) {
    auto w = weave_inputs(inv, r);
    if (!w) return;
    Parsed p = parse_file(inv, w->grammar);
    r.output = format(p.tree, w->store, &r.warnings);
  });
}

}  // namespace gaspect
