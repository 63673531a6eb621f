#pragma once

#include <string>
#include <vector>

namespace gaspect {

/// Process exit statuses shared by the command-line tool and the run_*
/// entry points.
enum ExitStatus : int {
  kExitOk = 0,
  kExitWeave = 1,   // multiplicity violations, conflicting attributes, bad advice values
  kExitUsage = 2,   // syntax errors in input files, unreadable files, bad arguments
  kExitInput = 3,   // the input text does not lex or parse
};

enum class RenderFormat { Ansi, Html };

struct Invocation {
  std::string grammar_path;
  /// Weave order follows this order.
  std::vector<std::string> aspect_paths;
  std::string lexer_path;
  std::string input_path;
  /// Empty means the grammar's first rule.
  std::string start;
  RenderFormat format = RenderFormat::Ansi;
  std::string palette_path;
  /// When false, ANSI rendering emits no escape sequences.
  bool color = true;
};

struct RunResult {
  int status = kExitOk;
  /// What the command produces; empty unless status is kExitOk.
  std::string output;
  /// One line per problem, without trailing newlines.
  std::vector<std::string> diagnostics;
  /// Non-fatal remarks (pretty-printer indentation underflow).
  std::vector<std::string> warnings;
};

RunResult run_check(const Invocation& inv);
/// Output is the woven-output JSON document.
RunResult run_weave(const Invocation& inv);
/// Output is ANSI text or a standalone HTML page.
RunResult run_highlight(const Invocation& inv);
RunResult run_format(const Invocation& inv);

}  // namespace gaspect
