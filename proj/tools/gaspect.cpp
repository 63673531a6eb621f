#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unistd.h>

#include "gaspect/pipeline.hpp"

namespace fs = std::filesystem;
using namespace gaspect;

namespace {

// Writes through a sibling temporary so a failed run never leaves a
// truncated file behind.
bool write_atomically(const std::string& path, const std::string& data) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size())) || !out.flush()) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

int finish(const RunResult& r, const std::string& out_path) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& d : r.diagnostics) std::cerr << d << "\n";
  if (r.status != kExitOk) return r.status;
  if (out_path.empty()) {
    std::cout << r.output << std::flush;
  } else if (!write_atomically(out_path, r.output)) {
    std::cerr << out_path << ": cannot write output\n";
    return kExitUsage;
  }
  return kExitOk;
}

bool color_enabled() {
  const char* no_color = std::getenv("NO_COLOR");
  return no_color == nullptr || *no_color == '\0';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaspect: weave grammar aspects and run the generated highlighter and pretty-printer"};
  app.require_subcommand(1);

  Invocation inv;
  std::vector<std::string> files;
  std::string out_path;
  std::string render = "ansi";

  auto* check = app.add_subcommand("check", "Weave and report multiplicity violations and conflicts");
  auto* weave = app.add_subcommand("weave", "Write the woven grammar as JSON");
  auto* highlight = app.add_subcommand("highlight", "Highlight an input file");
  auto* format = app.add_subcommand("format", "Pretty-print an input file");

  for (auto* sub : {check, weave}) {
    sub->add_option("files", files, "GRAMMAR ASPECT...")->required()->expected(2, -1);
  }
  weave->add_option("-o,--output", out_path, "Output file (default: stdout)");

  for (auto* sub : {highlight, format}) {
    sub->add_option("files", files, "GRAMMAR ASPECT... INPUT")->required()->expected(3, -1);
    sub->add_option("--lexer", inv.lexer_path, "Lexer specification");
    sub->add_option("--start", inv.start, "Start symbol (default: first grammar rule)");
    sub->add_option("-o,--output", out_path, "Output file (default: stdout)");
  }
  highlight->add_option("--format", render, "ansi or html")->check(CLI::IsMember({"ansi", "html"}));
  highlight->add_option("--palette", inv.palette_path, "Palette file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  inv.grammar_path = files.front();
  bool has_input = highlight->parsed() || format->parsed();
  auto last = has_input ? files.end() - 1 : files.end();
  inv.aspect_paths.assign(files.begin() + 1, last);
  if (has_input) inv.input_path = files.back();
  inv.format = render == "html" ? RenderFormat::Html : RenderFormat::Ansi;
  inv.color = color_enabled();

  if (check->parsed()) return finish(run_check(inv), {});
  if (weave->parsed()) return finish(run_weave(inv), out_path);
  if (highlight->parsed()) return finish(run_highlight(inv), out_path);
  return finish(run_format(inv), out_path);
}
