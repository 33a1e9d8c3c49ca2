// bordered: command-line front end for the surface, algebra, module and diagram engines.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage, parse or
// file errors, 3 when an engine reports an error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bordered/commands.hpp"

namespace {

using bordered::RunReport;
namespace fs = std::filesystem;

struct Output {
  std::string json_path;
  bool timing = false;
};

int emit(RunReport r, const Output& out) {
  const std::string text = out.json_path.empty() ? bordered::render_text(r) : bordered::to_json(r).dump(2) + "\n";
  if (out.json_path.empty() || out.json_path == "-") {
    std::cout << text;
  } else {
    try {
      bordered::write_json_file(out.json_path, bordered::to_json(r));
    } catch (const bordered::Error& e) {
      std::cerr << "error[io]: " << e.what() << "\n";
      return 3;
    }
  }
  if (r.error_code) return *r.error_code == "parse" || *r.error_code == "io" ? 2 : 3;
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bordered Floer combinatorics: decorated surfaces, strands algebras, modules, nice diagrams"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--json", out.json_path, "write the JSON report to FILE ('-' for stdout)");
  app.add_flag("--timing", out.timing, "include wall-clock seconds in the report");

  std::string path, path2;
  std::optional<int> k;
  std::optional<fs::path> dump, out_file, complex_out;
  std::vector<std::string> checks;
  std::size_t z1 = 1, z2 = 1;
  std::optional<std::size_t> arc, over;
  std::optional<std::string> end;
  bool back = false, list = false, rank = false;
  long long i_phi = 0;
  std::string e_phi = "0";
  int levels = 1, kk = 0;
  int weight = -1, deep = -1;
  std::string manifest;

  auto* validate = app.add_subcommand("validate", "analyze a surface, diagram or module file");
  validate->add_option("file", path)->required()->check(CLI::ExistingFile);

  auto* algebra = app.add_subcommand("algebra", "build A(F, k) and check its laws");
  algebra->add_option("surface", path)->required()->check(CLI::ExistingFile);
  algebra->add_option("--k", k, "strand count")->required();
  algebra->add_option("--dump", dump, "write basis and structure constants");
  algebra->add_option("--check", checks, "all|d2|leibniz|assoc|closure|idempotents|expansion|op|directed");

  auto* opcheck = app.add_subcommand("op-check", "compare A(-F, k) with the opposite of A(F, k)");
  opcheck->add_option("surface", path)->required()->check(CLI::ExistingFile);
  opcheck->add_option("--k", k, "strand count (default: every k)");

  auto* consum = app.add_subcommand("consum", "boundary connected sum decomposition");
  consum->add_option("surface1", path)->required()->check(CLI::ExistingFile);
  consum->add_option("surface2", path2)->required()->check(CLI::ExistingFile);
  consum->add_option("--z1", z1, "z-mark of the first surface (1-based)");
  consum->add_option("--z2", z2, "z-mark of the second surface (1-based)");
  consum->add_option("--k", k, "strand count (default: every k)");

  auto* slide = app.add_subcommand("slide", "arc slide");
  slide->add_option("surface", path)->required()->check(CLI::ExistingFile);
  slide->add_option("--arc", arc, "arc to slide (1-based)");
  slide->add_option("--over", over, "arc slid over (1-based)");
  slide->add_option("--end", end, "endpoint id of the sliding arc adjacent to the other arc");
  slide->add_flag("--back", back, "perform the inverse slide");
  slide->add_flag("--list", list, "list available slides");
  slide->add_option("--out", out_file, "write the resulting surface");

  auto* hfhat = app.add_subcommand("hfhat", "CF-hat of a nice closed diagram");
  hfhat->add_option("diagram", path)->required()->check(CLI::ExistingFile);
  hfhat->add_option("--complex", complex_out, "write the chain complex");

  auto* euler = app.add_subcommand("euler", "Euler measure of a domain");
  euler->add_option("diagram", path)->required()->check(CLI::ExistingFile);
  euler->add_option("domain", path2)->required()->check(CLI::ExistingFile);

  auto* index = app.add_subcommand("index", "mu = i + 2e - (l - 1) k / 2");
  index->add_option("--i", i_phi)->required();
  index->add_option("--e", e_phi, "rational, e.g. 1/2")->required();
  index->add_option("--l", levels)->required();
  index->add_option("--k", kk)->required();

  auto* checkmod = app.add_subcommand("checkmod", "check a type A or type D module");
  checkmod->add_option("file", path)->required()->check(CLI::ExistingFile);

  auto* pair = app.add_subcommand("pair", "box tensor product of a type A and a type D module");
  pair->add_option("fileA", path)->required()->check(CLI::ExistingFile);
  pair->add_option("fileD", path2)->required()->check(CLI::ExistingFile);
  pair->add_flag("--rank", rank, "compute the homology rank");

  auto* mor = app.add_subcommand("mor", "morphism complex of two type A modules");
  mor->add_option("fileA1", path)->required()->check(CLI::ExistingFile);
  mor->add_option("fileA2", path2)->required()->check(CLI::ExistingFile);
  mor->add_flag("--rank", rank, "compute the homology rank");
  mor->add_option("--weight", weight, "input weight truncation (default: largest basis weight)");
  mor->add_option("--deep", deep, "comparison truncation for --rank (default: twice the weight)");

  auto* suite = app.add_subcommand("suite", "run a corpus manifest");
  suite->add_option("manifest", manifest)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  const auto t0 = std::chrono::steady_clock::now();
  RunReport r;
  try {
    if (sub == validate) r = bordered::cmd_validate(path);
    else if (sub == algebra) r = bordered::cmd_algebra(path, *k, dump, checks);
    else if (sub == opcheck) r = bordered::cmd_op_check(path, k);
    else if (sub == consum) r = bordered::cmd_consum(path, path2, z1, z2, k);
    else if (sub == slide) r = bordered::cmd_slide(path, arc, over, end, back, list, out_file);
    else if (sub == hfhat) r = bordered::cmd_hfhat(path, complex_out);
    else if (sub == euler) r = bordered::cmd_euler(path, path2);
    else if (sub == index) r = bordered::cmd_index(i_phi, e_phi, levels, kk);
    else if (sub == checkmod) r = bordered::cmd_checkmod(path);
    else if (sub == pair) r = bordered::cmd_pair(path, path2, rank);
    else if (sub == mor) r = bordered::cmd_mor(path, path2, rank, weight, deep);
    else if (sub == suite) r = bordered::cmd_suite(manifest);
  } catch (const bordered::Error& e) {
    r = RunReport{};
    r.command = sub->get_name();
    r.error_code = std::string(bordered::error_code_name(e.code()));
    r.error_message = e.what();
    if (e.code() == bordered::ErrorCode::Usage) {
      std::cerr << "error[usage]: " << e.what() << "\n" << sub->help();
      return 2;
    }
  }
  if (out.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(std::move(r), out);
}
