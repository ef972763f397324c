// hurwitz: command-line front end for census, components, fibers,
// classify and validate jobs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hurwitz/hurwitz.hpp"
#include "hurwitz/io/job.hpp"
#include "hurwitz/io/report.hpp"
#include "hurwitz/io/run.hpp"

namespace {

using hurwitz::io::json;

struct GlobalFlags {
  std::string cache_dir;
  unsigned threads = 1;
  bool no_cache = false;
  std::string output;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hurwitz::Error(hurwitz::Errc::SchemaError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::filesystem::path> resolve_cache_dir(const GlobalFlags& flags) {
  if (flags.no_cache) return std::nullopt;
  if (!flags.cache_dir.empty()) return std::filesystem::path(flags.cache_dir);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "hurwitz";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "hurwitz";
  return std::nullopt;
}

void emit(const json& doc, const GlobalFlags& flags) {
  const std::string text = doc.dump(2) + "\n";
  if (flags.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(flags.output, std::ios::binary | std::ios::trunc);
  if (!out) throw hurwitz::Error(hurwitz::Errc::SchemaError, "cannot write " + flags.output);
  out << text;
}

json witness_json(const std::optional<hurwitz::Permutation>& p) {
  return p ? json(p->to_cycles()) : json(nullptr);
}

int run_report(const std::string& spec_path, const GlobalFlags& flags, bool census, bool components, bool fibers) {
  auto spec = hurwitz::io::parse_job(read_file(spec_path));
  hurwitz::io::RunOptions options;
  options.census = census;
  options.components = components;
  options.fibers = fibers;
  options.threads = flags.threads;
  options.cache_dir = resolve_cache_dir(flags);
  emit(hurwitz::io::to_json(hurwitz::io::run_job(spec, options)), flags);
  return 0;
}

int run_classify(const std::string& spec_path, const std::vector<std::string>& tuples, const GlobalFlags& flags) {
  auto spec = hurwitz::io::parse_job(read_file(spec_path));
  if (tuples.size() != 2) throw hurwitz::Error(hurwitz::Errc::SchemaError, "classify needs exactly two --tuple");
  auto t1 = hurwitz::parse_tuple(tuples[0], spec.degree, spec.base_genus);
  auto t2 = hurwitz::parse_tuple(tuples[1], spec.degree, spec.base_genus);
  hurwitz::SymmetryContext ctx(spec.group);

  json out;
  json validity = json::array();
  for (const auto* t : {&t1, &t2}) validity.push_back(hurwitz::validate_tuple(*t, spec.group).valid());
  out["valid"] = validity;
  auto pointed = hurwitz::are_pointed_equivalent(t1, t2, ctx);
  out["pointed"] = {{"equivalent", pointed.has_value()}, {"witness", witness_json(pointed)}};
  auto cover = hurwitz::are_cover_equivalent(t1, t2, ctx);
  json unpointed = {{"equivalent", cover.has_value()}};
  unpointed["witness"] = cover ? json(cover->sigma.to_cycles()) : json(nullptr);
  unpointed["witness_count"] = cover ? cover->count : 0;
  unpointed["unique"] = cover ? cover->unique() : false;
  out["unpointed"] = unpointed;
  emit(out, flags);
  return 0;
}

int run_validate(const std::string& spec_path, const std::vector<std::string>& tuples, const GlobalFlags& flags) {
  auto spec = hurwitz::io::parse_job(read_file(spec_path));
  hurwitz::SymmetryContext ctx(spec.group);
  json out;
  out["spec"] = hurwitz::io::to_json(spec);
  out["group_order"] = spec.group.order();
  out["transitive"] = hurwitz::is_transitive(spec.group);
  out["normalizer_order"] = ctx.normalizer().order();
  out["centralizer_order"] = ctx.centralizer().order();
  out["pointed_normalizer_order"] = ctx.pointed_normalizer().order();
  json checks = json::array();
  for (const auto& text : tuples) {
    auto t = hurwitz::parse_tuple(text, spec.degree, spec.base_genus);
    auto r = hurwitz::validate_tuple(t, spec.group);
    checks.push_back({{"tuple", t.to_strings()},
                      {"relation_holds", r.relation_holds},
                      {"no_trivial_branch", r.no_trivial_branch},
                      {"generates_group", r.generates_group},
                      {"group_transitive", r.group_transitive},
                      {"valid", r.valid()}});
  }
  out["tuples"] = checks;
  emit(out, flags);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz spaces of covers with prescribed monodromy group"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--cache-dir", flags.cache_dir, "Cache directory (default $XDG_CACHE_HOME/hurwitz)");
  app.add_option("--threads", flags.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--no-cache", flags.no_cache, "Neither read nor write the cache");
  app.add_option("--output", flags.output, "Write the JSON result here instead of stdout");

  std::string spec_path;
  std::vector<std::string> tuples;

  auto* census = app.add_subcommand("census", "Count tuples, pointed and unpointed classes");
  auto* components = app.add_subcommand("components", "Braid-orbit components at every level");
  auto* fibers = app.add_subcommand("fibers", "Per-class cover reports");
  auto* classify = app.add_subcommand("classify", "Pointed and unpointed equivalence of two tuples");
  auto* validate = app.add_subcommand("validate", "Check a job spec and optional tuples");
  for (auto* sub : {census, components, fibers, classify, validate})
    sub->add_option("spec", spec_path, "Job spec (JSON)")->required()->check(CLI::ExistingFile);
  classify->add_option("--tuple", tuples, "Tuple as 'e1;e2;...' (handles first)")->required()->expected(2);
  validate->add_option("--tuple", tuples, "Tuple as 'e1;e2;...' (handles first)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*census) return run_report(spec_path, flags, true, false, false);
    if (*components) return run_report(spec_path, flags, true, true, false);
    if (*fibers) return run_report(spec_path, flags, true, false, true);
    if (*classify) return run_classify(spec_path, tuples, flags);
    if (*validate) return run_validate(spec_path, tuples, flags);
  } catch (const hurwitz::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hurwitz::io::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
