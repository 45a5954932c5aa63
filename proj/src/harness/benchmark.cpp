#include "hpcode/harness/benchmark.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hpcode/harness/subprocess.hpp"

namespace hpcode::harness {

namespace fs = std::filesystem;

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::CompileFail: return "compile_fail";
    case Verdict::RunFail: return "run_fail";
    case Verdict::OutputMismatch: return "output_mismatch";
    case Verdict::Timeout: return "timeout";
  }
  return "?";
}

BenchmarkSpec BenchmarkSpec::from_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read benchmark spec " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in);

  BenchmarkSpec spec;
  spec.name = doc.value("name", path.stem().string());
  for (const auto& source : doc.at("sources"))
    spec.sources.push_back(path.parent_path() / source.get<std::string>());
  spec.build = doc.at("build").get<std::string>();
  spec.run = doc.at("run").get<std::string>();
  if (doc.contains("expected_file"))
    spec.expected_file = path.parent_path() / doc["expected_file"].get<std::string>();
  else
    spec.expected_output = doc.value("expected_output", "");
  spec.timeout_s = doc.value("timeout_s", 600.0);
  if (doc.contains("env"))
    for (auto& [key, value] : doc["env"].items())
      spec.env[key] = value.get<std::string>();
  spec.numeric_compare = doc.value("compare", std::string("exact")) == "numeric";
  spec.rel_eps = doc.value("rel_eps", 1e-6);
  if (spec.build.find("{src}") == std::string::npos ||
      spec.build.find("{bin}") == std::string::npos)
    throw std::runtime_error(spec.name +
                             ": build template needs {src} and {bin}");
  if (spec.run.find("{bin}") == std::string::npos)
    throw std::runtime_error(spec.name + ": run template needs {bin}");
  if (spec.timeout_s <= 0)
    throw std::runtime_error(spec.name + ": timeout_s must be positive");
  return spec;
}

std::string BenchmarkSpec::expected() const {
  if (!expected_file) return expected_output;
  std::ifstream in(*expected_file, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read expected output " +
                             expected_file->string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

namespace {

std::string substitute(std::string text, std::string_view key,
                       const std::string& value) {
  std::string pattern = "{" + std::string(key) + "}";
  size_t pos = 0;
  while ((pos = text.find(pattern, pos)) != std::string::npos) {
    text.replace(pos, pattern.size(), value);
    pos += value.size();
  }
  return text;
}

bool numeric_lines_match(std::string_view expected, std::string_view actual,
                         double rel_eps) {
  std::istringstream exp_stream{std::string(expected)};
  std::istringstream act_stream{std::string(actual)};
  std::string exp_line, act_line;
  for (;;) {
    bool more_exp = (bool)std::getline(exp_stream, exp_line);
    bool more_act = (bool)std::getline(act_stream, act_line);
    if (more_exp != more_act) return false;
    if (!more_exp) return true;
    std::istringstream exp_tokens(exp_line), act_tokens(act_line);
    std::string e, a;
    for (;;) {
      bool te = (bool)(exp_tokens >> e);
      bool ta = (bool)(act_tokens >> a);
      if (te != ta) return false;
      if (!te) break;
      char* e_end = nullptr;
      char* a_end = nullptr;
      double ev = std::strtod(e.c_str(), &e_end);
      double av = std::strtod(a.c_str(), &a_end);
      bool e_num = e_end && *e_end == '\0' && e_end != e.c_str();
      bool a_num = a_end && *a_end == '\0' && a_end != a.c_str();
      if (e_num && a_num) {
        double scale = std::max({std::fabs(ev), std::fabs(av), 1.0});
        if (std::fabs(ev - av) > rel_eps * scale) return false;
      } else if (e != a) {
        return false;
      }
    }
  }
}

fs::path make_scratch_dir(const std::string& name) {
  static std::atomic<uint64_t> counter{0};
  fs::path dir = fs::temp_directory_path() /
                 ("hpcode-bench-" + name + "-" + std::to_string(getpid()) +
                  "-" + std::to_string(counter.fetch_add(1)));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

bool outputs_match(const BenchmarkSpec& bench, std::string_view actual) {
  std::string expected = bench.expected();
  if (bench.numeric_compare)
    return numeric_lines_match(expected, actual, bench.rel_eps);
  return expected == actual;
}

RunOutcome compile_and_run(const BenchmarkSpec& bench,
                           const std::vector<PatchedSource>& sources,
                           int threads, int repeats) {
  RunOutcome outcome;
  outcome.threads = threads;

  fs::path dir = make_scratch_dir(bench.name);
  struct Cleanup {
    fs::path dir;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  } cleanup{dir};

  // Materialize sources (patched text wins over the original file).
  std::vector<std::string> source_names;
  for (const auto& original : bench.sources) {
    fs::path dest = dir / original.filename();
    const PatchedSource* patch = nullptr;
    for (const auto& p : sources)
      if (p.path.filename() == original.filename()) patch = &p;
    if (patch) {
      std::ofstream out(dest, std::ios::binary);
      out << patch->text;
    } else {
      std::error_code ec;
      fs::copy_file(original, dest, fs::copy_options::overwrite_existing, ec);
      if (ec) {
        outcome.verdict = Verdict::CompileFail;
        outcome.diagnostics = "missing source " + original.string();
        return outcome;
      }
    }
    source_names.push_back(dest.filename().string());
  }

  std::string src_list;
  for (const auto& name : source_names) {
    if (!src_list.empty()) src_list += " ";
    src_list += name;
  }
  std::string bin = (dir / (bench.name + ".bin")).string();

  RunSpec build_spec;
  build_spec.command = substitute(substitute(bench.build, "src", src_list),
                                  "bin", bin);
  build_spec.cwd = dir;
  build_spec.timeout_s = std::max(bench.timeout_s, 60.0);
  RunResult build = run_command(build_spec);
  if (build.timed_out || build.exit_code != 0) {
    outcome.verdict = Verdict::CompileFail;
    outcome.diagnostics = build.stderr_text;
    return outcome;
  }

  RunSpec run_spec;
  run_spec.command = substitute(bench.run, "bin", bin);
  run_spec.cwd = dir;
  run_spec.timeout_s = bench.timeout_s;
  run_spec.env = bench.env;
  if (threads > 0)
    run_spec.env["OMP_NUM_THREADS"] = std::to_string(threads);
  else
    run_spec.unset_env.push_back("OMP_NUM_THREADS");

  std::vector<double> times;
  bool mismatch = false;
  std::string mismatch_note;
  for (int i = 0; i < repeats; ++i) {
    RunResult run = run_command(run_spec);
    if (run.timed_out) {
      outcome.verdict = Verdict::Timeout;
      outcome.diagnostics = "timed out after " +
                            std::to_string(bench.timeout_s) + "s";
      return outcome;
    }
    if (run.exit_code != 0) {
      outcome.verdict = Verdict::RunFail;
      outcome.diagnostics =
          "exit code " + std::to_string(run.exit_code) + "\n" + run.stderr_text;
      return outcome;
    }
    times.push_back(run.wall_s);
    if (!outputs_match(bench, run.stdout_text)) {
      mismatch = true;
      mismatch_note = run.stdout_text.substr(0, 512);
    }
  }

  std::sort(times.begin(), times.end());
  outcome.wall_time_s = times[times.size() / 2];
  if (mismatch) {
    outcome.verdict = Verdict::OutputMismatch;
    outcome.diagnostics = "stdout diverged from reference; got: " + mismatch_note;
  } else {
    outcome.verdict = Verdict::Pass;
  }
  return outcome;
}

}  // namespace hpcode::harness
