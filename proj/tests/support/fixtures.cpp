#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hpcode/corpus/corpus.hpp"

#ifndef HPCODE_FIXTURE_DIR
#error "HPCODE_FIXTURE_DIR must be defined by the build"
#endif

namespace hpcode::testing {

namespace fs = std::filesystem;

fs::path fixture_dir() { return fs::path(HPCODE_FIXTURE_DIR); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::string synth_function(int index) {
  int shape = index % 8;
  std::string n = std::to_string(index);
  std::ostringstream out;
  switch (shape) {
    case 0:
      out << "int sum_range_" << n << "(int lo, int hi) {\n"
          << "  int total = 0; // accumulate\n"
          << "  for (int i = lo; i < hi; i++) {\n"
          << "    total += i * " << (index + 3) << ";\n"
          << "  }\n  return total;\n}\n";
      break;
    case 1:
      out << "double scale_buf_" << n << "(double *buf, int n) {\n"
          << "  double factor = " << (index % 17) << ".5;\n"
          << "  /* scale every element */\n"
          << "  for (int i = 0; i < n; ++i) buf[i] = buf[i] * factor;\n"
          << "  return factor;\n}\n";
      break;
    case 2:
      out << "int table_lookup_" << n << "(int key) {\n"
          << "  int table[" << (8 + index % 5) << "] = {0};\n"
          << "  table[0] = " << (index * 7 % 100) << ";\n"
          << "  if (key > 0 && key < " << (8 + index % 5) << ") return table[key];\n"
          << "  return -1;\n}\n";
      break;
    case 3:
      out << "const char *label_of_" << n << "(int code) {\n"
          << "  // map the code to a label\n"
          << "  switch (code) {\n"
          << "    case 0: return \"zero/" << n << "\";\n"
          << "    case 1: return \"one\";\n"
          << "    default: return \"many // not a comment\";\n"
          << "  }\n}\n";
      break;
    case 4:
      out << "void saxpy_" << n << "(int n, float a, float *x, float *y) {\n"
          << "  for (int i = 0; i < n; i++) {\n"
          << "    y[i] = a * x[i] + y[i];\n"
          << "  }\n}\n";
      break;
    case 5:
      out << "long factorial_" << n << "(int k) {\n"
          << "  long acc = 1;\n"
          << "  while (k > 1) {\n    acc *= k;\n    k--;\n  }\n"
          << "  return acc;\n}\n";
      break;
    case 6:
      out << "int clamp_and_count_" << n << "(int *vals, int n, int lim) {\n"
          << "  int hits = 0;\n"
          << "  for (int i = 0; i < n; i++) {\n"
          << "    if (vals[i] > lim) { vals[i] = lim; hits++; }\n"
          << "  }\n  return hits;\n}\n";
      break;
    default:
      out << "double average_" << n << "(const double *xs, int n) {\n"
          << "  double s = 0.0;\n"
          << "  for (int i = 0; i < n; i++) s += xs[i];\n"
          << "  return n ? s / n : 0.0;\n}\n";
      break;
  }
  return std::move(out).str();
}

std::vector<parse::FunctionUnit> fixture_corpus(int synth_count) {
  std::vector<parse::FunctionUnit> units;

  auto files = corpus::ingest({fixture_dir() / "corpus"});
  for (const auto& file : files) {
    if (!file.language) continue;
    auto tree = parse::parse_source(file.bytes, *file.language);
    for (auto& unit : parse::extract_functions(tree, file.file_id()))
      units.push_back(std::move(unit));
  }

  for (int i = 0; i < synth_count; ++i) {
    std::string text = synth_function(i);
    auto tree = parse::parse_source(text, parse::Language::C);
    for (auto& unit : parse::extract_functions(tree, 0x5eedu + i))
      units.push_back(std::move(unit));
  }
  return units;
}

}  // namespace hpcode::testing
