#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hpcode/parse/functions.hpp"

namespace hpcode::testing {

// Directory holding the checked-in fixture files; set from CMake.
std::filesystem::path fixture_dir();

std::string read_file(const std::filesystem::path& path);

// Deterministic synthetic C functions covering loops, arrays, strings,
// branches, comments and calls.  Index selects the shape; the same index
// always yields the same function.
std::string synth_function(int index);

// A corpus of parsed FunctionUnits: every function from the checked-in
// fixture files plus `synth_count` synthetic ones.
std::vector<parse::FunctionUnit> fixture_corpus(int synth_count);

}  // namespace hpcode::testing
