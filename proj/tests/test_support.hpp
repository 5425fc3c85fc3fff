#pragma once

#include <string>

#include "srlproj/lang/parser.hpp"

namespace srlproj::testing {

inline std::string model_path(const std::string& file) { return std::string(SRLPROJ_MODELS_DIR) + "/" + file; }

inline ModelSpec load_fixture(const std::string& file) { return load_model_file(model_path(file)); }

template <typename Spec>
Spec load_fixture_as(const std::string& file) {
  return std::get<Spec>(load_fixture(file));
}

}  // namespace srlproj::testing
