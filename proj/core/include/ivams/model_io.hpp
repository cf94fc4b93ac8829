#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivams/metamodel.hpp"

namespace ivams {

/// A metamodel as stored on disk, with the design-variable names that define
/// its input column order.
struct ModelFile {
  Metamodel model;
  std::vector<std::string> variable_names;
};

std::string to_json_text(const ModelFile& file);
ModelFile model_from_json_text(std::string_view text);

void save_model(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace ivams
