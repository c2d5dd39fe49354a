#pragma once

#include <filesystem>
#include <memory>

#include "syntqa/selector/baselines.hpp"
#include "syntqa/selector/forest.hpp"

namespace syntqa {

inline constexpr int kModelFormatVersion = 1;

/// Versioned self-describing JSON; identical models serialize to identical
/// bytes.
void save_model(const SelectorModel& model, const std::filesystem::path& path);
std::string serialize_model(const SelectorModel& model);

std::unique_ptr<SelectorModel> load_model(const std::filesystem::path& path);
std::unique_ptr<SelectorModel> deserialize_model(const std::string& text);

}  // namespace syntqa
