#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace hfgrad::io {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace hfgrad::io
