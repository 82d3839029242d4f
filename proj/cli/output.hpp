#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hkc::cli {

// printf("%.12e")
std::string format_number(double value);

// Accumulates a CSV document with one header row.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(std::string_view text);
  void end_row();
  const std::string& str() const { return text_; }

 private:
  void separator();
  std::string text_;
  bool row_open_ = false;
};

std::string sha256_hex(std::string_view data);

// Writes through a temporary file in the same directory and renames it into
// place. Throws IoError naming the path on failure.
void write_atomic(const std::filesystem::path& path, std::string_view content);

struct OutputFile {
  std::string name;
  std::uintmax_t bytes = 0;
  std::string sha256;
};

OutputFile write_output(const std::filesystem::path& dir, const std::string& name,
                        std::string_view content);

struct RunManifest {
  std::string command;
  nlohmann::json parameters;
  double duration_seconds = 0.0;
  std::vector<OutputFile> outputs;

  nlohmann::json to_json() const;
};

// <dir>/<command>.manifest.json, written last.
std::filesystem::path write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace hkc::cli
