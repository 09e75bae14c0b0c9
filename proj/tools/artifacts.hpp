#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace iterfilt::cli {

using Json = nlohmann::ordered_json;

// Output files are rendered in memory first and only written once the whole
// command has succeeded, so a failing command leaves nothing behind.
class Artifacts {
public:
    void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }
    const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

private:
    std::vector<std::pair<std::string, std::string>> files_;
};

struct Manifest {
    std::string command;
    std::vector<std::string> argv;  // subcommand arguments without --output
    Json config = Json::object();
    Json inputs = Json::object();
    Json results = Json::object();
};

// Creates `dir`, drops artifacts left there by earlier runs, writes the files
// and a manifest.json listing them.
void publish(const std::filesystem::path& dir, const Artifacts& artifacts, Manifest manifest,
             std::chrono::steady_clock::time_point started);

}  // namespace iterfilt::cli
