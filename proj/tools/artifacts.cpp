#include "artifacts.hpp"

#include <fstream>
#include <regex>

#include "iterfilt/error.hpp"
#include "iterfilt/version.hpp"

namespace iterfilt::cli {

namespace fs = std::filesystem;

namespace {

const std::regex kArtifactName(R"(^((imf_\d+|remainder|signal|filter|spectrum|c1_grid|cells|curve_e\d+)\.csv|manifest\.json)$)");

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << content;
    os.close();
    if (!os) throw Error(ErrorCode::io_error, "cannot write " + path.string());
}

}  // namespace

void publish(const fs::path& dir, const Artifacts& artifacts, Manifest manifest,
             std::chrono::steady_clock::time_point started) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot create " + dir.string() + ": " + ec.message());
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), kArtifactName)) {
            fs::remove(entry.path());
        }
    }

    Json files = Json::array();
    for (const auto& [name, content] : artifacts.files()) {
        write_file(dir / name, content);
        files.push_back(name);
    }

    Json j;
    j["command"] = manifest.command;
    j["argv"] = manifest.argv;
    j["version"] = std::string(kVersion);
    j["config"] = std::move(manifest.config);
    j["inputs"] = std::move(manifest.inputs);
    j["output_dir"] = dir.string();
    j["outputs"] = std::move(files);
    j["results"] = std::move(manifest.results);
    j["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_file(dir / "manifest.json", j.dump(2) + "\n");
}

}  // namespace iterfilt::cli
