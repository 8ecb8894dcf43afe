#pragma once

#include "labelforge/io.hpp"
#include "labelforge/scene_document.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace labelforge::testing {

inline std::string fixture_path(const std::string& name) { return std::string(LABELFORGE_FIXTURE_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(LABELFORGE_GOLDEN_DIR) + "/" + name; }

inline Scene load_scene(const std::string& name) { return parse_scene_document(read_file(fixture_path(name))); }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir()
    {
        std::random_device rd;
        const auto base = std::filesystem::temp_directory_path();
        do {
            path_ = base / ("labelforge-test-" + std::to_string(rd()));
        } while (std::filesystem::exists(path_));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace labelforge::testing
