#pragma once

#include <atomic>
#include <filesystem>
#include <string>

// Scoped temp directory for file-based tests.
struct TmpDir {
    std::filesystem::path path;

    explicit TmpDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("dose_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TmpDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TmpDir(const TmpDir&) = delete;
    TmpDir& operator=(const TmpDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path / name; }
};
