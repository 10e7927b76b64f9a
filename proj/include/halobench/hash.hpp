#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace halobench {

// FNV-1a, 64 bit. Used for lexicon and run-file provenance hashes.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data);

// Hash of a file's raw bytes. Throws std::runtime_error if unreadable.
std::string file_hash_hex(const std::filesystem::path& path);

}  // namespace halobench
