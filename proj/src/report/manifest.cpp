#include "dhopf/report/output.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <stdexcept>

namespace dhopf::report {

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256_hex: digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

Manifest::Manifest(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

void Manifest::write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    entries_.emplace_back(name, sha256_hex(content));
}

void Manifest::finish(const std::string& command, const std::vector<std::string>& config_lines) {
    std::string text = "# dhopf run manifest\ncommand = " + command + "\n\n[config]\n";
    for (const auto& l : config_lines) {
        text += l + "\n";
    }
    text += "\n[files]\n";
    for (const auto& [name, hash] : entries_) {
        text += hash + "  " + name + "\n";
    }
    std::ofstream out(dir_ / "manifest.txt", std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write manifest in '" + dir_.string() + "'");
    }
}

}  // namespace dhopf::report
