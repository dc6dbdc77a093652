#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sbvsim {

/// Line-oriented `key = value` file with `[section]` headers and `#`
/// comments. Order within a section is preserved; duplicate keys and
/// syntax errors are reported with line numbers.
struct KvFile {
    struct Entry {
        std::string section;  // "" before the first header
        std::string key;
        std::string value;
        std::size_t line;
    };
    std::vector<Entry> entries;
    std::vector<std::string> sections;  // in order of first appearance

    bool has(const std::string& section, const std::string& key) const;
    const Entry* find(const std::string& section, const std::string& key) const;
};

KvFile parse_kv_text(const std::string& text, const std::string& origin);
KvFile parse_kv_file(const std::string& path);

double kv_double(const KvFile::Entry& e);
long long kv_int(const KvFile::Entry& e);
bool kv_bool(const KvFile::Entry& e);

} // namespace sbvsim
