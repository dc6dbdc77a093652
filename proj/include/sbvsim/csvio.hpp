#pragma once

#include <string>
#include <vector>

namespace sbvsim {

/// Writes content to path via a temp file + rename; error paths never
/// leave a partial file behind.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// %.6g formatting used by every CSV emitter.
std::string format_sig6(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

CsvTable parse_csv(const std::string& text);

} // namespace sbvsim
