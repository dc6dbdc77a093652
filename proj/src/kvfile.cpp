#include "sbvsim/kvfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sbvsim/errors.hpp"

namespace sbvsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& what) {
    std::ostringstream msg;
    msg << origin << ":" << line << ": " << what;
    throw validation_error(msg.str());
}

} // namespace

bool KvFile::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

const KvFile::Entry* KvFile::find(const std::string& section,
                                  const std::string& key) const {
    for (const auto& e : entries)
        if (e.section == section && e.key == key)
            return &e;
    return nullptr;
}

KvFile parse_kv_text(const std::string& text, const std::string& origin) {
    KvFile kv;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                fail(origin, line_no, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                fail(origin, line_no, "empty section name");
            if (std::find(kv.sections.begin(), kv.sections.end(), section) ==
                kv.sections.end())
                kv.sections.push_back(section);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(origin, line_no, "empty key");
        if (value.empty())
            fail(origin, line_no, "empty value for key '" + key + "'");
        for (const auto& e : kv.entries)
            if (e.section == section && e.key == key)
                fail(origin, line_no, "duplicate key '" + key + "'");
        kv.entries.push_back({section, key, value, line_no});
    }
    return kv;
}

KvFile parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str(), path);
}

double kv_double(const KvFile::Entry& e) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        std::ostringstream msg;
        msg << "line " << e.line << ": key '" << e.key << "': '" << e.value
            << "' is not a number";
        throw validation_error(msg.str());
    }
}

long long kv_int(const KvFile::Entry& e) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        std::ostringstream msg;
        msg << "line " << e.line << ": key '" << e.key << "': '" << e.value
            << "' is not an integer";
        throw validation_error(msg.str());
    }
}

bool kv_bool(const KvFile::Entry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "yes")
        return true;
    if (e.value == "false" || e.value == "0" || e.value == "no")
        return false;
    std::ostringstream msg;
    msg << "line " << e.line << ": key '" << e.key << "': '" << e.value
        << "' is not a boolean";
    throw validation_error(msg.str());
}

} // namespace sbvsim
