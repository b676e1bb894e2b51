#include "sosfit/dataset.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sosfit {

namespace {

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// "# n=13" (whitespace-tolerant); other comments return false.
bool parse_n_header(const std::string& comment, int* n_out) {
    std::size_t i = 1;  // past '#'
    while (i < comment.size() && std::isspace(static_cast<unsigned char>(comment[i]))) ++i;
    if (i >= comment.size() || (comment[i] != 'n' && comment[i] != 'N')) return false;
    ++i;
    while (i < comment.size() && std::isspace(static_cast<unsigned char>(comment[i]))) ++i;
    if (i >= comment.size() || comment[i] != '=') return false;
    ++i;
    const std::string rest = strip(comment.substr(i));
    if (rest.empty()) return false;
    char* end = nullptr;
    const long v = std::strtol(rest.c_str(), &end, 10);
    if (end == nullptr || *end != '\0' || v <= 0) return false;
    *n_out = static_cast<int>(v);
    return true;
}

}  // namespace

Dataset parse_dataset(const std::string& text, const std::string& origin) {
    Dataset d;
    d.path = origin;
    d.checksum = fnv1a(text);

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = strip(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            int n = 0;
            if (parse_n_header(t, &n)) {
                if (d.n_from_header) {
                    throw ParseError(origin + ": duplicate n= header", lineno);
                }
                d.n = n;
                d.n_from_header = true;
            }
            continue;
        }
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end == nullptr || *end != '\0') {
            throw ParseError(origin + ": line " + std::to_string(lineno) +
                                 ": expected a number, got '" + t + "'",
                             lineno);
        }
        d.times.push_back(v);
    }
    if (d.times.empty()) {
        throw ParseError(origin + ": no observations found");
    }
    if (!d.n_from_header) {
        d.n = static_cast<int>(d.times.size());
    }
    return d;
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open dataset: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), path);
}

SosSample dataset_sample(const Dataset& d) { return SosSample::validate(d.times, d.n); }

}  // namespace sosfit
