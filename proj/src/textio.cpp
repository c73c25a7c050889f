#include "momentls/textio.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace momentls
{

std::vector<double> read_values(std::istream& in, const std::string& source)
{
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(first, last - first + 1);
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size() || errno == ERANGE || !std::isfinite(v))
            throw DataError(source + ":" + std::to_string(lineno) + ": not a finite number: '"
                            + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<double> read_values_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_values(in, path);
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_values(std::ostream& out, const std::vector<double>& values)
{
    for (double v : values) out << format_double(v) << '\n';
}

void write_values_file(const std::string& path, const std::vector<double>& values)
{
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    write_values(out, values);
}

} // namespace momentls
