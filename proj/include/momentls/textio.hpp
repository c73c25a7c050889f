#ifndef MOMENTLS_TEXTIO_HPP
#define MOMENTLS_TEXTIO_HPP

// Plain-text sample files: one finite decimal per line.  Blank lines and
// lines starting with '#' are skipped.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace momentls
{

/// Thrown for malformed input files; the message names file and line.
class DataError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> read_values(std::istream& in, const std::string& source = "<stream>");
std::vector<double> read_values_file(const std::string& path);

void write_values(std::ostream& out, const std::vector<double>& values);
void write_values_file(const std::string& path, const std::vector<double>& values);

/// Shortest round-trip decimal representation (%.17g).
std::string format_double(double x);

} // namespace momentls

#endif // MOMENTLS_TEXTIO_HPP
