#include "renyi/io/table.hpp"

#include <cstdio>

namespace renyi::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, std::initializer_list<const char*> header)
    : os_(os) {
    bool first = true;
    for (const char* h : header) {
        if (!first) os_ << ',';
        os_ << h;
        first = false;
    }
    os_ << '\n';
}

} // namespace renyi::io
