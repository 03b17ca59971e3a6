#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace renyi::io {

/// Formats a double with 17 significant digits (round-trip safe, '.' decimal).
std::string format_double(double v);

/// Minimal CSV emitter: header row, then numeric rows.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::initializer_list<const char*> header);

    template <typename... Ts>
    void row(Ts... vs) {
        bool first = true;
        for (double v : {static_cast<double>(vs)...}) {
            if (!first) os_ << ',';
            os_ << format_double(v);
            first = false;
        }
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

} // namespace renyi::io
