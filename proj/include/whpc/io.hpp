#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "whpc/field.hpp"

namespace whpc {

/// Floats in CSV and report payloads carry 17 significant digits so that
/// re-runs reproduce byte-identical artifacts.
inline std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Plotting CSV: x[,y],Re v,Im v per grid point, row-major.
inline void write_csv(const periodic_field& v, std::ostream& os) {
    const auto& grid = v.grid();
    if (grid.d == 1) {
        os << "x,re,im\n";
        for (int i = 0; i < grid.n; ++i) {
            const auto& c = v.samples()[i];
            os << format_float(static_cast<double>(i) / grid.n) << ',' << format_float(c.real())
               << ',' << format_float(c.imag()) << '\n';
        }
        return;
    }
    os << "x1,x2,re,im\n";
    for (int i1 = 0; i1 < grid.n; ++i1)
        for (int i2 = 0; i2 < grid.n; ++i2) {
            const auto& c = v.samples()[static_cast<std::size_t>(i1) * grid.n + i2];
            os << format_float(static_cast<double>(i1) / grid.n) << ','
               << format_float(static_cast<double>(i2) / grid.n) << ',' << format_float(c.real())
               << ',' << format_float(c.imag()) << '\n';
        }
}

inline void write_csv(const periodic_field& v, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path);
    write_csv(v, os);
}

} // namespace whpc
