#pragma once

// File formats and rendering.
//
// Signal files: UTF-8 text, one "re im" pair per line, '#' comments, optional
// "dim=N" header line.
//
// Grid files: header lines "kind=", "M=", "mu=", "order=", "normalization=",
// "version=", then M rows of M whitespace-separated values, row = q (or m for
// kernels). Floats print with 17 significant digits, so writes are bit-exact
// reproducible and parse back to the same doubles.
//
// Density-matrix files: the same header scheme with kind=rho, then M rows of
// 2M values (re im per entry).

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thetaphase/common.hpp"
#include "thetaphase/hilbert.hpp"
#include "thetaphase/version.hpp"

namespace thetaphase {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, long line, long long offset)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", byte offset " +
                             std::to_string(offset) + ")"),
          line_number(line),
          byte_offset(offset) {}
    long line_number;
    long long byte_offset;
};

// 17 significant digits: lossless double round-trip, byte-stable output.
inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct SignalFile {
    std::vector<cplx> samples;
    std::optional<int> declared_dim;
    std::string label;
};

inline SignalFile parse_signal_text(const std::string& text, const std::string& label = "") {
    SignalFile sig;
    sig.label = label;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    long long offset = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const long long line_start = offset;
        offset += static_cast<long long>(line.size()) + 1;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        size_t end = line.find_last_not_of(" \t\r");
        const std::string body = line.substr(begin, end - begin + 1);
        if (body.rfind("dim=", 0) == 0) {
            try {
                sig.declared_dim = std::stoi(body.substr(4));
            } catch (...) {
                throw ParseError("invalid dim= header", line_no, line_start);
            }
            continue;
        }
        std::istringstream fields(body);
        double re = 0.0, im = 0.0;
        std::string extra;
        if (!(fields >> re >> im) || (fields >> extra))
            throw ParseError("expected one 're im' pair", line_no, line_start);
        sig.samples.emplace_back(re, im);
    }
    if (sig.declared_dim && *sig.declared_dim != static_cast<int>(sig.samples.size()))
        throw ParseError("sample count " + std::to_string(sig.samples.size()) +
                             " does not match dim=" + std::to_string(*sig.declared_dim),
                         line_no, offset);
    if (sig.samples.empty())
        throw ParseError("no samples", line_no, offset);
    return sig;
}

inline SignalFile read_signal_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open signal file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_signal_text(buf.str(), path);
}

enum class GridKind { wigner, q, kernel_f, kernel_k };

inline const char* grid_kind_name(GridKind k) {
    switch (k) {
        case GridKind::wigner: return "wigner";
        case GridKind::q: return "q";
        case GridKind::kernel_f: return "kernel_F";
        case GridKind::kernel_k: return "kernel_K";
    }
    return "?";
}

struct GridFile {
    GridKind kind = GridKind::wigner;
    int m_dim = 0;
    double mu = 0.0;            // 0 when not applicable (wigner grids)
    std::string order;          // "qp" for phase-space grids, "mn" for kernels
    std::string normalization;  // "none", "raw" or "unit"
    std::string version;
    std::vector<double> values;  // row-major, M x M

    double at(int r, int c) const { return values[static_cast<size_t>(r) * m_dim + c]; }
};

inline std::string write_grid_text(const GridFile& grid) {
    std::ostringstream out;
    out << "kind=" << grid_kind_name(grid.kind) << "\n";
    out << "M=" << grid.m_dim << "\n";
    out << "mu=" << fmt_g17(grid.mu) << "\n";
    out << "order=" << grid.order << "\n";
    out << "normalization=" << grid.normalization << "\n";
    out << "version=" << grid.version << "\n";
    for (int r = 0; r < grid.m_dim; ++r) {
        for (int c = 0; c < grid.m_dim; ++c) {
            if (c)
                out << ' ';
            out << fmt_g17(grid.at(r, c));
        }
        out << '\n';
    }
    return out.str();
}

namespace detail {

struct HeaderCursor {
    std::istringstream in;
    long line_no = 0;
    long long offset = 0;

    bool next_line(std::string& line) {
        if (!std::getline(in, line))
            return false;
        ++line_no;
        offset += static_cast<long long>(line.size()) + 1;
        return true;
    }
};

inline std::string expect_header(HeaderCursor& cur, const std::string& key) {
    std::string line;
    if (!cur.next_line(line))
        throw ParseError("missing header line '" + key + "='", cur.line_no, cur.offset);
    if (line.rfind(key + "=", 0) != 0)
        throw ParseError("expected header '" + key + "=', got '" + line + "'", cur.line_no,
                         cur.offset - static_cast<long long>(line.size()) - 1);
    return line.substr(key.size() + 1);
}

} // namespace detail

inline GridFile parse_grid_text(const std::string& text) {
    detail::HeaderCursor cur;
    cur.in.str(text);
    GridFile grid;

    const std::string kind = detail::expect_header(cur, "kind");
    if (kind == "wigner")
        grid.kind = GridKind::wigner;
    else if (kind == "q")
        grid.kind = GridKind::q;
    else if (kind == "kernel_F")
        grid.kind = GridKind::kernel_f;
    else if (kind == "kernel_K")
        grid.kind = GridKind::kernel_k;
    else
        throw ParseError("unknown grid kind '" + kind + "'", cur.line_no, 0);

    try {
        grid.m_dim = std::stoi(detail::expect_header(cur, "M"));
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("invalid M= header", cur.line_no, cur.offset);
    }
    if (grid.m_dim < 2)
        throw ParseError("M must be >= 2", cur.line_no, cur.offset);
    try {
        grid.mu = std::stod(detail::expect_header(cur, "mu"));
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("invalid mu= header", cur.line_no, cur.offset);
    }
    grid.order = detail::expect_header(cur, "order");
    grid.normalization = detail::expect_header(cur, "normalization");
    grid.version = detail::expect_header(cur, "version");

    grid.values.reserve(static_cast<size_t>(grid.m_dim) * grid.m_dim);
    for (int r = 0; r < grid.m_dim; ++r) {
        std::string line;
        if (!cur.next_line(line))
            throw ParseError("truncated grid: expected " + std::to_string(grid.m_dim) +
                                 " rows, got " + std::to_string(r),
                             cur.line_no, cur.offset);
        const long long line_start = cur.offset - static_cast<long long>(line.size()) - 1;
        std::istringstream fields(line);
        for (int c = 0; c < grid.m_dim; ++c) {
            double v = 0.0;
            if (!(fields >> v))
                throw ParseError("truncated row: expected " + std::to_string(grid.m_dim) +
                                     " values",
                                 cur.line_no, line_start);
            grid.values.push_back(v);
        }
        std::string extra;
        if (fields >> extra)
            throw ParseError("trailing data in grid row", cur.line_no, line_start);
    }
    return grid;
}

inline GridFile read_grid_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open grid file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grid_text(buf.str());
}

// Complex matrix file: kind=rho header, then M rows of 2M values (re im pairs).
inline std::string write_matrix_text(const OperatorMatrix& rho) {
    std::ostringstream out;
    out << "kind=rho\n";
    out << "M=" << rho.dim.m() << "\n";
    out << "version=" << kVersion << "\n";
    for (int r = 0; r < rho.dim.m(); ++r) {
        for (int c = 0; c < rho.dim.m(); ++c) {
            if (c)
                out << ' ';
            out << fmt_g17(rho.at(r, c).real()) << ' ' << fmt_g17(rho.at(r, c).imag());
        }
        out << '\n';
    }
    return out.str();
}

inline OperatorMatrix parse_matrix_text(const std::string& text) {
    detail::HeaderCursor cur;
    cur.in.str(text);
    const std::string kind = detail::expect_header(cur, "kind");
    if (kind != "rho")
        throw ParseError("expected kind=rho", cur.line_no, 0);
    int m_dim = 0;
    try {
        m_dim = std::stoi(detail::expect_header(cur, "M"));
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("invalid M= header", cur.line_no, cur.offset);
    }
    detail::expect_header(cur, "version");
    OperatorMatrix rho{SpaceDim(m_dim)};
    for (int r = 0; r < m_dim; ++r) {
        std::string line;
        if (!cur.next_line(line))
            throw ParseError("truncated matrix", cur.line_no, cur.offset);
        std::istringstream fields(line);
        for (int c = 0; c < m_dim; ++c) {
            double re = 0.0, im = 0.0;
            if (!(fields >> re >> im))
                throw ParseError("truncated matrix row", cur.line_no, cur.offset);
            rho.at(r, c) = cplx{re, im};
        }
    }
    return rho;
}

// ---- rendering --------------------------------------------------------------

// 8-bit binary PGM, one pixel per cell, min-max scaled, q as rows. A constant
// grid renders mid-gray; the caller is told so a warning can be printed.
struct RenderResult {
    std::string data;
    bool degenerate = false;
};

inline RenderResult render_pgm(const GridFile& grid) {
    RenderResult res;
    double lo = grid.values.front(), hi = grid.values.front();
    for (double v : grid.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    res.degenerate = !(hi > lo);
    std::ostringstream out;
    out << "P5\n" << grid.m_dim << ' ' << grid.m_dim << "\n255\n";
    for (double v : grid.values) {
        const double t = res.degenerate ? 0.5 : (v - lo) / (hi - lo);
        out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
    }
    res.data = out.str();
    return res;
}

inline RenderResult render_ascii(const GridFile& grid) {
    static const char ramp[] = " .:-=+*#%@";  // 10 levels
    RenderResult res;
    double lo = grid.values.front(), hi = grid.values.front();
    for (double v : grid.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    res.degenerate = !(hi > lo);
    std::ostringstream out;
    for (int r = 0; r < grid.m_dim; ++r) {
        for (int c = 0; c < grid.m_dim; ++c) {
            const double v = grid.at(r, c);
            const double t = res.degenerate ? 0.5 : (v - lo) / (hi - lo);
            int level = static_cast<int>(t * 10.0);
            level = std::min(level, 9);
            out.put(ramp[level]);
        }
        out.put('\n');
    }
    res.data = out.str();
    return res;
}

} // namespace thetaphase
