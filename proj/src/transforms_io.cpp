#include "anomidx/transforms_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "anomidx/error.hpp"

namespace anomidx {

namespace fs = std::filesystem;

namespace {

void require_length(const Series& s, std::size_t needed) {
    if (s.values.size() < needed) {
        throw Error(ErrorKind::TooFewPoints, "series '" + s.name + "' needs at least " +
                                                 std::to_string(needed) + " values");
    }
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

bool is_index(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

std::size_t resolve_column(const std::string& column, const std::vector<std::string>& header,
                           const fs::path& path) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == column) {
            return i;
        }
    }
    if (is_index(column)) {
        return std::stoul(column);
    }
    throw Error(ErrorKind::ParseError,
                path.string() + ": no column named '" + column + "' in the header");
}

}  // namespace

Series percentage_returns(const Series& s) {
    require_length(s, 2);
    Series out{{}, s.name + "_returns"};
    out.values.reserve(s.values.size() - 1);
    for (std::size_t t = 1; t < s.values.size(); ++t) {
        const double base = s.values[t - 1];
        if (base == 0.0) {
            throw Error(ErrorKind::ZeroBase, "series '" + s.name + "' has a zero value at index " +
                                                 std::to_string(t - 1));
        }
        out.values.push_back(100.0 * (s.values[t] - base) / base);
    }
    return out;
}

Series lag_difference(const Series& s, std::size_t lag) {
    if (lag < 1) {
        throw Error(ErrorKind::InvalidSpec, "difference lag must be >= 1");
    }
    require_length(s, lag + 1);
    Series out{{}, s.name + "_diff" + std::to_string(lag)};
    out.values.reserve(s.values.size() - lag);
    for (std::size_t t = lag; t < s.values.size(); ++t) {
        out.values.push_back(s.values[t] - s.values[t - lag]);
    }
    return out;
}

Transform Transform::parse(const std::string& text) {
    if (text == "none") return {Kind::None, 1};
    if (text == "returns") return {Kind::Returns, 1};
    if (text.starts_with("diff:")) {
        const std::string lag = text.substr(5);
        if (is_index(lag) && std::stoul(lag) >= 1) {
            return {Kind::Difference, std::stoul(lag)};
        }
    }
    throw Error(ErrorKind::InvalidSpec,
                "unknown transform '" + text + "' (expected none, returns or diff:<k>)");
}

std::string Transform::to_string() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Returns: return "returns";
        case Kind::Difference: return "diff:" + std::to_string(lag);
    }
    return "none";
}

Series Transform::apply(const Series& s) const {
    switch (kind) {
        case Kind::None: return s;
        case Kind::Returns: return percentage_returns(s);
        case Kind::Difference: return lag_difference(s, lag);
    }
    return s;
}

PairedSample apply_transform(const Transform& transform, const PairedSample& sample) {
    const Series x{{sample.x().begin(), sample.x().end()}, "x"};
    const Series y{{sample.y().begin(), sample.y().end()}, "y"};
    return PairedSample(transform.apply(x).values, transform.apply(y).values, sample.label());
}

std::string format_double(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    if (!t.empty() && *begin == '+') {
        ++begin;
    }
    const auto result = std::from_chars(begin, end, v);
    if (t.empty() || result.ec != std::errc() || result.ptr != end) {
        throw Error(ErrorKind::ParseError, "'" + text + "' is not a number");
    }
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::NonFiniteValue, "'" + text + "' is not finite");
    }
    return v;
}

PairedSample read_pairs_csv(const fs::path& path, const std::string& x_column,
                            const std::string& y_column, bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::FileNotFound, path.string() + ": cannot open file");
    }
    std::vector<double> x;
    std::vector<double> y;
    std::optional<std::pair<std::size_t, std::size_t>> columns;
    if (!has_header) {
        if (!is_index(x_column) || !is_index(y_column)) {
            throw Error(ErrorKind::ParseError,
                        path.string() + ": columns must be 0-based indices without a header");
        }
        columns = std::pair{std::stoul(x_column), std::stoul(y_column)};
    }

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_row(line);
        if (!columns) {
            columns = std::pair{resolve_column(x_column, cells, path),
                                resolve_column(y_column, cells, path)};
            continue;
        }
        const auto [xc, yc] = *columns;
        auto cell = [&](std::size_t c) {
            if (c >= cells.size()) {
                throw Error(ErrorKind::LengthMismatch, path.string() + ": row " +
                                                           std::to_string(row) + " has no column " +
                                                           std::to_string(c));
            }
            try {
                return parse_double(cells[c]);
            } catch (const Error& e) {
                throw Error(e.kind(), path.string() + ": row " + std::to_string(row) +
                                          ", column " + std::to_string(c) + ": " + e.what());
            }
        };
        x.push_back(cell(xc));
        y.push_back(cell(yc));
    }
    if (x.empty()) {
        throw Error(ErrorKind::EmptySample, path.string() + ": no data rows");
    }
    return PairedSample(std::move(x), std::move(y), path.filename().string());
}

std::string curve_csv(const IndexCurve& curve) {
    std::string out = "n,I_n,B_np\n";
    for (std::size_t k = 0; k < curve.size(); ++k) {
        out += std::to_string(curve.n_values[k]);
        out += ',';
        if (curve.i_values[k]) {
            out += format_double(*curve.i_values[k]);
        }
        out += ',';
        out += format_double(curve.b_values[k]);
        out += '\n';
    }
    return out;
}

void write_text_file(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::IoError, path.string() + ": cannot open for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            throw Error(ErrorKind::IoError, path.string() + ": write failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::IoError, path.string() + ": cannot move temporary file into place");
    }
}

void write_curve_csv(const IndexCurve& curve, const fs::path& path) {
    write_text_file(path, curve_csv(curve));
}

IndexCurve read_curve_csv(const fs::path& path, double p) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::FileNotFound, path.string() + ": cannot open file");
    }
    IndexCurve curve;
    curve.p = p;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (row == 1 || line.empty()) {
            continue;
        }
        const auto cells = split_row(line);
        if (cells.size() != 3 || !is_index(cells[0])) {
            throw Error(ErrorKind::ParseError, path.string() + ": bad curve row " +
                                                   std::to_string(row));
        }
        curve.n_values.push_back(std::stoul(cells[0]));
        curve.i_values.push_back(cells[1].empty() ? std::nullopt
                                                  : std::optional<double>(parse_double(cells[1])));
        curve.b_values.push_back(parse_double(cells[2]));
    }
    return curve;
}

}  // namespace anomidx
