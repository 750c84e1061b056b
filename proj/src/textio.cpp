#include "maxeig/textio.hpp"

#include "maxeig/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace maxeig {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line)
{
    const auto hash = line.find('#');
    return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

double parse_number(std::string_view token)
{
    double value = 0.0;
    const char* begin = token.data();
    const char* end = token.data() + token.size();
    if (!token.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ParseError("not a finite decimal number: '" + std::string(token) + "'");
    }
    return value;
}

std::vector<std::string_view> split_words(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != ',') {
            ++i;
        }
        if (i > start) {
            out.push_back(text.substr(start, i - start));
        }
    }
    return out;
}

// "key: rest" or "key = rest"
bool split_label(std::string_view line, std::string& key, std::string_view& rest)
{
    const auto pos = line.find_first_of(":=");
    if (pos == std::string_view::npos) {
        return false;
    }
    key = std::string(trim(line.substr(0, pos)));
    rest = trim(line.substr(pos + 1));
    return !key.empty();
}

std::ifstream open_or_throw(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return in;
}

RealFunction piecewise_linear(std::vector<double> xs, std::vector<double> ys)
{
    auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
        std::move(xs), std::move(ys));
    return [data](double x) {
        const auto& [px, py] = *data;
        if (x <= px.front()) {
            return py.front();
        }
        if (x >= px.back()) {
            return py.back();
        }
        const auto it = std::upper_bound(px.begin(), px.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - px.begin()) - 1;
        const double t = (x - px[k]) / (px[k + 1] - px[k]);
        return py[k] + t * (py[k + 1] - py[k]);
    };
}

} // namespace

std::vector<double> parse_number_list(std::string_view text)
{
    std::vector<double> out;
    for (std::string_view word : split_words(text)) {
        out.push_back(parse_number(word));
    }
    return out;
}

TridiagonalSystem parse_system(std::istream& in)
{
    std::map<std::string, std::vector<double>> arrays;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = strip_comment(line);
        if (body.empty()) {
            continue;
        }
        std::string key;
        std::string_view rest;
        if (!split_label(body, key, rest) || (key != "a" && key != "b" && key != "c")) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'a:', 'b:' or 'c:'");
        }
        if (arrays.count(key) != 0) {
            throw ParseError("line " + std::to_string(line_no) + ": array '" + key + "' given twice");
        }
        try {
            arrays[key] = parse_number_list(rest);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    for (const char* key : {"a", "b", "c"}) {
        if (arrays.count(key) == 0) {
            throw ParseError(std::string("missing array '") + key + "'");
        }
    }
    try {
        return TridiagonalSystem(arrays["a"], arrays["b"], arrays["c"]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

TridiagonalSystem parse_system_file(const std::string& path)
{
    std::ifstream in = open_or_throw(path);
    return parse_system(in);
}

DenseMatrix parse_dense(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view body = strip_comment(line);
        std::size_t start = 0;
        while (start <= body.size()) {
            const auto semi = body.find(';', start);
            const std::string_view piece =
                trim(body.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
            if (!piece.empty()) {
                rows.push_back(parse_number_list(piece));
            }
            if (semi == std::string_view::npos) {
                break;
            }
            start = semi + 1;
        }
    }
    try {
        return DenseMatrix::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

DenseMatrix parse_dense_text(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_dense(in);
}

RealFunction parse_function(std::string_view spec)
{
    const std::vector<std::string_view> words = split_words(trim(spec));
    if (words.empty()) {
        throw ParseError("empty function specification");
    }
    const std::string family(words.front());
    std::vector<double> p;
    for (std::size_t i = 1; i < words.size(); ++i) {
        p.push_back(parse_number(words[i]));
    }
    auto need = [&](std::size_t count) {
        if (p.size() != count) {
            throw ParseError("function family '" + family + "' takes " + std::to_string(count) + " parameter(s)");
        }
    };
    if (family == "constant") {
        need(1);
        const double v = p[0];
        return [v](double) { return v; };
    }
    if (family == "linear") {
        need(2);
        const double c0 = p[0];
        const double c1 = p[1];
        return [c0, c1](double x) { return c0 + c1 * x; };
    }
    if (family == "power") {
        need(2);
        const double k = p[0];
        const double e = p[1];
        return [k, e](double x) { return k * std::pow(std::abs(x), e); };
    }
    if (family == "gaussian-drift") {
        need(1);
        const double s = p[0];
        return [s](double x) { return -s * x; };
    }
    if (family == "table") {
        if (p.size() < 4 || p.size() % 2 != 0) {
            throw ParseError("table needs at least two (x, value) pairs");
        }
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < p.size(); i += 2) {
            if (!xs.empty() && !(p[i] > xs.back())) {
                throw ParseError("table abscissae must be strictly increasing");
            }
            xs.push_back(p[i]);
            ys.push_back(p[i + 1]);
        }
        return piecewise_linear(std::move(xs), std::move(ys));
    }
    throw ParseError("unknown function family '" + family + "'");
}

Operator1D parse_operator(std::istream& in)
{
    Operator1D op;
    bool have_interval = false;
    bool have_theta = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = strip_comment(line);
        if (body.empty()) {
            continue;
        }
        std::string key;
        std::string_view rest;
        if (!split_label(body, key, rest)) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key: value'");
        }
        try {
            if (key == "interval") {
                const std::vector<double> ends = parse_number_list(rest);
                if (ends.size() != 2 || !(ends[0] < ends[1])) {
                    throw ParseError("interval needs two increasing endpoints");
                }
                op.left = ends[0];
                op.right = ends[1];
                have_interval = true;
            } else if (key == "theta") {
                op.theta = parse_number(rest);
                have_theta = true;
            } else if (key == "a") {
                op.a = parse_function(rest);
            } else if (key == "b") {
                op.b = parse_function(rest);
            } else if (key == "c") {
                op.c = parse_function(rest);
            } else if (key == "h") {
                op.h = parse_function(rest);
            } else if (key == "truncated") {
                for (std::string_view w : split_words(rest)) {
                    if (w == "left") {
                        op.left_truncated = true;
                    } else if (w == "right") {
                        op.right_truncated = true;
                    } else {
                        throw ParseError("truncated takes 'left' and/or 'right'");
                    }
                }
            } else {
                throw ParseError("unknown key '" + key + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_interval || !op.a || !op.b) {
        throw ParseError("operator needs 'interval', 'a' and 'b'");
    }
    if (!have_theta) {
        op.theta = op.left;
    }
    return op;
}

Operator1D parse_operator_file(const std::string& path)
{
    std::ifstream in = open_or_throw(path);
    return parse_operator(in);
}

} // namespace maxeig
