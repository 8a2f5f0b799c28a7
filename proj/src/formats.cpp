#include "svn/formats.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace svn {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open file for writing: " + path);
    return out;
}

double parse_double(const std::string& token, const char* context) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw InvalidInputError(std::string(context) + ": bad number '" + token + "'");
    }
    if (pos != token.size())
        throw InvalidInputError(std::string(context) + ": bad number '" + token + "'");
    return value;
}

Vec parse_row(const std::string& line, Eigen::Index expected, char sep, const char* context) {
    Vec row(expected);
    std::stringstream ss(line);
    std::string token;
    Eigen::Index i = 0;
    while (sep == ',' ? static_cast<bool>(std::getline(ss, token, sep)) :
                        static_cast<bool>(ss >> token)) {
        if (i >= expected) throw InvalidInputError(std::string(context) + ": too many values");
        row[i++] = parse_double(token, context);
    }
    if (i != expected) throw InvalidInputError(std::string(context) + ": too few values");
    return row;
}

}  // namespace

std::string fmt17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_operator(std::ostream& out, const LinearOperator& t) {
    const SvdFactors f = t.factors();
    const Eigen::Index r = f.s.size();
    out << "SVNOP 1 " << t.rows() << ' ' << t.cols() << ' ' << r << '\n';
    for (Eigen::Index k = 0; k < r; ++k) {
        for (Eigen::Index i = 0; i < t.rows(); ++i)
            out << (i ? " " : "") << fmt17(f.u(i, k));
        out << '\n';
    }
    for (Eigen::Index k = 0; k < r; ++k) out << (k ? " " : "") << fmt17(f.s[k]);
    out << '\n';
    for (Eigen::Index k = 0; k < r; ++k) {
        for (Eigen::Index i = 0; i < t.cols(); ++i)
            out << (i ? " " : "") << fmt17(f.v(i, k));
        out << '\n';
    }
}

void write_operator_file(const std::string& path, const LinearOperator& t) {
    auto out = open_output(path);
    write_operator(out, t);
}

LinearOperator read_operator(std::istream& in) {
    std::string magic;
    int version = 0;
    Eigen::Index d_y = 0, d_x = 0, r = 0;
    in >> magic >> version >> d_y >> d_x >> r;
    if (!in || magic != "SVNOP" || version != 1)
        throw InvalidInputError("operator file: bad SVNOP header");
    if (d_y < 1 || d_x < 1 || r < 0 || r > std::min(d_x, d_y))
        throw InvalidInputError("operator file: bad dimensions");
    std::string rest;
    std::getline(in, rest);

    const auto read_line = [&](Eigen::Index n, const char* what) {
        std::string line;
        if (!std::getline(in, line))
            throw InvalidInputError(std::string("operator file: missing ") + what);
        return parse_row(line, n, ' ', what);
    };

    Mat u(d_y, r), v(d_x, r);
    for (Eigen::Index k = 0; k < r; ++k) u.col(k) = read_line(d_y, "U column");
    Vec s = read_line(r, "singular values");
    for (Eigen::Index k = 0; k < r; ++k) v.col(k) = read_line(d_x, "V column");
    return LinearOperator(std::move(u), std::move(s), std::move(v));
}

LinearOperator read_operator_file(const std::string& path) {
    auto in = open_input(path);
    return read_operator(in);
}

void write_dataset(std::ostream& out, const TrainingSet& data) {
    out << "# SVNDATA 1 " << data.size() << ' ' << data.x.rows() << ' ' << data.y.rows() << '\n';
    for (Eigen::Index n = 0; n < data.size(); ++n) {
        for (Eigen::Index i = 0; i < data.x.rows(); ++i)
            out << (i ? "," : "") << fmt17(data.x(i, n));
        for (Eigen::Index i = 0; i < data.y.rows(); ++i) out << ',' << fmt17(data.y(i, n));
        out << '\n';
    }
}

void write_dataset_file(const std::string& path, const TrainingSet& data) {
    auto out = open_output(path);
    write_dataset(out, data);
}

TrainingSet read_dataset(std::istream& in) {
    std::string hash, magic;
    int version = 0;
    Eigen::Index n = 0, d_x = 0, d_y = 0;
    in >> hash >> magic >> version >> n >> d_x >> d_y;
    if (!in || hash != "#" || magic != "SVNDATA" || version != 1)
        throw InvalidInputError("dataset file: bad SVNDATA header");
    if (n < 1 || d_x < 1 || d_y < 1) throw InvalidInputError("dataset file: bad dimensions");
    std::string rest;
    std::getline(in, rest);

    Mat x(d_x, n), y(d_y, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::string line;
        if (!std::getline(in, line)) throw InvalidInputError("dataset file: missing sample row");
        const Vec row = parse_row(line, d_x + d_y, ',', "sample row");
        x.col(i) = row.head(d_x);
        y.col(i) = row.tail(d_y);
    }
    double c_x = 0.0, c_y = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        c_x = std::max(c_x, x.col(i).norm());
        c_y = std::max(c_y, y.col(i).norm());
    }
    // Degenerate all-zero columns still need positive declared bounds.
    return TrainingSet(std::move(x), std::move(y), std::max(c_x, 1e-300),
                       std::max(c_y, 1e-300));
}

TrainingSet read_dataset_file(const std::string& path) {
    auto in = open_input(path);
    return read_dataset(in);
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::parse(std::istream& in) {
    Config config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        if (!config.values_.emplace(key, value).second)
            throw ConfigError("config: duplicate key '" + key + "'");
    }
    return config;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse(in);
}

void Config::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : values_)
        if (!allowed.count(key)) throw ConfigError("config: unknown key '" + key + "'");
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const std::string text = get_string(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a number: '" + text + "'");
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const double v = get_double(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config: key '" + key + "' is not an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string text = get_string(key);
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not an unsigned integer");
    }
}

std::vector<int> Config::get_int_list(const std::string& key) const {
    try {
        return parse_int_list(get_string(key));
    } catch (const InvalidInputError& e) {
        throw ConfigError("config: key '" + key + "': " + e.what());
    }
}

double parse_order(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return kInfOrder;
    std::size_t pos = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw InvalidInputError("bad order '" + text + "'");
    }
    if (pos != text.size() || !(p >= 1.0))
        throw InvalidInputError("order must be >= 1 or 'inf', got '" + text + "'");
    return p;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(token, &pos));
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw InvalidInputError("bad integer list entry '" + token + "'");
        }
    }
    if (out.empty()) throw InvalidInputError("empty integer list");
    return out;
}

}  // namespace svn
