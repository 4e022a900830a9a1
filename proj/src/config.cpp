#include "qmsplit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qmsplit {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::string spaced = s;
    for (auto& ch : spaced)
        if (ch == ',') ch = ' ';
    std::istringstream in(spaced);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

Rational rational_at(const std::string& text, int line) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), line);
    }
}

std::array<Rational, 4> four_rationals(const std::string& value, int line) {
    auto toks = split_tokens(value);
    if (toks.size() != 4) throw ConfigError("expected 4 rational entries, got " + std::to_string(toks.size()), line);
    std::array<Rational, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = rational_at(toks[i], line);
    return out;
}

long long integer_at(const std::string& text, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + " must be an integer, got '" + text + "'", line);
    }
}

long checked_precision(long long bits, int line) {
    if (bits < 64 || bits > 65536) throw ConfigError("precision must be between 64 and 65536 bits", line);
    return static_cast<long>(bits);
}

}  // namespace

bool Config::same_values(const Config& o) const {
    return a == o.a && b == o.b && basis == o.basis && rho == o.rho && precision == o.precision &&
           tolerance == o.tolerance && seed == o.seed;
}

Config default_config() {
    Config c;
    c.rho = QuatElement::y();
    return c;
}

Config parse_config(const std::string& text) {
    Config c = default_config();
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (value.empty()) throw ConfigError("missing value for " + key, line);
        if (c.lines.count(key)) throw ConfigError("duplicate key " + key, line);
        c.lines[key] = line;

        if (key == "algebra.a") {
            c.a = rational_at(value, line);
        } else if (key == "algebra.b") {
            c.b = rational_at(value, line);
        } else if (key == "order.basis") {
            if (value == "saturate-from-standard") {
                c.basis.reset();
                continue;
            }
            std::vector<std::array<Rational, 4>> rows;
            std::istringstream rin(value);
            for (std::string row; std::getline(rin, row, ';');) rows.push_back(four_rationals(row, line));
            if (rows.size() != 4) throw ConfigError("order.basis needs 4 rows separated by ';'", line);
            RationalMatrix basis(4, 4, Rational(0));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) basis(i, j) = rows[i][j];
            c.basis = std::move(basis);
        } else if (key == "polarization.rho") {
            c.rho = QuatElement::from_coords(four_rationals(value, line));
        } else if (key == "precision") {
            c.precision = checked_precision(integer_at(value, line, key), line);
        } else if (key == "tolerance") {
            c.tolerance = rational_at(value, line);
            if (c.tolerance <= 0) throw ConfigError("tolerance must be positive", line);
        } else if (key == "seed") {
            long long s = integer_at(value, line, key);
            if (s < 0) throw ConfigError("seed must be non-negative", line);
            c.seed = static_cast<std::uint64_t>(s);
        } else {
            throw ConfigError("unknown key " + key, line);
        }
    }
    try {
        AlgebraParams(c.a, c.b);
    } catch (const std::invalid_argument& e) {
        bool a_alone_bad = false;
        try {
            AlgebraParams(c.a, Rational(-1));
        } catch (const std::invalid_argument&) {
            a_alone_bad = true;
        }
        throw ConfigError(e.what(), c.line_of(a_alone_bad ? "algebra.a" : "algebra.b"));
    }
    if (!c.lines.count("precision"))
        if (const char* env = std::getenv(kPrecisionEnv); env && *env) {
            try {
                c.precision = checked_precision(integer_at(env, 0, kPrecisionEnv), 0);
            } catch (const ConfigError& e) {
                throw ConfigError(std::string(kPrecisionEnv) + ": " + e.what());
            }
        }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_config(const Config& c) {
    std::ostringstream out;
    out << "algebra.a = " << to_string(c.a) << "\n";
    out << "algebra.b = " << to_string(c.b) << "\n";
    out << "order.basis = ";
    if (!c.basis) {
        out << "saturate-from-standard";
    } else {
        for (std::size_t i = 0; i < 4; ++i) {
            if (i) out << "; ";
            for (std::size_t j = 0; j < 4; ++j) out << (j ? " " : "") << to_string((*c.basis)(i, j));
        }
    }
    out << "\n";
    if (c.rho) {
        auto r = c.rho->coords();
        out << "polarization.rho = " << to_string(r[0]) << " " << to_string(r[1]) << " " << to_string(r[2]) << " "
            << to_string(r[3]) << "\n";
    }
    out << "precision = " << c.precision << "\n";
    out << "tolerance = " << to_string(c.tolerance) << "\n";
    out << "seed = " << c.seed << "\n";
    return out.str();
}

Workspace build_workspace(const Config& c, bool certify) {
    std::optional<QuaternionAlgebra> alg;
    try {
        alg.emplace(AlgebraParams(c.a, c.b));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), c.line_of("algebra.a") ? c.line_of("algebra.a") : c.line_of("algebra.b"));
    }
    if (!c.basis) return {*alg, saturate(OrderLattice::standard(*alg))};
    const int line = c.line_of("order.basis");
    std::optional<OrderLattice> lattice;
    try {
        lattice.emplace(*alg, *c.basis);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), line);
    }
    if (certify) {
        auto cert = is_order(*lattice);
        if (!cert.is_order) throw ConfigError("order.basis is not an order: " + cert.violations.front(), line);
    }
    return {*alg, *lattice};
}

}  // namespace qmsplit
