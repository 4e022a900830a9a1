#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "qmsplit/order.hpp"

namespace qmsplit {

/// Bad configuration or command line.  `line` is 0 when no source line applies.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Run configuration.  Text form, one `key = value` per line, `#` comments:
///
///     algebra.a = 3
///     algebra.b = -1
///     order.basis = saturate-from-standard     (or rows "1 0 0 0; 0 1 0 0; ...")
///     polarization.rho = 0 0 1 0
///     precision = 128
///     tolerance = 1e-20
///     seed = 1
struct Config {
    Rational a{3};
    Rational b{-1};
    std::optional<RationalMatrix> basis;  // nullopt: saturate the standard order
    std::optional<QuatElement> rho;
    long precision = kDefaultPrecision;
    Rational tolerance = parse_rational("1e-20");
    std::uint64_t seed = 1;

    std::map<std::string, int> lines;  // key -> source line, for located errors

    int line_of(const std::string& key) const {
        auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    }

    /// Compares values only, not source lines.
    bool same_values(const Config& other) const;
};

inline constexpr const char* kPrecisionEnv = "QMSPLIT_PRECISION";

/// The (3, -1) algebra with its saturated maximal order and rho = y.
Config default_config();

/// Parses the text form over default_config().  Unknown or repeated keys and
/// malformed values raise ConfigError with the line number.  When the text
/// does not set `precision`, QMSPLIT_PRECISION (if set) provides it.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// Text form that parse_config maps back to an equal Config.
std::string render_config(const Config& c);

struct Workspace {
    QuaternionAlgebra algebra;
    OrderLattice order;
};

/// Algebra and order lattice.  With `certify`, the lattice must be an order
/// (otherwise ConfigError located at order.basis).
Workspace build_workspace(const Config& c, bool certify = true);

}  // namespace qmsplit
