#pragma once

#include <stdexcept>
#include <string>

namespace pdfast {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonDivisibleExtent : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};
struct MissingThickness : Error {
    using Error::Error;
};
struct HorizonTooLargeForGrid : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct LedgerOutOfBand : Error {
    using Error::Error;
};
struct MissingCoefficients : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

/// Config-file syntax error with 1-based source location.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          column(col_) {}
};

/// Semantic config error; collects every violation before failing.
struct ValidationError : Error {
    std::vector<std::string> violations;
    explicit ValidationError(std::vector<std::string> v)
        : Error(join(v)), violations(std::move(v)) {}

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid configuration:";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
};

}  // namespace pdfast
