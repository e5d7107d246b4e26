#pragma once

#include <stdexcept>
#include <string>

namespace decolens {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct PacketOutOfDomain : Error {
    using Error::Error;
};
struct GridMismatch : Error {
    using Error::Error;
};
struct UnstableParameters : Error {
    using Error::Error;
};
struct SamplingStalled : Error {
    using Error::Error;
};
struct ZeroResult : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct EmptyDensity : Error {
    using Error::Error;
};
struct GeometryInvalid : Error {
    using Error::Error;
};
struct NotProductForm : Error {
    using Error::Error;
};
struct NotTwoByTwo : Error {
    using Error::Error;
};
struct SupportOutOfDomain : Error {
    using Error::Error;
};
struct NoIntersection : Error {
    using Error::Error;
};

// Configuration parse failure; carries the offending key and line number.
struct ConfigError : Error {
    std::string key;
    int line = 0;
    ConfigError(const std::string& msg, std::string key_, int line_)
        : Error(msg), key(std::move(key_)), line(line_) {}
};

}  // namespace decolens
