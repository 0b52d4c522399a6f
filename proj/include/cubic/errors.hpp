#pragma once

#include <stdexcept>
#include <string>

namespace cubic {

// Base for every error raised by the library. The CLI maps the concrete
// type to an exit code (see tools/cubic_census.cpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class ContainmentError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class UnsupportedSignature : public Error {
public:
    using Error::Error;
};

class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class StaleCache : public Error {
public:
    using Error::Error;
};

// A brute-force enumeration would exceed its configured ceiling. `needed`
// is the size the enumeration would have required (a lower bound when the
// enumeration was aborted early).
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, unsigned long long needed)
        : Error(what), needed_(needed) {}
    unsigned long long needed() const { return needed_; }

private:
    unsigned long long needed_;
};

} // namespace cubic
