#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace motifeval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ground-truth segments overlap; positional matching is ill-defined.
class GroundTruthOverlap : public Error {
public:
    using Error::Error;
};

class EmptyGroundTruth : public Error {
public:
    EmptyGroundTruth() : Error("ground truth contains no motif sets") {}
};

class InsufficientClasses : public Error {
public:
    using Error::Error;
};

class InsufficientInstances : public Error {
public:
    using Error::Error;
};

class InsufficientSpace : public Error {
public:
    using Error::Error;
};

/// Regression input has zero variance (e.g. a constant window).
class DegenerateWindow : public Error {
public:
    using Error::Error;
};

/// Rank correlation is undefined because a list is entirely tied.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

class MissingCell : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `where` names the file and location.
class ParseError : public Error {
public:
    ParseError(std::string where, const std::string& what)
        : Error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace motifeval
