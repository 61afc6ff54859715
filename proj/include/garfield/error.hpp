#ifndef GARFIELD_ERROR_HPP
#define GARFIELD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace garfield {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ingest
class FileMissing : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class TooManyMalformed : public Error {
public:
    using Error::Error;
};

// Index computation
class UnknownJournal : public Error {
public:
    explicit UnknownJournal(const std::string& id) : Error("unknown journal: " + id) {}
};

/// Denominator is zero. Signals an empty cohort rather than a failed computation.
class UndefinedIndex : public Error {
public:
    using Error::Error;
};

class MissingDocuments : public Error {
public:
    using Error::Error;
};

class OverlapConflict : public Error {
public:
    using Error::Error;
};

class MixedSpecs : public Error {
public:
    using Error::Error;
};

// Statistics and audit
class EmptyCohort : public Error {
public:
    using Error::Error;
};

class DegenerateCurve : public Error {
public:
    using Error::Error;
};

class NoOutgoingReferences : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace garfield

#endif  // GARFIELD_ERROR_HPP
