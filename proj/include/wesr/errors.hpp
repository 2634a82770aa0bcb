#ifndef WESR_ERRORS_HPP
#define WESR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wesr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownTagError : Error { using Error::Error; };
struct UnknownDatasetError : Error { using Error::Error; };
struct UnknownExternalTagError : Error { using Error::Error; };
struct InvalidTranscriptError : Error { using Error::Error; };
struct InvariantViolationError : Error { using Error::Error; };
struct NoReferenceEventsError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct DuplicateIdError : Error { using Error::Error; };

// Malformed record in a line-oriented input file.
struct SchemaError : Error {
    SchemaError(const std::string& msg, int line_)
        : Error(msg), line(line_) {}
    int line;
};

}  // namespace wesr

#endif  // WESR_ERRORS_HPP
