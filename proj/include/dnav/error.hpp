#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dnav {

enum class ErrorCode {
    // graph construction
    DanglingEdgeRef,
    DuplicateId,
    UnknownEntry,
    ReservedIdUse,
    InvalidDeclaration,
    UnknownResolver,
    // documents
    ParseError,
    IoError,
    // engine and input
    UnknownRule,
    InactiveSession,
    ConflictingBinding,
    // builders
    EmptyList,
    MultipleRoots,
    CycleDetected,
    CellCountMismatch,
    UnknownRegionInBorder,
    // extraction
    EmptyScene,
    DuplicateMarkId,
    MissingTemplateField,
    // rendering
    MissingRenderSpec,
    // protocol
    BadRequest,
    UnknownSession,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// that hosts (CLI, protocol) can report it without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

/// Syntax error in a JSON document, with a 1-based line and column.
class ParseError : public Error {
   public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(ErrorCode::ParseError, message), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace dnav
