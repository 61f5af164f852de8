#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scholarviz {

enum class ErrorCode {
    // taxonomy / scholar ingestion
    MalformedRecord,
    DuplicateId,
    DuplicateLabel,
    DanglingSuperReference,
    CycleDetected,
    DuplicateScholarId,
    // lookups
    UnknownConcept,
    OffsetOutOfRange,
    EmptyQuery,
    InvalidQuery,
    // layout
    NoFocus,
    InvalidDepths,
    InvalidLayoutInput,
    // explorer
    WrongResultKind,
    UnknownNode,
    NotRecenterable,
    WrongMode,
    IllegalEvent,
    // service
    InvalidConfig,
    Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace scholarviz
