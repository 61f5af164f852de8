#include "scholarviz/error.hpp"

namespace scholarviz {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedRecord: return "malformed_record";
        case ErrorCode::DuplicateId: return "duplicate_id";
        case ErrorCode::DuplicateLabel: return "duplicate_label";
        case ErrorCode::DanglingSuperReference: return "dangling_super_reference";
        case ErrorCode::CycleDetected: return "cycle_detected";
        case ErrorCode::DuplicateScholarId: return "duplicate_scholar_id";
        case ErrorCode::UnknownConcept: return "unknown_concept";
        case ErrorCode::OffsetOutOfRange: return "offset_out_of_range";
        case ErrorCode::EmptyQuery: return "empty_query";
        case ErrorCode::InvalidQuery: return "invalid_query";
        case ErrorCode::NoFocus: return "no_focus";
        case ErrorCode::InvalidDepths: return "invalid_depths";
        case ErrorCode::InvalidLayoutInput: return "invalid_layout_input";
        case ErrorCode::WrongResultKind: return "wrong_result_kind";
        case ErrorCode::UnknownNode: return "unknown_node";
        case ErrorCode::NotRecenterable: return "not_recenterable";
        case ErrorCode::WrongMode: return "wrong_mode";
        case ErrorCode::IllegalEvent: return "illegal_event";
        case ErrorCode::InvalidConfig: return "invalid_config";
        case ErrorCode::Io: return "io_error";
    }
    return "unknown";
}

}  // namespace scholarviz
