#include "spectest/outcome.hpp"

#include <string>

namespace spectest {

std::string_view to_string(TestKind kind) {
    switch (kind) {
        case TestKind::Original: return "original";
        case TestKind::Kim: return "kim";
        case TestKind::Pareschi: return "pareschi";
        case TestKind::Proposed: return "proposed";
    }
    throw std::invalid_argument("to_string: unknown TestKind");
}

TestKind test_kind_from_string(std::string_view name) {
    if (name == "original") return TestKind::Original;
    if (name == "kim") return TestKind::Kim;
    if (name == "pareschi") return TestKind::Pareschi;
    if (name == "proposed") return TestKind::Proposed;
    throw std::invalid_argument("unknown test variant '" + std::string(name) +
                                "' (expected original|kim|pareschi|proposed)");
}

} // namespace spectest
