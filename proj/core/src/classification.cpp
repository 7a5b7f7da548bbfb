#include "oaclass/classification.hpp"

#include "oaclass/errors.hpp"

namespace oaclass {

std::string_view to_string(AccessMode m) noexcept {
    switch (m) {
    case AccessMode::Libre:
        return "libre";
    case AccessMode::Gratis:
        return "gratis";
    case AccessMode::Closed:
        return "closed";
    }
    return "closed";
}

std::optional<AccessMode> access_mode_from_string(std::string_view s) noexcept {
    if (s == "libre")
        return AccessMode::Libre;
    if (s == "gratis")
        return AccessMode::Gratis;
    if (s == "closed")
        return AccessMode::Closed;
    return std::nullopt;
}

OAClassification OAClassification::create(std::set<OAClass> labels, OAClass primary,
                                          AccessMode access_mode,
                                          std::vector<std::string> evidence_refs,
                                          std::vector<std::string> diagnostics) {
    if (labels.empty())
        throw FormatError("classification must carry at least one label");
    if (!labels.contains(primary))
        throw FormatError("primary label must be a member of the label set");
    if (labels.contains(OAClass::non_oa())) {
        if (labels.size() != 1)
            throw FormatError("non_oa must not mix with other labels");
        if (access_mode != AccessMode::Closed)
            throw FormatError("non_oa implies access_mode=closed");
    }
    return OAClassification(std::move(labels), primary, access_mode, std::move(evidence_refs),
                            std::move(diagnostics));
}

} // namespace oaclass
