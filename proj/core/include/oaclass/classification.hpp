#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "oaclass/oa_class.hpp"

namespace oaclass {

// Gratis: free to read. Libre: free to read plus reuse rights granted by a
// recognized open license. Closed: no lawful free access found.
enum class AccessMode { Libre, Gratis, Closed };

std::string_view to_string(AccessMode m) noexcept;
std::optional<AccessMode> access_mode_from_string(std::string_view s) noexcept;

// Result of classifying one record: the full label set, one
// precedence-selected primary label, the access mode, and the evidence
// identifiers that justified the labels.
class OAClassification {
public:
    // Validates the structural invariants:
    //   - labels non-empty, primary in labels,
    //   - NonOA never mixes with another class and forces Closed.
    // Throws FormatError on violation.
    static OAClassification create(std::set<OAClass> labels, OAClass primary, AccessMode access_mode,
                                   std::vector<std::string> evidence_refs,
                                   std::vector<std::string> diagnostics = {});

    const std::set<OAClass>& labels() const noexcept { return labels_; }
    OAClass primary() const noexcept { return primary_; }
    AccessMode access_mode() const noexcept { return access_mode_; }
    const std::vector<std::string>& evidence_refs() const noexcept { return evidence_refs_; }
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

    bool operator==(const OAClassification&) const = default;

private:
    OAClassification(std::set<OAClass> labels, OAClass primary, AccessMode access_mode,
                     std::vector<std::string> evidence_refs, std::vector<std::string> diagnostics)
        : labels_(std::move(labels)), primary_(primary), access_mode_(access_mode),
          evidence_refs_(std::move(evidence_refs)), diagnostics_(std::move(diagnostics)) {}

    std::set<OAClass> labels_;
    OAClass primary_ = OAClass::non_oa();
    AccessMode access_mode_ = AccessMode::Closed;
    std::vector<std::string> evidence_refs_;
    std::vector<std::string> diagnostics_;
};

} // namespace oaclass
