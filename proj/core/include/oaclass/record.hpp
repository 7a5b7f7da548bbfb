#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oaclass/dates.hpp"
#include "oaclass/doi.hpp"
#include "oaclass/issn.hpp"

namespace oaclass {

enum class DocumentType { Article, Review, ProceedingsPaper };

std::string_view to_string(DocumentType t) noexcept;
std::optional<DocumentType> document_type_from_string(std::string_view s) noexcept;

// One bibliographic item to classify. Immutable value; must be identifiable
// either by DOI or by ISSN + publication title.
struct PublicationRecord {
    std::optional<Doi> doi;
    std::set<Issn> issns;
    std::string journal_title;
    std::string publication_title;
    PartialDate publication_date = PartialDate::of_year(1900);
    DocumentType document_type = DocumentType::Article;
    std::vector<std::string> authors; // retained for provenance, deliberately not a matching key

    // Throws FormatError when neither doi nor (issn + publication_title) is present.
    void validate() const;

    bool operator==(const PublicationRecord&) const = default;
};

} // namespace oaclass
