#include "oaclass/record.hpp"

#include "oaclass/errors.hpp"

namespace oaclass {

std::string_view to_string(DocumentType t) noexcept {
    switch (t) {
    case DocumentType::Article:
        return "article";
    case DocumentType::Review:
        return "review";
    case DocumentType::ProceedingsPaper:
        return "proceedings_paper";
    }
    return "article";
}

std::optional<DocumentType> document_type_from_string(std::string_view s) noexcept {
    if (s == "article")
        return DocumentType::Article;
    if (s == "review")
        return DocumentType::Review;
    if (s == "proceedings_paper")
        return DocumentType::ProceedingsPaper;
    return std::nullopt;
}

void PublicationRecord::validate() const {
    if (doi)
        return;
    if (!issns.empty() && !publication_title.empty())
        return;
    throw FormatError("record needs a DOI or an ISSN plus publication title");
}

} // namespace oaclass
