#pragma once

// The shared end-to-end fixture corpus: ten records spanning every class the
// pipeline can produce, plus the registries that ground them. Expected
// primary labels (by DOI):
//   alpha.1  2019  gold_full                       (registry, since 2015)
//   alpha.2  2012  non_oa                          (before the transition year)
//   beta.1   2019  gold_hybrid / libre             (CC-BY, no delay)
//   beta.2   2018  gold_delayed / libre            (CC-BY-NC, 365 days)
//   gamma.1  2019  green_postprint_institutional   (repository copy, later deposit)
//   gamma.2  2018  green_preprint_disciplinary     (arXiv via OAI, earlier deposit, CC rights)
//   delta.1  2019  non_oa                          (publisher-hosted copy, no license)
//   delta.2  2019  non_oa                          (social-network copy, denylisted)
//   eps.1    2019  gold_full + green preprint      (multi-label, primary gold_full)
//   eps.2    2018  non_oa                          (no evidence at all)
// The checked-in golden report pins the resulting per-year shares.

#include <string>
#include <vector>

#include "fixture_servers.hpp"

namespace oaclass::testing {

inline std::vector<std::string> pipeline_crossref_items() {
    return {
        R"({"DOI":"10.1000/alpha.1","ISSN":["2041-1723"],"issued":{"date-parts":[[2019,3,1]]},"title":["Alpha One"],"container-title":["Nature Communications"],"type":"journal-article"})",
        R"({"DOI":"10.1000/alpha.2","ISSN":["2041-1723"],"issued":{"date-parts":[[2012,6,1]]},"title":["Alpha Two"],"container-title":["Nature Communications"],"type":"journal-article"})",
        R"({"DOI":"10.1000/beta.1","ISSN":["1465-6906"],"issued":{"date-parts":[[2019,2,10]]},"title":["Beta One"],"container-title":["Genome Biology"],"type":"journal-article","license":[{"URL":"https://creativecommons.org/licenses/by/4.0/","delay-in-days":0}]})",
        R"({"DOI":"10.1000/beta.2","ISSN":["1465-6906"],"issued":{"date-parts":[[2018,5,20]]},"title":["Beta Two"],"container-title":["Genome Biology"],"type":"journal-article","license":[{"URL":"https://creativecommons.org/licenses/by-nc/4.0/","delay-in-days":365}]})",
        R"({"DOI":"10.1000/gamma.1","ISSN":["0031-9023"],"issued":{"date-parts":[[2019,6,15]]},"title":["Gamma One"],"container-title":["Physical Therapy"],"type":"journal-article"})",
        R"({"DOI":"10.1000/gamma.2","ISSN":["0031-9023"],"issued":{"date-parts":[[2018,11,5]]},"title":["Gamma Two"],"container-title":["Physical Therapy"],"type":"journal-article"})",
        R"({"DOI":"10.1000/delta.1","ISSN":["1550-7998"],"issued":{"date-parts":[[2019,4,2]]},"title":["Delta One"],"container-title":["Physical Review D"],"type":"journal-article"})",
        R"({"DOI":"10.1000/delta.2","ISSN":["1550-7998"],"issued":{"date-parts":[[2019,7,20]]},"title":["Delta Two"],"container-title":["Physical Review D"],"type":"journal-article"})",
        R"({"DOI":"10.1000/eps.1","ISSN":["2041-1723"],"issued":{"date-parts":[[2019,9,9]]},"title":["Epsilon One"],"container-title":["Nature Communications"],"type":"journal-article","license":[{"URL":"https://creativecommons.org/licenses/by/4.0/","delay-in-days":0}]})",
        R"({"DOI":"10.1000/eps.2","issued":{"date-parts":[[2018]]},"title":["Epsilon Two"],"type":"journal-article"})",
    };
}

inline std::vector<std::string> pipeline_unpaywall_items() {
    return {
        R"({"doi":"10.1000/gamma.1","oa_locations":[{"url":"https://pub.uni-bielefeld.de/record/1","host_type":"repository","version":"acceptedVersion","updated":"2019-08-01T00:00:00Z"}]})",
        R"({"doi":"10.1000/delta.1","oa_locations":[{"url":"https://journals.phys.example.org/article/delta1","host_type":"publisher"}]})",
        R"({"doi":"10.1000/delta.2","oa_locations":[{"url":"https://www.researchgate.net/publication/337","host_type":"repository"}]})",
        R"({"doi":"10.1000/eps.1","oa_locations":[{"url":"https://arxiv.org/abs/1909.00001","host_type":"repository","version":"submittedVersion"}]})",
    };
}

// Three OAI pages: the arXiv preprint evidence for gamma.2, one deleted
// record, and two repository records that match nothing (orphans).
inline std::vector<std::vector<OaiFixtureRecord>> pipeline_oai_pages() {
    std::vector<std::vector<OaiFixtureRecord>> pages(3);

    OaiFixtureRecord gamma2;
    gamma2.identifier = "oai:arxiv.org:1811.00001";
    gamma2.datestamp = "2018-10-02";
    gamma2.titles = {"Gamma Two"};
    gamma2.identifiers = {"http://arxiv.org/abs/1811.00001", "doi:10.1000/gamma.2"};
    gamma2.dates = {"2018-10-01"};
    gamma2.rights = {"http://creativecommons.org/licenses/by/4.0"};
    gamma2.types = {"preprint"};
    pages[0].push_back(gamma2);

    OaiFixtureRecord deleted;
    deleted.identifier = "oai:repo.example.org:gone-1";
    deleted.datestamp = "2019-02-01";
    deleted.deleted = true;
    pages[1].push_back(deleted);

    OaiFixtureRecord unrelated1;
    unrelated1.identifier = "oai:repo.example.org:900";
    unrelated1.datestamp = "2019-03-01";
    unrelated1.titles = {"An Unrelated Deposit"};
    unrelated1.identifiers = {"http://repo.example.org/item/900"};
    unrelated1.dates = {"2019-03-01"};
    pages[1].push_back(unrelated1);

    OaiFixtureRecord unrelated2;
    unrelated2.identifier = "oai:repo.example.org:901";
    unrelated2.datestamp = "2019-04-01";
    unrelated2.titles = {"Another Unrelated Deposit"};
    unrelated2.identifiers = {"http://repo.example.org/item/901"};
    unrelated2.dates = {"2019-04-01"};
    pages[2].push_back(unrelated2);

    return pages;
}

inline std::string pipeline_journal_registry_csv() {
    return "issn,issn_l,title,oa_since_year\n"
           "2041-1723,2041-1723,Nature Communications,2015\n";
}

inline std::string pipeline_repository_registry_csv() {
    return "repo_id,kind,url_prefixes\n"
           "arxiv,disciplinary,arxiv.org\n"
           "bielefeld,institutional,pub.uni-bielefeld.de\n";
}

} // namespace oaclass::testing
