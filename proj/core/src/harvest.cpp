#include "oaclass/harvest.hpp"

#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "oaclass/errors.hpp"
#include "oaclass/oai.hpp"
#include "oaclass/url.hpp"
#include "oaclass/xml.hpp"

namespace oaclass {

using nlohmann::json;
namespace fs = std::filesystem;

RateLimiter::RateLimiter(double max_requests_per_second) {
    if (max_requests_per_second <= 0.0)
        throw ConfigError("max_requests_per_second must be > 0");
    min_interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / max_requests_per_second));
}

std::chrono::steady_clock::time_point RateLimiter::acquire() {
    const auto now = std::chrono::steady_clock::now();
    if (!last_) {
        last_ = now;
        return now;
    }
    const auto earliest = *last_ + min_interval_;
    if (now < earliest)
        std::this_thread::sleep_until(earliest);
    last_ = std::max(now, earliest);
    return *last_;
}

namespace {

struct Endpoint {
    std::string base; // scheme://host[:port]
    std::string path; // leading '/', may carry a query already
};

Endpoint split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("endpoint URL needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

int retry_after_seconds(const httplib::Response& response) {
    const std::string value = response.get_header_value("Retry-After");
    if (value.empty())
        return -1;
    try {
        return std::max(0, std::stoi(value));
    } catch (const std::exception&) {
        return -1;
    }
}

// One request with the politeness contract: rate limiting, Retry-After on
// 503, exponential backoff on transport errors and other 5xx.
httplib::Result polite_get(httplib::Client& client, const std::string& path,
                           const Politeness& politeness, RateLimiter& limiter,
                           std::size_t& requests_made) {
    int attempt = 0;
    for (;;) {
        limiter.acquire();
        ++requests_made;
        httplib::Result result = client.Get(path);

        const bool transport_failed = !result;
        const bool server_error = result && result->status >= 500;
        if (!transport_failed && !server_error) {
            if (result->status == 401 || result->status == 403)
                throw AuthError("endpoint rejected the request with HTTP " +
                                std::to_string(result->status));
            return result;
        }

        if (attempt >= politeness.max_retries) {
            if (transport_failed)
                throw TransportError("request failed after " +
                                     std::to_string(politeness.max_retries) + " retries: " +
                                     httplib::to_string(result.error()));
            throw TransportError("endpoint kept returning HTTP " +
                                 std::to_string(result->status) + " after " +
                                 std::to_string(politeness.max_retries) + " retries");
        }

        int sleep_ms = politeness.backoff_base_ms * (1 << attempt);
        if (server_error)
            if (const int after = retry_after_seconds(*result); after >= 0)
                sleep_ms = after * 1000;
        std::this_thread::sleep_for(std::chrono::milliseconds(sleep_ms));
        ++attempt;
    }
}

std::string state_path(const std::string& out_dir) {
    return (fs::path(out_dir) / "state.json").string();
}

void save_harvest_state(const std::string& out_dir, const HarvestState& state) {
    json j;
    j["resumption_token"] = state.resumption_token;
    j["pages_done"] = state.pages_done;
    j["complete"] = state.complete;
    std::ofstream out(state_path(out_dir), std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write harvest state in " + out_dir);
    out << j.dump() << "\n";
}

std::string query_escape(const std::string& value) {
    // Query component: spaces and reserved characters percent-encoded.
    return encode_path_segment(value);
}

} // namespace

HarvestState load_harvest_state(const std::string& out_dir) {
    std::ifstream in(state_path(out_dir), std::ios::binary);
    if (!in)
        return {};
    json j;
    try {
        in >> j;
        HarvestState state;
        state.resumption_token = j.value("resumption_token", "");
        state.pages_done = j.value("pages_done", std::size_t{0});
        state.complete = j.value("complete", false);
        return state;
    } catch (const json::exception& e) {
        throw ParseError(std::string("corrupt harvest state: ") + e.what());
    }
}

HarvestResult harvest_oai(const HarvestJob& job, const std::string& out_dir,
                          const HarvestOptions& options) {
    const Endpoint endpoint = split_endpoint(job.endpoint_url);
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    RateLimiter limiter(job.politeness.max_requests_per_second);

    fs::create_directories(fs::path(out_dir) / "pages");

    HarvestResult result;
    result.pages_dir = (fs::path(out_dir) / "pages").string();
    result.records_path = (fs::path(out_dir) / "records.ndjson").string();

    HarvestState state = load_harvest_state(out_dir);
    if (job.resume_state)
        state.resumption_token = *job.resume_state;
    const bool resuming = state.pages_done > 0 && !state.complete;
    if (state.complete)
        state = {};

    std::ofstream records(result.records_path,
                          std::ios::binary | (resuming ? std::ios::app : std::ios::trunc));
    if (!records)
        throw IoError("cannot write " + result.records_path);

    std::size_t pages_this_run = 0;
    for (;;) {
        std::string path;
        if (!state.resumption_token.empty()) {
            path = endpoint.path + "?verb=ListRecords&resumptionToken=" +
                   query_escape(state.resumption_token);
        } else {
            path = endpoint.path + "?verb=ListRecords&metadataPrefix=oai_dc";
            if (job.from)
                path += "&from=" + query_escape(*job.from);
            if (job.until)
                path += "&until=" + query_escape(*job.until);
            if (job.set_spec)
                path += "&set=" + query_escape(*job.set_spec);
        }

        httplib::Result response =
            polite_get(client, path, job.politeness, limiter, result.requests_made);
        if (response->status != 200)
            throw TransportError("OAI endpoint answered HTTP " +
                                 std::to_string(response->status));

        char page_name[32];
        std::snprintf(page_name, sizeof page_name, "page-%04zu.xml", state.pages_done + 1);
        {
            std::ofstream page(fs::path(result.pages_dir) / page_name,
                               std::ios::binary | std::ios::trunc);
            if (!page)
                throw IoError("cannot write raw page in " + result.pages_dir);
            page << response->body;
        }

        const OaiPage page = parse_oai_dc(response->body);
        if (!page.error_code.empty()) {
            if (page.error_code == "noRecordsMatch") {
                // An empty selection is a successful harvest.
                state.resumption_token.clear();
                state.complete = true;
                ++state.pages_done;
                save_harvest_state(out_dir, state);
                result.state = state;
                return result;
            }
            throw ProtocolError(page.error_code, page.error_message);
        }

        for (const auto& record : page.records) {
            records << to_json_line(record) << "\n";
            ++result.records_written;
        }

        ++state.pages_done;
        ++pages_this_run;
        state.resumption_token = page.resumption_token;
        state.complete = page.resumption_token.empty();
        save_harvest_state(out_dir, state);

        if (state.complete)
            break;
        if (options.max_pages_per_run && pages_this_run >= options.max_pages_per_run)
            break;
    }

    records.flush();
    result.state = state;
    return result;
}

OaiIdentity identify_oai(const std::string& endpoint_url, const Politeness& politeness) {
    const Endpoint endpoint = split_endpoint(endpoint_url);
    httplib::Client client(endpoint.base);
    RateLimiter limiter(politeness.max_requests_per_second);
    std::size_t requests = 0;

    httplib::Result response =
        polite_get(client, endpoint.path + "?verb=Identify", politeness, limiter, requests);
    if (response->status != 200)
        throw TransportError("Identify answered HTTP " + std::to_string(response->status));

    const XmlElement root = parse_xml(response->body);
    const XmlElement* identify = root.child("Identify");
    if (!identify)
        identify = root.find("Identify");
    if (!identify)
        throw ProtocolError("badVerb", "response carries no Identify element");

    OaiIdentity identity;
    if (const auto* name = identify->child("repositoryName"))
        identity.repository_name = name->text;
    if (const auto* base = identify->child("baseURL"))
        identity.base_url = base->text;
    if (const auto* version = identify->child("protocolVersion"))
        identity.protocol_version = version->text;
    if (const auto* earliest = identify->child("earliestDatestamp"))
        identity.earliest_datestamp = earliest->text;
    return identity;
}

FetchResult fetch_paged_json(const HarvestJob& job, const std::string& out_path,
                             const std::vector<Doi>& id_list) {
    const Endpoint endpoint = split_endpoint(job.endpoint_url);
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    RateLimiter limiter(job.politeness.max_requests_per_second);

    if (const auto parent = fs::path(out_path).parent_path(); !parent.empty())
        fs::create_directories(parent);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + out_path);

    FetchResult result;

    auto parse_body = [](const std::string& body, const std::string& context) {
        try {
            return json::parse(body);
        } catch (const json::exception& e) {
            throw ParseError("endpoint returned invalid JSON for " + context + ": " + e.what());
        }
    };

    if (!id_list.empty()) {
        const std::string base_path = endpoint.path == "/" ? "" : endpoint.path;
        for (const auto& doi : id_list) {
            const std::string path = base_path + "/" + encode_path_segment(doi.value());
            httplib::Result response =
                polite_get(client, path, job.politeness, limiter, result.requests_made);
            if (response->status == 404) {
                result.misses.push_back(doi.value() + ": HTTP 404");
                continue;
            }
            if (response->status != 200) {
                result.misses.push_back(doi.value() + ": HTTP " +
                                        std::to_string(response->status));
                continue;
            }
            out << parse_body(response->body, doi.value()).dump() << "\n";
            ++result.items_written;
        }
        out.flush();
        return result;
    }

    std::string cursor;
    std::size_t offset = 0;
    bool use_offset = false;
    for (;;) {
        std::string path = endpoint.path;
        std::string sep = path.find('?') == std::string::npos ? "?" : "&";
        if (!cursor.empty()) {
            path += sep + ("cursor=" + query_escape(cursor));
        } else if (use_offset) {
            path += sep + ("offset=" + std::to_string(offset));
        }

        httplib::Result response =
            polite_get(client, path, job.politeness, limiter, result.requests_made);
        if (response->status != 200)
            throw TransportError("endpoint answered HTTP " + std::to_string(response->status));

        const json page = parse_body(response->body, "page");
        const auto items = page.value("items", json::array());
        for (const auto& item : items) {
            out << item.dump() << "\n";
            ++result.items_written;
        }
        offset += items.size();

        if (page.contains("next_cursor") && !page.at("next_cursor").is_null() &&
            !page.at("next_cursor").get<std::string>().empty()) {
            cursor = page.at("next_cursor").get<std::string>();
            continue;
        }
        if (page.contains("total") && page.at("total").is_number_unsigned() &&
            offset < page.at("total").get<std::size_t>() && !items.empty()) {
            use_offset = true;
            cursor.clear();
            continue;
        }
        break;
    }

    out.flush();
    return result;
}

} // namespace oaclass
